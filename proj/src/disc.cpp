// Copyright 2026 The PairArena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pairarena/disc.hpp"

#include <cmath>
#include <limits>

#include "pairarena/graph.hpp"
#include "pairarena/random.hpp"

namespace pairarena {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

}  // namespace

double disc_loss(const ComparisonMatrices& matrices, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v) {
  const int n = matrices.size();
  const double total = static_cast<double>(matrices.total_battles());
  double loss = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (matrices.counts(i, j) == 0) continue;
      const double z = u(i) * v(j) - v(i) * u(j);
      loss -= static_cast<double>(matrices.wins(i, j)) * log_sigmoid(z) +
              static_cast<double>(matrices.wins(j, i)) * log_sigmoid(-z);
    }
  }
  return loss / total;
}

Eigen::VectorXd disc_loss_gradient(const ComparisonMatrices& matrices,
                                   const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& v) {
  const int n = matrices.size();
  const double total = static_cast<double>(matrices.total_battles());
  Eigen::VectorXd du = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd dv = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || matrices.counts(i, j) == 0) continue;
      const double z = u(i) * v(j) - v(i) * u(j);
      // residual = observed wins - expected wins for the (i, j) direction
      const double residual = static_cast<double>(matrices.wins(i, j)) -
                              static_cast<double>(matrices.counts(i, j)) *
                                  sigmoid(z);
      du(i) -= residual * v(j);
      dv(i) += residual * u(j);
    }
  }
  Eigen::VectorXd grad(2 * n);
  grad << du / total, dv / total;
  return grad;
}

DiscScores fit_disc(const ComparisonMatrices& matrices, int iterations,
                    double learning_rate, std::uint64_t seed) {
  const int n = matrices.size();
  if (n < 3) throw RosterTooSmallError("disc scores need at least 3 models");
  if (iterations < 1 || !(learning_rate > 0.0)) {
    throw ValidationError("bad disc fit configuration");
  }
  if (matrices.total_battles() < 1) {
    throw ValidationError("need at least one battle to fit");
  }
  if (!is_connected(matrices.counts)) {
    throw DisconnectedGraphError(
        "comparison graph is disconnected; disc scores are unidentifiable");
  }

  Rng rng = make_rng(seed);
  Eigen::VectorXd u(n), v(n);
  for (int i = 0; i < n; ++i) u(i) = 0.1 * standard_normal(rng);
  for (int i = 0; i < n; ++i) v(i) = 0.1 * standard_normal(rng);

  DiscScores scores;
  scores.roster = matrices.roster;
  const int checkpoint_every = std::max(1, iterations / 20);
  for (int iter = 0; iter < iterations; ++iter) {
    const Eigen::VectorXd grad = disc_loss_gradient(matrices, u, v);
    u -= learning_rate * grad.head(n);
    v -= learning_rate * grad.tail(n);
    if ((iter + 1) % checkpoint_every == 0 || iter + 1 == iterations) {
      scores.loss_checkpoints.push_back(disc_loss(matrices, u, v));
    }
  }
  scores.u = u;
  scores.v = v;
  scores.iterations = iterations;
  scores.final_loss = scores.loss_checkpoints.back();
  return scores;
}

TransitivityReport transitivity_report(const DiscScores& scores) {
  const int n = static_cast<int>(scores.roster.size());
  if (n == 0 || scores.u.size() != n || scores.v.size() != n) {
    throw ValidationError("transitivity report needs fitted scores");
  }

  // Predictions only depend on cross products, so the fit is free up to a
  // common rotation and scale. Canonical gauge: mean direction along +v,
  // mean point norm 1.
  const double mu = scores.u.mean();
  const double mv = scores.v.mean();
  const double norm = std::hypot(mu, mv);
  Eigen::VectorXd u = scores.u, v = scores.v;
  if (norm > 0.0) {
    const double sin_a = mu / norm, cos_a = mv / norm;
    Eigen::VectorXd ru = cos_a * u - sin_a * v;
    Eigen::VectorXd rv = sin_a * u + cos_a * v;
    u = ru;
    v = rv;
  }
  double mean_len = 0.0;
  for (int i = 0; i < n; ++i) mean_len += std::hypot(u(i), v(i));
  mean_len /= n;
  if (mean_len > 0.0) {
    u /= mean_len;
    v /= mean_len;
  }

  TransitivityReport report;
  report.mean_v = v.mean();
  report.std_v = n > 1 ? std::sqrt((v.array() - report.mean_v).square().sum() /
                                   (n - 1))
                       : 0.0;
  report.dispersion = std::abs(report.mean_v) > 0.0
                          ? report.std_v / std::abs(report.mean_v)
                          : std::numeric_limits<double>::infinity();
  report.u_dominant = report.dispersion < 0.5;
  return report;
}

}  // namespace pairarena

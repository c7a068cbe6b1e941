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

#include "pairarena/rating.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pairarena/graph.hpp"

namespace pairarena {

namespace {

// log(sigmoid(x)) without overflow on either tail.
double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

// Win-count matrix with the regularization pseudo-count added to every
// observed edge (both directions).
Eigen::MatrixXd effective_wins(const ComparisonMatrices& m, double reg) {
  Eigen::MatrixXd w = m.wins.cast<double>();
  if (reg > 0.0) {
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && m.counts(i, j) > 0) w(i, j) += reg;
      }
    }
  }
  return w;
}

// Log-likelihood in natural parameters s = alpha * u.
double log_likelihood_natural(const Eigen::MatrixXd& wins,
                              const Eigen::VectorXd& s) {
  const int n = static_cast<int>(s.size());
  double ll = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || wins(i, j) == 0.0) continue;
      ll += wins(i, j) * log_sigmoid(s(i) - s(j));
    }
  }
  return ll;
}

std::string describe_components(const std::vector<ModelRef>& roster,
                                const std::vector<std::vector<int>>& comps) {
  std::ostringstream os;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    os << (c == 0 ? "{" : " {");
    for (std::size_t k = 0; k < comps[c].size(); ++k) {
      if (k) os << ", ";
      os << roster[comps[c][k]].id;
    }
    os << "}";
  }
  return os.str();
}

}  // namespace

double win_prob(double u_i, double u_j, double alpha) {
  double p = 1.0 / (1.0 + std::exp(-alpha * (u_i - u_j)));
  // The logistic is strictly inside (0, 1); keep the floating-point
  // result there too.
  constexpr double lo = std::numeric_limits<double>::min();
  const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return std::clamp(p, lo, hi);
}

std::pair<double, double> elo_update(double u_i, double u_j, int outcome,
                                     const EloConfig& cfg) {
  const double alpha = std::numbers::ln10 / cfg.lambda_scale;
  const double p = win_prob(u_i, u_j, alpha);
  const double delta = cfg.k_factor * (static_cast<double>(outcome) - p);
  return {u_i + delta, cfg.symmetric_update ? u_j - delta : u_j};
}

double bt_log_likelihood(const ComparisonMatrices& matrices,
                         const RatingVector& theta) {
  if (!same_roster(matrices.roster, theta.roster)) {
    throw RosterMismatchError("matrices and ratings cover different rosters");
  }
  return log_likelihood_natural(matrices.wins.cast<double>(),
                                theta.alpha * theta.scores);
}

Eigen::VectorXd bt_gradient(const ComparisonMatrices& matrices,
                            const RatingVector& theta) {
  if (!same_roster(matrices.roster, theta.roster)) {
    throw RosterMismatchError("matrices and ratings cover different rosters");
  }
  const int n = matrices.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || matrices.counts(i, j) == 0) continue;
      const double p = win_prob(theta.scores(i), theta.scores(j), theta.alpha);
      g(i) += theta.alpha * (static_cast<double>(matrices.wins(i, j)) -
                             static_cast<double>(matrices.counts(i, j)) * p);
    }
  }
  return g;
}

RatingVector fit_bt_mle(const ComparisonMatrices& matrices,
                        const SolverConfig& cfg, double gauge_anchor) {
  const int n = matrices.size();
  if (n < 2) throw RosterTooSmallError("need at least 2 models to fit");
  if (matrices.total_battles() < 1) {
    throw ValidationError("need at least one battle to fit");
  }
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1 || !(cfg.alpha > 0.0)) {
    throw ValidationError("bad solver configuration");
  }

  const auto comps = connected_components(matrices.counts);
  if (comps.size() > 1) {
    throw DisconnectedGraphError(
        "comparison graph is disconnected; relative ratings across "
        "components are unidentifiable: " +
        describe_components(matrices.roster, comps));
  }
  if (cfg.regularization == 0.0) {
    // A finite maximizer exists iff the win digraph is strongly
    // connected: any group that never loses (or never wins) against the
    // rest sends its ratings to infinity.
    const auto sccs = strongly_connected_components(matrices.wins);
    if (sccs.size() > 1) {
      throw NoFiniteMaximizerError(
          "no finite maximizer: some models have only wins or only losses "
          "against the rest; win digraph splits into " +
          describe_components(matrices.roster, sccs));
    }
  }

  const Eigen::MatrixXd wins = effective_wins(matrices, cfg.regularization);
  const Eigen::MatrixXd totals = wins + wins.transpose();

  // Damped Newton on the log-likelihood in natural parameters, projected
  // onto the mean-zero gauge each step. The gradient always sums to zero,
  // so shifting the negated Hessian by a rank-one term in the all-ones
  // direction makes it positive definite without moving the solution.
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  double ll = log_likelihood_natural(wins, s);
  bool converged = false;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    Eigen::MatrixXd p(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        p(i, j) = i == j ? 0.5 : win_prob(s(i), s(j), 1.0);
      }
    }

    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || totals(i, j) == 0.0) continue;
        grad(i) += wins(i, j) - totals(i, j) * p(i, j);
      }
    }
    if (grad.cwiseAbs().maxCoeff() <= cfg.tolerance) {
      converged = true;
      break;
    }

    // Negated Hessian: the weighted Laplacian of totals * p * (1 - p).
    Eigen::MatrixXd neg_hessian = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double diag = 0.0;
      for (int j = 0; j < n; ++j) {
        if (i == j || totals(i, j) == 0.0) continue;
        const double w = totals(i, j) * p(i, j) * (1.0 - p(i, j));
        neg_hessian(i, j) = -w;
        diag += w;
      }
      neg_hessian(i, i) = diag;
    }
    const double shift =
        std::max(neg_hessian.trace() / n, 1e-12) / static_cast<double>(n);
    neg_hessian.array() += shift;

    Eigen::VectorXd direction;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(neg_hessian);
    if (ldlt.info() == Eigen::Success) {
      direction = ldlt.solve(grad);
    }
    if (ldlt.info() != Eigen::Success || !direction.allFinite()) {
      // Near-singular reduced Hessian: fall back to a scaled gradient step.
      double scale = std::max(neg_hessian.diagonal().maxCoeff(), 1.0);
      direction = grad / scale;
    }
    direction.array() -= direction.mean();

    const double slope = grad.dot(direction);
    const double ll_resolution = 8.0 * std::numeric_limits<double>::epsilon() *
                                 std::max(1.0, std::abs(ll));
    bool moved = false;
    if (slope <= ll_resolution) {
      // Quadratic-convergence region: the predicted improvement is below
      // what the likelihood can resolve in double precision, so any merit
      // comparison is ulp noise. Take the full Newton step.
      Eigen::VectorXd trial = s + direction;
      trial.array() -= trial.mean();
      s = trial;
      ll = log_likelihood_natural(wins, s);
      moved = true;
    }
    if (!moved) {
      // Backtracking line search keeps the ascent monotone.
      double step = 1.0;
      while (step > 1e-14) {
        Eigen::VectorXd trial = s + step * direction;
        trial.array() -= trial.mean();
        const double trial_ll = log_likelihood_natural(wins, trial);
        if (trial_ll >= ll + 1e-4 * step * slope) {
          s = trial;
          ll = trial_ll;
          moved = true;
          break;
        }
        step *= 0.5;
      }
    }
    if (!moved) break;  // no ascent possible; final gradient check decides
  }

  if (!converged) {
    // One last look: the loop may have exited on the iteration cap with
    // the tolerance already met.
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || totals(i, j) == 0.0) continue;
        grad(i) += wins(i, j) - totals(i, j) * win_prob(s(i), s(j), 1.0);
      }
    }
    if (grad.cwiseAbs().maxCoeff() > cfg.tolerance) {
      throw NumericalError(
          "BT-MLE did not reach the gradient tolerance; the likelihood may "
          "have no finite maximizer for this data");
    }
  }

  RatingVector theta;
  theta.roster = matrices.roster;
  theta.alpha = cfg.alpha;
  theta.gauge_anchor = gauge_anchor;
  theta.scores = s / cfg.alpha;
  theta.scores.array() += gauge_anchor - theta.scores.mean();
  return theta;
}

}  // namespace pairarena

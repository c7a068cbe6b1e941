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

#include "pairarena/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "pairarena/core.hpp"
#include "pairarena/graph.hpp"
#include "pairarena/random.hpp"

namespace pairarena {

Eigen::VectorXd average_ranks_desc(const Eigen::VectorXd& values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) > values(b); });
  Eigen::VectorXd ranks(n);
  int pos = 0;
  while (pos < n) {
    int end = pos;
    while (end + 1 < n && values(order[end + 1]) == values(order[pos])) ++end;
    const double avg = (pos + end) / 2.0 + 1.0;  // ranks are 1-based
    for (int k = pos; k <= end; ++k) ranks(order[k]) = avg;
    pos = end + 1;
  }
  return ranks;
}

namespace {

// Merge sort over the y-sequence counting strict inversions.
std::int64_t count_inversions(std::vector<double>& y, std::vector<double>& tmp,
                              int lo, int hi) {
  if (hi - lo <= 1) return 0;
  const int mid = (lo + hi) / 2;
  std::int64_t count = count_inversions(y, tmp, lo, mid) +
                       count_inversions(y, tmp, mid, hi);
  int a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (y[b] < y[a]) {
      count += mid - a;
      tmp[out++] = y[b++];
    } else {
      tmp[out++] = y[a++];
    }
  }
  while (a < mid) tmp[out++] = y[a++];
  while (b < hi) tmp[out++] = y[b++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, y.begin() + lo);
  return count;
}

std::int64_t tie_pairs(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::int64_t pairs = 0;
  std::size_t pos = 0;
  while (pos < values.size()) {
    std::size_t end = pos;
    while (end + 1 < values.size() && values[end + 1] == values[pos]) ++end;
    const std::int64_t run = static_cast<std::int64_t>(end - pos + 1);
    pairs += run * (run - 1) / 2;
    pos = end + 1;
  }
  return pairs;
}

}  // namespace

double kendall_tau_b(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(x.size());
  if (y.size() != n) throw ValidationError("vector lengths differ");
  if (n < 2) return 0.0;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (x(a) != x(b)) return x(a) < x(b);
    return y(a) < y(b);
  });

  const std::int64_t n0 = static_cast<std::int64_t>(n) * (n - 1) / 2;

  // Ties in x, ties in both (runs in the x-sorted order).
  std::int64_t n1 = 0, n3 = 0;
  int pos = 0;
  while (pos < n) {
    int end = pos;
    while (end + 1 < n && x(order[end + 1]) == x(order[pos])) ++end;
    const std::int64_t run = end - pos + 1;
    n1 += run * (run - 1) / 2;
    int q = pos;
    while (q <= end) {
      int qe = q;
      while (qe + 1 <= end && y(order[qe + 1]) == y(order[q])) ++qe;
      const std::int64_t both = qe - q + 1;
      n3 += both * (both - 1) / 2;
      q = qe + 1;
    }
    pos = end + 1;
  }

  std::vector<double> ys(n), tmp(n), yv(n);
  for (int k = 0; k < n; ++k) ys[k] = y(order[k]);
  for (int k = 0; k < n; ++k) yv[k] = y(k);
  const std::int64_t discordant = count_inversions(ys, tmp, 0, n);
  const std::int64_t n2 = tie_pairs(yv);

  const std::int64_t numerator = n0 - n1 - n2 + n3 - 2 * discordant;
  const std::int64_t dx = n0 - n1;
  const std::int64_t dy = n0 - n2;
  if (dx == 0 || dy == 0) return 0.0;
  return static_cast<double>(numerator) /
         std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
}

double spearman_rho(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(x.size());
  if (y.size() != n) throw ValidationError("vector lengths differ");
  if (n < 2) return 0.0;
  const Eigen::VectorXd rx = average_ranks_desc(x);
  const Eigen::VectorXd ry = average_ranks_desc(y);
  const Eigen::VectorXd cx = rx.array() - rx.mean();
  const Eigen::VectorXd cy = ry.array() - ry.mean();
  const double denom = std::sqrt(cx.squaredNorm() * cy.squaredNorm());
  if (denom == 0.0) return 0.0;
  return cx.dot(cy) / denom;
}

RankMetrics rank_metrics(const RatingVector& estimated,
                         const RatingVector& golden) {
  Eigen::VectorXd gold = golden.scores;
  if (!same_roster(estimated.roster, golden.roster)) {
    // Same ids in a different order is fine; realign.
    const auto index = roster_index(golden.roster);
    if (estimated.roster.size() != golden.roster.size()) {
      throw RosterMismatchError("metrics need identical rosters");
    }
    for (int i = 0; i < estimated.size(); ++i) {
      auto it = index.find(estimated.roster[i].id);
      if (it == index.end()) {
        throw RosterMismatchError("metrics need identical rosters");
      }
      gold(i) = golden.scores(it->second);
    }
  }

  const Eigen::VectorXd est = estimated.scores;
  RankMetrics m;
  m.spearman_rho = spearman_rho(est, gold);
  m.kendall_tau = kendall_tau_b(est, gold);
  m.avg_rank_diff =
      (average_ranks_desc(est) - average_ranks_desc(gold)).cwiseAbs().mean();
  const Eigen::VectorXd diff = (est.array() - est.mean()) -
                               (gold.array() - gold.mean());
  m.rmse = std::sqrt(diff.squaredNorm() / est.size());
  return m;
}

StrategyBootstrap bootstrap_variance(const std::vector<BattleRecord>& records,
                                     const std::vector<ModelRef>& roster,
                                     const std::string& label, int rounds,
                                     std::uint64_t seed,
                                     const SolverConfig& solver) {
  if (rounds < 2) throw ValidationError("bootstrap needs at least 2 rounds");
  if (records.size() < roster.size()) {
    throw ValidationError("fewer records than roster members");
  }
  const ComparisonMatrices original = build_matrices(records, roster);
  if (!is_connected(original.counts)) {
    throw DisconnectedGraphError(
        "original comparison graph is disconnected; bootstrap variances are "
        "meaningless");
  }

  // Resample from a canonical ordering so the report is exactly
  // order-invariant in the input records.
  std::vector<BattleRecord> canonical = records;
  std::sort(canonical.begin(), canonical.end(),
            [](const BattleRecord& x, const BattleRecord& y) {
              return std::tie(x.model_a.id, x.model_b.id, x.outcome,
                              x.timestamp) < std::tie(y.model_a.id,
                                                      y.model_b.id, y.outcome,
                                                      y.timestamp);
            });

  const int n = static_cast<int>(roster.size());
  const std::int64_t n_records = static_cast<std::int64_t>(records.size());
  StrategyBootstrap out;
  out.label = label;
  out.roster = roster;
  out.rounds = rounds;
  out.samples = Eigen::MatrixXd::Zero(rounds, n);

  const std::int64_t max_attempts = 10LL * rounds;
  std::int64_t attempts = 0;
  std::vector<BattleRecord> resample;
  resample.reserve(records.size());
  for (int round = 0; round < rounds; ++round) {
    while (true) {
      if (attempts >= max_attempts) {
        throw NumericalError(
            "too many disconnected bootstrap resamples; data is too sparse");
      }
      Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(attempts)));
      ++attempts;
      resample.clear();
      for (std::int64_t k = 0; k < n_records; ++k) {
        resample.push_back(canonical[uniform_index(rng, n_records)]);
      }
      ComparisonMatrices m = build_matrices(resample, roster);
      if (!is_connected(m.counts)) {
        ++out.redraws;
        continue;
      }
      try {
        const RatingVector fit = fit_bt_mle(m, solver);
        out.samples.row(round) = fit.scores.transpose();
        break;
      } catch (const NumericalError&) {
        ++out.redraws;  // e.g. a resample that lost all of someone's wins
      }
    }
  }

  out.mean = out.samples.colwise().mean();
  out.variance = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd centered =
        out.samples.col(j).array() - out.mean(j);
    out.variance(j) = centered.squaredNorm() / (rounds - 1);
  }
  return out;
}

BootstrapReport make_bootstrap_report(const StrategyBootstrap& proximity,
                                      const StrategyBootstrap& uniform) {
  if (!same_roster(proximity.roster, uniform.roster)) {
    throw RosterMismatchError("bootstrap runs cover different rosters");
  }
  if (proximity.rounds != uniform.rounds) {
    throw ValidationError("bootstrap runs used different round counts");
  }
  BootstrapReport report;
  report.rounds = proximity.rounds;
  report.roster = proximity.roster;
  report.strategies[proximity.label] = proximity;
  report.strategies[uniform.label] = uniform;
  report.variance_reduction = uniform.variance - proximity.variance;
  report.mean_variance_reduction = report.variance_reduction.mean();
  return report;
}

}  // namespace pairarena

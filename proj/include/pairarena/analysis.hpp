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

#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "pairarena/rating.hpp"
#include "pairarena/types.hpp"

namespace pairarena {

struct RankMetrics {
  double spearman_rho = 0.0;
  double kendall_tau = 0.0;   // tie-adjusted tau-b
  double avg_rank_diff = 0.0;
  double rmse = 0.0;  // after aligning both gauges by mean-subtraction
};

// Ranks by descending value with average-rank tie handling (rank 1 = max).
Eigen::VectorXd average_ranks_desc(const Eigen::VectorXd& values);

// O(n log n) tau-b (merge-sort inversion counting). Returns 0 when either
// input is constant.
double kendall_tau_b(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

double spearman_rho(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Compares an estimate against a golden vector. Rosters must contain the
// same ids; the golden vector is realigned when its order differs.
RankMetrics rank_metrics(const RatingVector& estimated,
                         const RatingVector& golden);

// Bootstrap refits for one dataset / strategy label.
struct StrategyBootstrap {
  std::string label;
  std::vector<ModelRef> roster;
  int rounds = 0;
  int redraws = 0;  // disconnected resamples that were redrawn
  Eigen::VectorXd mean;      // per-model mean rating over rounds
  Eigen::VectorXd variance;  // per-model sample variance over rounds
  Eigen::MatrixXd samples;   // rounds x n rating draws
};

struct BootstrapReport {
  int rounds = 0;
  std::vector<ModelRef> roster;
  std::map<std::string, StrategyBootstrap> strategies;
  Eigen::VectorXd variance_reduction;  // uniform variance - proximity variance
  double mean_variance_reduction = 0.0;
};

// Resamples the records with replacement `rounds` times and refits the
// MLE each time; disconnected resamples are redrawn (counted, capped at
// 10x rounds attempts). Deterministic per seed, order-invariant in the
// input records.
StrategyBootstrap bootstrap_variance(const std::vector<BattleRecord>& records,
                                     const std::vector<ModelRef>& roster,
                                     const std::string& label, int rounds,
                                     std::uint64_t seed,
                                     const SolverConfig& solver = {});

// Joins a proximity-labelled and a uniform-labelled run over the same
// roster into one report with per-model variance reductions.
BootstrapReport make_bootstrap_report(const StrategyBootstrap& proximity,
                                      const StrategyBootstrap& uniform);

}  // namespace pairarena

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

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pairarena/analysis.hpp"
#include "pairarena/random.hpp"
#include "pairarena/rating.hpp"
#include "pairarena/scheduler.hpp"
#include "pairarena/types.hpp"

namespace pairarena {

// Synthetic roster with known golden ratings; outcomes are drawn from the
// logistic curve at those ratings. noise_fraction of generated battles
// ignore the proximity constraint.
struct SyntheticWorld {
  RatingVector golden;
  std::uint64_t seed = 0;
  double noise_fraction = 0.05;
};

// Golden ratings drawn uniformly in (lo, hi], sorted descending so rank
// equals roster position + 1.
SyntheticWorld make_world(int n_models, double lo, double hi,
                          std::uint64_t seed, double noise_fraction = 0.05);

enum class SamplingStrategy { proximity, uniform };

std::string strategy_name(SamplingStrategy s);

// One Bernoulli battle between roster positions i and j.
BattleRecord sample_outcome(const SyntheticWorld& world, int i, int j,
                            Rng& rng);

// `budget` records: proximity picks pairs uniformly from {|gap| < h}
// (plus the noise share from all pairs); uniform picks all pairs
// uniformly. Throws EmptyProximitySetError when h admits no pair.
std::vector<BattleRecord> generate_battles(const SyntheticWorld& world,
                                           SamplingStrategy strategy, double h,
                                           std::int64_t budget, Rng& rng);

struct SweepRow {
  double h = 0.0;
  double budget = 0.0;
  std::string strategy;
  std::uint64_t seed = 0;
  bool connected = false;
  bool solved = false;
  double rmse = 0.0;
  double mse = 0.0;
  double kendall_tau = 0.0;
  double spearman_rho = 0.0;
  double avg_rank_diff = 0.0;
  // +inf exactly when the cell's comparison graph is not connected.
  double trace_inv_fim = std::numeric_limits<double>::infinity();
  std::string error;  // per-cell failure, never aborts the sweep
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// Rating-recovery sweep: per cell, generate battles, fit the MLE and
// score it against the golden ratings. Failed cells are emitted with the
// error recorded.
SweepResult threshold_sweep(const SyntheticWorld& world,
                            const std::vector<double>& thresholds,
                            const std::vector<std::int64_t>& budgets,
                            const std::vector<SamplingStrategy>& strategies,
                            const std::vector<std::uint64_t>& seeds,
                            const SolverConfig& solver = {});

enum class FimSweepMode {
  ideal,      // exact even split of the budget over proximity pairs
  practical,  // battle counts accumulated by repeated pair sampling rounds
};

// Total-variance sweep: tr[I^-1] at the golden ratings for each
// (threshold, budget) cell. Only rating metrics fields relevant to the
// objective are filled.
SweepResult fim_sweep(const SyntheticWorld& world,
                      const std::vector<double>& thresholds,
                      const std::vector<std::int64_t>& budgets,
                      FimSweepMode mode,
                      const std::vector<std::uint64_t>& seeds);

struct ReplayConfig {
  double cold_start_fraction = 0.2;
  std::int64_t refit_interval = 5000;  // consumed records between refits
  SamplingStrategy strategy = SamplingStrategy::proximity;
  double h = 150.0;  // proximity filter width on current estimates
  PlacementConfig placement;
  SolverConfig solver;
  // Stop consuming after this many records; lets two strategies be
  // compared at equal consumed-record counts.
  std::optional<std::int64_t> max_consumed;
};

struct ReplayRefit {
  std::int64_t seen = 0;      // records inspected so far
  std::int64_t consumed = 0;  // records accepted into the accumulated data
  int rated_models = 0;
  RankMetrics vs_reference;
};

struct ReplayResult {
  std::vector<ReplayRefit> timeline;
  RatingVector reference;      // full-data fit, computed first
  RatingVector final_ratings;  // last refit (rated models only)
  std::int64_t consumed_total = 0;
  std::int64_t placement_consumed = 0;
  std::int64_t skipped = 0;
  int placements_finished = 0;
};

// Chronological replay: fit a reference on the full stream, cold-start on
// the leading fraction, then walk the remainder; records between rated
// models pass the strategy filter, records touching an unrated model feed
// that model's placement session, and the accumulated data is refit every
// refit_interval consumed records, scoring against the reference.
ReplayResult replay_experiment(const std::vector<BattleRecord>& records,
                               const std::vector<ModelRef>& roster,
                               const ReplayConfig& cfg,
                               std::uint64_t seed = 0);

}  // namespace pairarena

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
#include <optional>
#include <string>
#include <vector>

#include "pairarena/random.hpp"
#include "pairarena/types.hpp"

namespace pairarena {

struct ProximityConfig {
  double h = 150.0;          // trust-region threshold, Elo units
  double tau = 1.0;          // softmax temperature, battle-count units
  int sample_size_k = 2;     // models per battle round
  int min_proximity_n_m = 3; // minimum proximity set size
};

struct PlacementConfig {
  int battles_per_round = 10;  // T
  double winrate_band = 0.05;  // early stop when |wr - 0.5| <= band
  int min_interval = 3;        // stop when fewer models remain
};

struct PlacementRound {
  ModelRef opponent;
  int wins = 0;
  int losses = 0;
};

// One binary-search placement session for a new model over a pre-ranked
// roster. lo/hi are 1-based rank indices (rank 1 = highest rating).
struct PlacementState {
  std::string model_id;
  int lo = 1;
  int hi = 1;
  std::vector<PlacementRound> rounds;
  bool finished = false;
  std::optional<double> final_rating;
};

PlacementState make_placement_state(std::string model_id, int roster_size);

// Proximity set of each model: models within h of u_i when that set has
// at least n_m members, otherwise the n_m - 1 closest models plus the
// model itself. Each set contains its own index.
std::vector<std::vector<int>> proximity_sets(const Eigen::VectorXd& scores,
                                             double h, int n_m);

// Initial sampling weights, in roster order: w_i = 1 - PCC_i / max(N),
// where PCC_i is the minimum battle count between i and its proximity
// set. All weights are 1 on a fully cold system (max(N) = 0).
Eigen::VectorXd initial_weights(const RatingVector& theta,
                                const ComparisonMatrices& matrices,
                                const ProximityConfig& cfg);

// Samples a battle set: the first model by initial weights, each further
// model from the surviving candidates with probability
// softmax(-ECC / tau), pruning candidates farther than h from any
// selected model. Returns 2..K models in selection order.
std::vector<ModelRef> proximity_sample(const RatingVector& theta,
                                       const ComparisonMatrices& matrices,
                                       const ProximityConfig& cfg, Rng& rng);

std::vector<ModelRef> proximity_sample(const RatingVector& theta,
                                       const ComparisonMatrices& matrices,
                                       const ProximityConfig& cfg,
                                       std::uint64_t seed);

// Sampling core over precomputed proximity sets, returning roster
// indices in selection order. Lets tight simulation loops reuse the sets
// across rounds while the count matrix evolves.
std::vector<int> proximity_sample_indices(
    const RatingVector& theta, const ComparisonMatrices& matrices,
    const ProximityConfig& cfg, const std::vector<std::vector<int>>& sets,
    Rng& rng);

// Roster member at rank floor((lo + hi) / 2) of the current interval.
ModelRef next_placement_opponent(const PlacementState& state,
                                 const RatingVector& theta);

// Applies one round of T battles against the midpoint opponent: early
// stop when the win rate is within the band of 50%, otherwise the
// interval halves toward the side the new model belongs to and the
// session ends once fewer than min_interval models remain. On
// termination the final rating inverts the Elo curve at the last round's
// win rate around the opponent's rating; a 0% or 100% sweep clamps to
// the bracket endpoint's rating instead of diverging.
PlacementState placement_step(const PlacementState& state,
                              const RatingVector& theta, int wins, int losses,
                              const PlacementConfig& cfg);

}  // namespace pairarena

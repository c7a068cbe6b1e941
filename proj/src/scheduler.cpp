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

#include "pairarena/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pairarena {

namespace {

void check_proximity_config(const ProximityConfig& cfg) {
  if (!(cfg.h > 0.0) || !(cfg.tau > 0.0) || cfg.sample_size_k < 2 ||
      cfg.min_proximity_n_m < 2) {
    throw ValidationError("bad proximity sampling configuration");
  }
}

void check_placement_config(const PlacementConfig& cfg) {
  if (cfg.battles_per_round < 1 || !(cfg.winrate_band > 0.0) ||
      !(cfg.winrate_band < 0.5) || cfg.min_interval < 2) {
    throw ValidationError("bad placement configuration");
  }
}

// Roster indices ordered by rating descending (rank 1 first); ties break
// by roster position so ranking is deterministic.
std::vector<int> rank_order(const RatingVector& theta) {
  std::vector<int> order(theta.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return theta.scores(a) > theta.scores(b);
  });
  return order;
}

}  // namespace

std::vector<std::vector<int>> proximity_sets(const Eigen::VectorXd& scores,
                                             double h, int n_m) {
  const int n = static_cast<int>(scores.size());
  std::vector<std::vector<int>> sets(n);
  std::vector<int> by_distance(n);
  for (int i = 0; i < n; ++i) {
    auto& set = sets[i];
    for (int j = 0; j < n; ++j) {
      if (std::abs(scores(j) - scores(i)) < h) set.push_back(j);
    }
    if (static_cast<int>(set.size()) >= n_m) continue;

    // Too few neighbors inside h: take the n_m - 1 closest models instead.
    set.clear();
    std::iota(by_distance.begin(), by_distance.end(), 0);
    std::stable_sort(by_distance.begin(), by_distance.end(), [&](int a, int b) {
      return std::abs(scores(a) - scores(i)) < std::abs(scores(b) - scores(i));
    });
    set.push_back(i);
    for (int j : by_distance) {
      if (static_cast<int>(set.size()) >= n_m) break;
      if (j != i) set.push_back(j);
    }
    std::sort(set.begin(), set.end());
  }
  return sets;
}

namespace {

Eigen::VectorXd weights_from_sets(const ComparisonMatrices& matrices,
                                  const std::vector<std::vector<int>>& sets) {
  const int n = matrices.size();
  const std::int64_t s_max = matrices.counts.maxCoeff();
  if (s_max == 0) return Eigen::VectorXd::Ones(n);  // fully cold system
  Eigen::VectorXd weights(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t n_min = std::numeric_limits<std::int64_t>::max();
    for (int j : sets[i]) {
      if (j != i) n_min = std::min(n_min, matrices.counts(i, j));
    }
    weights(i) =
        1.0 - static_cast<double>(n_min) / static_cast<double>(s_max);
  }
  return weights;
}

void check_sample_inputs(const RatingVector& theta,
                         const ComparisonMatrices& matrices,
                         const ProximityConfig& cfg) {
  check_proximity_config(cfg);
  if (!same_roster(theta.roster, matrices.roster)) {
    throw RosterMismatchError("matrices and ratings cover different rosters");
  }
  if (theta.size() < 2) throw RosterTooSmallError("need at least 2 models");
}

}  // namespace

Eigen::VectorXd initial_weights(const RatingVector& theta,
                                const ComparisonMatrices& matrices,
                                const ProximityConfig& cfg) {
  check_sample_inputs(theta, matrices, cfg);
  if (matrices.counts.maxCoeff() == 0) {
    return Eigen::VectorXd::Ones(theta.size());
  }
  return weights_from_sets(
      matrices, proximity_sets(theta.scores, cfg.h, cfg.min_proximity_n_m));
}

std::vector<int> proximity_sample_indices(
    const RatingVector& theta, const ComparisonMatrices& matrices,
    const ProximityConfig& cfg, const std::vector<std::vector<int>>& sets,
    Rng& rng) {
  check_sample_inputs(theta, matrices, cfg);

  const Eigen::VectorXd weights = weights_from_sets(matrices, sets);
  std::vector<double> w(weights.data(), weights.data() + weights.size());
  const int first = sample_weighted(rng, w);

  std::vector<int> selected{first};
  std::vector<int> candidates;
  for (int j : sets[first]) {
    if (j != first) candidates.push_back(j);
  }

  while (static_cast<int>(selected.size()) < cfg.sample_size_k &&
         !candidates.empty()) {
    // Effective comparison count: fewest battles against any selected
    // model; softmax(-ecc / tau) favors under-compared candidates.
    std::vector<double> probs(candidates.size());
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      std::int64_t ecc = std::numeric_limits<std::int64_t>::max();
      for (int s : selected) {
        ecc = std::min(ecc, matrices.counts(candidates[c], s));
      }
      probs[c] = -static_cast<double>(ecc) / cfg.tau;
      max_logit = std::max(max_logit, probs[c]);
    }
    for (double& p : probs) p = std::exp(p - max_logit);

    const int pick = sample_weighted(rng, probs);
    const int chosen = candidates[pick];
    selected.push_back(chosen);
    candidates.erase(candidates.begin() + pick);

    // Drop candidates now outside the trust region of any selected model.
    std::erase_if(candidates, [&](int j) {
      for (int s : selected) {
        if (std::abs(theta.scores(j) - theta.scores(s)) >= cfg.h) return true;
      }
      return false;
    });
  }
  return selected;
}

std::vector<ModelRef> proximity_sample(const RatingVector& theta,
                                       const ComparisonMatrices& matrices,
                                       const ProximityConfig& cfg, Rng& rng) {
  const auto sets =
      proximity_sets(theta.scores, cfg.h, cfg.min_proximity_n_m);
  const auto selected =
      proximity_sample_indices(theta, matrices, cfg, sets, rng);
  std::vector<ModelRef> result;
  result.reserve(selected.size());
  for (int idx : selected) result.push_back(theta.roster[idx]);
  return result;
}

std::vector<ModelRef> proximity_sample(const RatingVector& theta,
                                       const ComparisonMatrices& matrices,
                                       const ProximityConfig& cfg,
                                       std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return proximity_sample(theta, matrices, cfg, rng);
}

PlacementState make_placement_state(std::string model_id, int roster_size) {
  if (roster_size < 2) {
    throw RosterTooSmallError("placement needs at least 2 ranked models");
  }
  PlacementState state;
  state.model_id = std::move(model_id);
  state.lo = 1;
  state.hi = roster_size;
  return state;
}

ModelRef next_placement_opponent(const PlacementState& state,
                                 const RatingVector& theta) {
  if (state.finished) {
    throw AlreadyFinishedError("placement session already finished");
  }
  if (state.lo < 1 || state.hi > theta.size() || state.lo > state.hi) {
    throw ValidationError("placement interval out of range");
  }
  const auto order = rank_order(theta);
  const int mid = (state.lo + state.hi) / 2;
  return theta.roster[order[mid - 1]];
}

PlacementState placement_step(const PlacementState& state,
                              const RatingVector& theta, int wins, int losses,
                              const PlacementConfig& cfg) {
  check_placement_config(cfg);
  if (state.finished) {
    throw AlreadyFinishedError("placement session already finished");
  }
  if (wins < 0 || losses < 0 || wins + losses != cfg.battles_per_round) {
    throw BadRoundTotalError("round must contain exactly T battles");
  }
  if (state.lo < 1 || state.hi > theta.size() || state.lo > state.hi) {
    throw ValidationError("placement interval out of range");
  }

  const auto order = rank_order(theta);
  const int mid = (state.lo + state.hi) / 2;
  const int opponent_idx = order[mid - 1];
  const double u_mid = theta.scores(opponent_idx);
  const double wr = static_cast<double>(wins) /
                    static_cast<double>(cfg.battles_per_round);

  PlacementState next = state;
  next.rounds.push_back({theta.roster[opponent_idx], wins, losses});

  // Terminal rating: invert the win curve around the opponent, then clamp
  // into the final bracket's rating span. The binary search has already
  // concluded the model sits inside that bracket, and the inversion is
  // infinite after a 0% or 100% sweep.
  const auto finish = [&](int lo, int hi) {
    next.finished = true;
    const double top = theta.scores(order[lo - 1]);
    const double bottom = theta.scores(order[hi - 1]);
    if (wins == 0) {
      next.final_rating = bottom;
    } else if (losses == 0) {
      next.final_rating = top;
    } else {
      const double inverted =
          u_mid + kEloLambda * std::log10(wr / (1.0 - wr));
      next.final_rating = std::clamp(inverted, bottom, top);
    }
  };

  if (std::abs(wr - 0.5) <= cfg.winrate_band) {
    finish(state.lo, state.hi);
    return next;
  }

  int lo = state.lo, hi = state.hi;
  if (wr > 0.5) {
    hi = mid;
  } else {
    lo = mid;
  }
  next.lo = lo;
  next.hi = hi;

  const bool shrunk = lo != state.lo || hi != state.hi;
  if (!shrunk || hi - lo + 1 < cfg.min_interval) {
    finish(lo, hi);
  }
  return next;
}

}  // namespace pairarena

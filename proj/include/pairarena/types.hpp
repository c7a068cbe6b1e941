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
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pairarena/errors.hpp"

namespace pairarena {

// Rating scale that makes the Bradley-Terry logistic coincide with the
// classical Elo curve (lambda = 400).
inline constexpr double kEloLambda = 400.0;
inline const double kDefaultAlpha = std::numbers::ln10 / kEloLambda;
inline constexpr double kDefaultGaugeAnchor = 1000.0;

struct ModelRef {
  std::string id;
  std::string display_name;

  ModelRef() = default;
  explicit ModelRef(std::string id_) : id(id_), display_name(std::move(id_)) {}
  ModelRef(std::string id_, std::string name)
      : id(std::move(id_)), display_name(std::move(name)) {}

  // Identity is the id alone; display names are cosmetic.
  friend bool operator==(const ModelRef& a, const ModelRef& b) {
    return a.id == b.id;
  }
  friend bool operator!=(const ModelRef& a, const ModelRef& b) {
    return a.id != b.id;
  }
};

enum class BattleSource { live, simulated, replay };

struct BattleRecord {
  ModelRef model_a;
  ModelRef model_b;
  int outcome = 1;  // 1 = a wins, 0 = b wins; ties are not representable
  std::int64_t timestamp = 0;
  BattleSource source = BattleSource::live;
  bool valid = true;
};

using CountMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Symmetric battle-count matrix N and directed win-count matrix W over a
// fixed roster order. Invariants: N = W + W^T, zero diagonals, all
// entries nonnegative. Immutable value object once built.
struct ComparisonMatrices {
  std::vector<ModelRef> roster;
  CountMatrix counts;  // N
  CountMatrix wins;    // W

  int size() const { return static_cast<int>(roster.size()); }
  std::int64_t total_battles() const { return counts.sum() / 2; }
  Eigen::MatrixXd counts_real() const { return counts.cast<double>(); }
};

// Ratings in Elo units plus the scale constant and the gauge anchor the
// mean is pinned to.
struct RatingVector {
  std::vector<ModelRef> roster;
  Eigen::VectorXd scores;
  double alpha = kDefaultAlpha;
  double gauge_anchor = kDefaultGaugeAnchor;

  int size() const { return static_cast<int>(roster.size()); }
};

// Anchors the gauge at the actual mean, so the invariant
// mean(scores) == gauge_anchor holds by construction.
RatingVector make_rating_vector(std::vector<ModelRef> roster,
                                Eigen::VectorXd scores,
                                double alpha = kDefaultAlpha);

// Throws ValidationError if lengths disagree, ids repeat, scores are not
// finite, or the mean strays from the anchor by more than 1e-9.
void validate_rating_vector(const RatingVector& theta);

// Empirical win rates; cells without battles are undefined rather than 0.
struct PayoffMatrix {
  Eigen::MatrixXd values;  // NaN where undefined
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined;

  std::optional<double> at(int i, int j) const {
    if (!defined(i, j)) return std::nullopt;
    return values(i, j);
  }
};

// Maps model id -> roster position; throws ValidationError on duplicates.
std::unordered_map<std::string, int> roster_index(
    const std::vector<ModelRef>& roster);

// True when both rosters list the same ids in the same order.
bool same_roster(const std::vector<ModelRef>& a,
                 const std::vector<ModelRef>& b);

}  // namespace pairarena

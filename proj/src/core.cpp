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

#include "pairarena/core.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pairarena {

std::unordered_map<std::string, int> roster_index(
    const std::vector<ModelRef>& roster) {
  std::unordered_map<std::string, int> index;
  index.reserve(roster.size());
  for (int i = 0; i < static_cast<int>(roster.size()); ++i) {
    auto [it, inserted] = index.emplace(roster[i].id, i);
    if (!inserted) {
      throw ValidationError("duplicate model id in roster: " + roster[i].id);
    }
  }
  return index;
}

bool same_roster(const std::vector<ModelRef>& a,
                 const std::vector<ModelRef>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].id != b[i].id) return false;
  }
  return true;
}

RatingVector make_rating_vector(std::vector<ModelRef> roster,
                                Eigen::VectorXd scores, double alpha) {
  RatingVector theta;
  theta.roster = std::move(roster);
  theta.scores = std::move(scores);
  theta.alpha = alpha;
  theta.gauge_anchor =
      theta.scores.size() > 0 ? theta.scores.mean() : kDefaultGaugeAnchor;
  validate_rating_vector(theta);
  return theta;
}

void validate_rating_vector(const RatingVector& theta) {
  if (static_cast<int>(theta.roster.size()) != theta.scores.size()) {
    throw ValidationError("rating vector length does not match roster");
  }
  if (!(theta.alpha > 0.0)) {
    throw ValidationError("alpha must be positive");
  }
  roster_index(theta.roster);  // id uniqueness
  if (theta.scores.size() == 0) return;
  if (!theta.scores.allFinite()) {
    throw ValidationError("ratings must be finite");
  }
  double mean = theta.scores.mean();
  double tol = 1e-9 * std::max(1.0, std::abs(theta.gauge_anchor));
  if (std::abs(mean - theta.gauge_anchor) > tol) {
    throw ValidationError("rating gauge is off its anchor");
  }
}

ComparisonMatrices build_matrices(const std::vector<BattleRecord>& records,
                                  const std::vector<ModelRef>& roster) {
  const auto index = roster_index(roster);
  const int n = static_cast<int>(roster.size());

  ComparisonMatrices m;
  m.roster = roster;
  m.counts = CountMatrix::Zero(n, n);
  m.wins = CountMatrix::Zero(n, n);

  for (std::size_t k = 0; k < records.size(); ++k) {
    const BattleRecord& rec = records[k];
    const std::string at = " (record " + std::to_string(k) + ")";
    if (!rec.valid) {
      throw ValidationError("invalid record passed to build_matrices" + at);
    }
    if (rec.outcome != 0 && rec.outcome != 1) {
      throw ValidationError("outcome must be 0 or 1" + at);
    }
    auto ia = index.find(rec.model_a.id);
    auto ib = index.find(rec.model_b.id);
    if (ia == index.end()) {
      throw UnknownModelError("unknown model " + rec.model_a.id + at);
    }
    if (ib == index.end()) {
      throw UnknownModelError("unknown model " + rec.model_b.id + at);
    }
    const int a = ia->second, b = ib->second;
    if (a == b) {
      throw SelfBattleError("self battle for model " + rec.model_a.id + at);
    }
    m.counts(a, b) += 1;
    m.counts(b, a) += 1;
    if (rec.outcome == 1) {
      m.wins(a, b) += 1;
    } else {
      m.wins(b, a) += 1;
    }
  }
  return m;
}

PayoffMatrix payoff(const ComparisonMatrices& matrices) {
  const int n = matrices.size();
  PayoffMatrix p;
  p.values = Eigen::MatrixXd::Constant(
      n, n, std::numeric_limits<double>::quiet_NaN());
  p.defined.setConstant(n, n, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || matrices.counts(i, j) == 0) continue;
      p.values(i, j) = static_cast<double>(matrices.wins(i, j)) /
                       static_cast<double>(matrices.counts(i, j));
      p.defined(i, j) = true;
    }
  }
  return p;
}

std::vector<ModelRef> roster_from_records(
    const std::vector<BattleRecord>& records) {
  std::vector<ModelRef> roster;
  std::unordered_map<std::string, int> seen;
  for (const BattleRecord& rec : records) {
    for (const ModelRef* m : {&rec.model_a, &rec.model_b}) {
      if (seen.emplace(m->id, 1).second) roster.push_back(*m);
    }
  }
  return roster;
}

}  // namespace pairarena

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

#include <cmath>

#include "doctest.h"
#include "pairarena/core.hpp"
#include "pairarena/disc.hpp"
#include "pairarena/rating.hpp"
#include "test_support.hpp"

using namespace pairarena;
using namespace pairarena::testing;

namespace {

// Rock-paper-scissors counts: each winner beats its victim with rate q.
ComparisonMatrices cyclic_matrices(int battles_per_pair, double q) {
  const auto roster = make_roster({"rock", "paper", "scissors"});
  ComparisonMatrices m;
  m.roster = roster;
  m.counts = CountMatrix::Zero(3, 3);
  m.wins = CountMatrix::Zero(3, 3);
  const auto wins_q = static_cast<std::int64_t>(
      std::llround(q * battles_per_pair));
  for (const auto& [w, l] : std::vector<std::pair<int, int>>{
           {1, 0}, {2, 1}, {0, 2}}) {  // paper>rock, scissors>paper, rock>scissors
    m.counts(w, l) = m.counts(l, w) = battles_per_pair;
    m.wins(w, l) = wins_q;
    m.wins(l, w) = battles_per_pair - wins_q;
  }
  return m;
}

// Transitive data generated from the one-dimensional logistic model at
// fixed gaps, with expected counts.
ComparisonMatrices transitive_matrices(int battles_per_pair) {
  const auto roster = make_roster({"s", "t", "u", "v"});
  Eigen::VectorXd scores(4);
  scores << 1300.0, 1100.0, 900.0, 700.0;
  ComparisonMatrices m;
  m.roster = roster;
  m.counts = CountMatrix::Zero(4, 4);
  m.wins = CountMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double p = win_prob(scores(i), scores(j), kDefaultAlpha);
      m.counts(i, j) = m.counts(j, i) = battles_per_pair;
      m.wins(i, j) = static_cast<std::int64_t>(std::llround(p * battles_per_pair));
      m.wins(j, i) = battles_per_pair - m.wins(i, j);
    }
  }
  return m;
}

double predicted(const DiscScores& s, int i, int j) {
  return 1.0 / (1.0 + std::exp(-(s.u(i) * s.v(j) - s.v(i) * s.u(j))));
}

}  // namespace

TEST_SUITE_BEGIN("disc");

TEST_CASE("cyclic win rates are representable and recovered") {
  const auto m = cyclic_matrices(10000, 0.8);
  const DiscScores s = fit_disc(m, 4000, 8.0, 5);
  CHECK(predicted(s, 1, 0) == doctest::Approx(0.8).epsilon(0.0625));  // within 0.05
  CHECK(std::abs(predicted(s, 1, 0) - 0.8) < 0.05);
  CHECK(std::abs(predicted(s, 2, 1) - 0.8) < 0.05);
  CHECK(std::abs(predicted(s, 0, 2) - 0.8) < 0.05);
}

TEST_CASE("transitive data pins v, cyclic data spreads it") {
  const DiscScores transitive = fit_disc(transitive_matrices(5000), 4000, 8.0, 7);
  const DiscScores cyclic = fit_disc(cyclic_matrices(10000, 0.8), 4000, 8.0, 7);
  const TransitivityReport t = transitivity_report(transitive);
  const TransitivityReport c = transitivity_report(cyclic);
  CHECK(t.dispersion < c.dispersion);
  CHECK(t.u_dominant);
}

TEST_CASE("identical v components have zero dispersion") {
  DiscScores s;
  s.roster = make_roster({"a", "b", "c"});
  s.u = Eigen::Vector3d(0.5, 0.0, -0.5);
  s.v = Eigen::Vector3d(1.0, 1.0, 1.0);
  // A pure rotation-scale gauge change keeps v identical across models.
  const TransitivityReport r = transitivity_report(s);
  CHECK(r.std_v == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.dispersion == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("predictions are invariant under a common rotation") {
  const auto m = cyclic_matrices(1000, 0.7);
  const DiscScores s = fit_disc(m, 500, 8.0, 11);
  const double angle = 1.234;
  DiscScores rotated = s;
  rotated.u = std::cos(angle) * s.u - std::sin(angle) * s.v;
  rotated.v = std::sin(angle) * s.u + std::cos(angle) * s.v;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(std::abs(predicted(rotated, i, j) - predicted(s, i, j)) < 1e-12);
    }
  }
}

TEST_CASE("fit beats the uninformed 50/50 predictor") {
  const auto m = cyclic_matrices(2000, 0.8);
  const DiscScores s = fit_disc(m, 2000, 8.0, 13);
  const double uninformed =
      disc_loss(m, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3));
  CHECK(uninformed == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(s.final_loss < uninformed);
}

TEST_CASE("loss checkpoints never increase") {
  const auto m = transitive_matrices(3000);
  const DiscScores s = fit_disc(m, 3000, 8.0, 17);
  for (std::size_t k = 1; k < s.loss_checkpoints.size(); ++k) {
    CHECK(s.loss_checkpoints[k] <= s.loss_checkpoints[k - 1] + 1e-12);
  }
}

TEST_CASE("analytic gradient matches finite differences") {
  const auto m = cyclic_matrices(500, 0.75);
  Rng rng = make_rng(19);
  Eigen::VectorXd u(3), v(3);
  for (int i = 0; i < 3; ++i) u(i) = standard_normal(rng) * 0.5;
  for (int i = 0; i < 3; ++i) v(i) = standard_normal(rng) * 0.5;
  const Eigen::VectorXd grad = disc_loss_gradient(m, u, v);
  const double eps = 1e-6;
  for (int k = 0; k < 6; ++k) {
    Eigen::VectorXd up_u = u, up_v = v, dn_u = u, dn_v = v;
    if (k < 3) {
      up_u(k) += eps;
      dn_u(k) -= eps;
    } else {
      up_v(k - 3) += eps;
      dn_v(k - 3) -= eps;
    }
    const double fd =
        (disc_loss(m, up_u, up_v) - disc_loss(m, dn_u, dn_v)) / (2.0 * eps);
    CHECK(grad(k) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("preconditions") {
  const auto pair = make_roster({"a", "b"});
  ComparisonMatrices two;
  two.roster = pair;
  two.counts = CountMatrix::Zero(2, 2);
  two.wins = CountMatrix::Zero(2, 2);
  CHECK_THROWS_AS(static_cast<void>(fit_disc(two, 100, 1.0, 0)),
                  RosterTooSmallError);

  const auto roster = make_roster({"a", "b", "c", "d"});
  std::vector<BattleRecord> split = {battle("a", "b"), battle("b", "a"),
                                     battle("c", "d"), battle("d", "c")};
  CHECK_THROWS_AS(
      static_cast<void>(fit_disc(build_matrices(split, roster), 100, 1.0, 0)),
      DisconnectedGraphError);
}

TEST_CASE("fits are reproducible per seed") {
  const auto m = cyclic_matrices(1000, 0.8);
  const DiscScores a = fit_disc(m, 200, 8.0, 23);
  const DiscScores b = fit_disc(m, 200, 8.0, 23);
  CHECK(a.u == b.u);
  CHECK(a.v == b.v);
  const DiscScores c = fit_disc(m, 200, 8.0, 24);
  CHECK(a.u != c.u);
}

TEST_SUITE_END();

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

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "pairarena/core.hpp"
#include "pairarena/rating.hpp"
#include "pairarena/scheduler.hpp"
#include "test_support.hpp"

using namespace pairarena;
using namespace pairarena::testing;

namespace {

RatingVector ladder(int n, double top, double spacing) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("m" + std::to_string(i));
  Eigen::VectorXd scores(n);
  for (int i = 0; i < n; ++i) scores(i) = top - spacing * i;
  return make_rating_vector(make_roster(ids), scores);
}

ComparisonMatrices zero_matrices(const RatingVector& theta) {
  ComparisonMatrices m;
  m.roster = theta.roster;
  m.counts = CountMatrix::Zero(theta.size(), theta.size());
  m.wins = CountMatrix::Zero(theta.size(), theta.size());
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("scheduler");

TEST_CASE("cold system weights are uniform") {
  const RatingVector theta = ladder(5, 1200.0, 50.0);
  const auto m = zero_matrices(theta);
  const Eigen::VectorXd w = initial_weights(theta, m, {});
  CHECK(w == Eigen::VectorXd::Ones(5));
}

TEST_CASE("a fully compared neighborhood zeroes the weight") {
  const RatingVector theta = ladder(3, 1100.0, 50.0);
  auto m = zero_matrices(theta);
  // Model 0's least-compared in-range neighbor carries the global max.
  m.counts(0, 1) = m.counts(1, 0) = 8;
  m.counts(0, 2) = m.counts(2, 0) = 8;
  m.counts(1, 2) = m.counts(2, 1) = 2;
  m.wins = m.counts / 2;
  ProximityConfig cfg;
  cfg.h = 500.0;
  const Eigen::VectorXd w = initial_weights(theta, m, cfg);
  CHECK(w(0) == doctest::Approx(0.0));
  CHECK(w(1) == doctest::Approx(1.0 - 2.0 / 8.0));
  CHECK(w(2) == doctest::Approx(1.0 - 2.0 / 8.0));
}

TEST_CASE("hand-traced weights on four models") {
  // Ratings 1200, 1150, 1000, 700; h = 100, n_m = 2.
  // Proximity sets: {0,1}, {0,1}, {2} -> fallback {2,1}, {3} -> fallback {3,2}.
  const auto roster = make_roster({"p", "q", "r", "s"});
  Eigen::VectorXd scores(4);
  scores << 1200.0, 1150.0, 1000.0, 700.0;
  const RatingVector theta = make_rating_vector(roster, scores);
  auto m = zero_matrices(theta);
  auto set_count = [&](int i, int j, std::int64_t c) {
    m.counts(i, j) = m.counts(j, i) = c;
  };
  set_count(0, 1, 4);
  set_count(1, 2, 6);
  set_count(2, 3, 10);  // global max

  ProximityConfig cfg;
  cfg.h = 100.0;
  cfg.min_proximity_n_m = 2;
  const Eigen::VectorXd w = initial_weights(theta, m, cfg);
  CHECK(w(0) == doctest::Approx(1.0 - 4.0 / 10.0));  // min N over {1}
  CHECK(w(1) == doctest::Approx(1.0 - 4.0 / 10.0));  // min N over {0}
  CHECK(w(2) == doctest::Approx(1.0 - 6.0 / 10.0));  // closest model is 1
  CHECK(w(3) == doctest::Approx(1.0 - 10.0 / 10.0));  // closest model is 2
}

TEST_CASE("raising a model's PCC never raises its weight") {
  const RatingVector theta = ladder(4, 1150.0, 50.0);
  auto m = zero_matrices(theta);
  m.counts.setConstant(2);
  m.counts.diagonal().setZero();
  m.counts(0, 3) = m.counts(3, 0) = 10;  // pins the global max
  m.wins = m.counts / 2;
  ProximityConfig cfg;
  cfg.h = 80.0;

  double previous = 2.0;
  for (std::int64_t c = 2; c <= 10; c += 2) {
    m.counts(1, 2) = m.counts(2, 1) = c;  // model 1's only in-range pair... and 0
    m.counts(1, 0) = m.counts(0, 1) = c;
    const double w1 = initial_weights(theta, m, cfg)(1);
    CHECK(w1 <= previous);
    previous = w1;
  }
}

TEST_CASE("two models are always both returned") {
  const RatingVector theta = ladder(2, 1100.0, 100.0);
  const auto m = zero_matrices(theta);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto set = proximity_sample(theta, m, {}, seed);
    CHECK(set.size() == 2);
    CHECK(set[0].id != set[1].id);
  }
}

TEST_CASE("threshold regime keeps every returned pair inside h") {
  const RatingVector theta = ladder(20, 1475.0, 50.0);
  const auto m = zero_matrices(theta);
  ProximityConfig cfg;
  cfg.h = 120.0;
  cfg.sample_size_k = 4;
  const auto index = roster_index(theta.roster);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto set = proximity_sample(theta, m, cfg, seed);
    CHECK(set.size() >= 2);
    CHECK(set.size() <= 4);
    std::set<std::string> unique;
    for (const auto& a : set) unique.insert(a.id);
    CHECK(unique.size() == set.size());
    for (std::size_t x = 0; x < set.size(); ++x) {
      for (std::size_t y = x + 1; y < set.size(); ++y) {
        const double gap = std::abs(theta.scores(index.at(set[x].id)) -
                                    theta.scores(index.at(set[y].id)));
        CHECK(gap < cfg.h);
      }
    }
  }
}

TEST_CASE("equal counts make the additional draw uniform") {
  const RatingVector theta = ladder(10, 1225.0, 50.0);
  auto m = zero_matrices(theta);
  m.counts.setConstant(5);
  m.counts.diagonal().setZero();
  m.wins = m.counts / 2;
  ProximityConfig cfg;
  cfg.h = 10000.0;  // everyone in range
  cfg.sample_size_k = 2;

  std::vector<std::int64_t> second_member(10, 0);
  Rng rng = make_rng(12345);
  const auto index = roster_index(theta.roster);
  const int draws = 20000;
  for (int k = 0; k < draws; ++k) {
    const auto set = proximity_sample(theta, m, cfg, rng);
    REQUIRE(set.size() == 2);
    second_member[index.at(set[1].id)] += 1;
  }
  // Marginal of the second member is uniform by symmetry; chi-square with
  // df = 9 at the 1% level.
  CHECK(chi_square_uniform(second_member) < 21.666);
}

TEST_CASE("sampling is reproducible per seed") {
  const RatingVector theta = ladder(12, 1300.0, 40.0);
  auto m = zero_matrices(theta);
  m.counts.setConstant(3);
  m.counts.diagonal().setZero();
  m.counts(2, 3) = m.counts(3, 2) = 9;
  m.wins = m.counts / 2;
  ProximityConfig cfg;
  cfg.h = 130.0;
  cfg.sample_size_k = 3;
  for (std::uint64_t seed : {1ULL, 99ULL, 31337ULL}) {
    const auto first = proximity_sample(theta, m, cfg, seed);
    const auto second = proximity_sample(theta, m, cfg, seed);
    REQUIRE(first.size() == second.size());
    for (std::size_t k = 0; k < first.size(); ++k) {
      CHECK(first[k].id == second[k].id);
    }
  }
}

TEST_CASE("midpoint opponents") {
  const RatingVector theta = ladder(20, 1475.0, 50.0);
  PlacementState state = make_placement_state("new", 20);
  // rank 10 is the 10th highest rating, index 9 on the ladder
  CHECK(next_placement_opponent(state, theta).id == "m9");
  state.lo = 5;
  state.hi = 6;
  CHECK(next_placement_opponent(state, theta).id == "m4");
  state.lo = 7;
  state.hi = 9;
  CHECK(next_placement_opponent(state, theta).id == "m7");
}

TEST_CASE("an exact 50% round stops immediately at the midpoint rating") {
  const RatingVector theta = ladder(20, 1475.0, 50.0);
  PlacementState state = make_placement_state("new", 20);
  const auto next = placement_step(state, theta, 5, 5, {});
  CHECK(next.finished);
  CHECK(next.rounds.size() == 1);
  // Opponent was rank 10 = index 9.
  CHECK(*next.final_rating == doctest::Approx(theta.scores(9)));
}

TEST_CASE("sweeping every round collapses to the top") {
  const RatingVector theta = ladder(20, 1475.0, 50.0);
  PlacementState state = make_placement_state("new", 20);
  int rounds = 0;
  while (!state.finished) {
    state = placement_step(state, theta, 10, 0, {});
    ++rounds;
    REQUIRE(rounds <= 20);
  }
  CHECK(rounds <= 5);  // ceil(log2(20)) = 5
  CHECK(state.lo == 1);
  // Undefeated: pinned to the bracket's top rating, not +infinity.
  CHECK(*state.final_rating == doctest::Approx(theta.scores(0)));
}

TEST_CASE("interval shrinks every non-terminal round") {
  const RatingVector theta = ladder(20, 1475.0, 50.0);
  Rng rng = make_rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    PlacementState state = make_placement_state("new", 20);
    int width = state.hi - state.lo + 1;
    int rounds = 0;
    while (!state.finished) {
      const int wins = static_cast<int>(uniform_index(rng, 11));
      state = placement_step(state, theta, wins, 10 - wins, {});
      ++rounds;
      if (!state.finished) {
        const int new_width = state.hi - state.lo + 1;
        CHECK(new_width < width);
        width = new_width;
      }
    }
    CHECK(rounds <= 6);  // ceil(log2(20)) + 1
  }
}

TEST_CASE("scheduler input validation") {
  const RatingVector theta = ladder(4, 1150.0, 50.0);
  const RatingVector other = ladder(5, 1200.0, 50.0);
  const auto m = zero_matrices(theta);
  CHECK_THROWS_AS(static_cast<void>(initial_weights(other, m, {})),
                  RosterMismatchError);
  ProximityConfig bad;
  bad.sample_size_k = 1;
  CHECK_THROWS_AS(static_cast<void>(initial_weights(theta, m, bad)),
                  ValidationError);
  const RatingVector lone = ladder(2, 1000.0, 50.0);
  ComparisonMatrices one;
  one.roster = {lone.roster[0]};
  one.counts = CountMatrix::Zero(1, 1);
  one.wins = CountMatrix::Zero(1, 1);
  RatingVector single;
  single.roster = {lone.roster[0]};
  single.scores = Eigen::VectorXd::Constant(1, 1000.0);
  single.gauge_anchor = 1000.0;
  CHECK_THROWS_AS(static_cast<void>(initial_weights(single, one, {})),
                  RosterTooSmallError);
}

TEST_CASE("placement session misuse") {
  const RatingVector theta = ladder(6, 1125.0, 50.0);
  PlacementState state = make_placement_state("new", 6);
  CHECK_THROWS_AS(
      static_cast<void>(placement_step(state, theta, 3, 3, {})),
      BadRoundTotalError);
  PlacementState done = placement_step(state, theta, 5, 5, {});
  CHECK(done.finished);
  CHECK_THROWS_AS(static_cast<void>(placement_step(done, theta, 5, 5, {})),
                  AlreadyFinishedError);
  CHECK_THROWS_AS(static_cast<void>(next_placement_opponent(done, theta)),
                  AlreadyFinishedError);
  CHECK_THROWS_AS(static_cast<void>(make_placement_state("new", 1)),
                  RosterTooSmallError);
}

TEST_CASE("placement recovers the true rank from simulated rounds") {
  // Small-scale version of the full Monte Carlo in the acceptance suite.
  const RatingVector theta = ladder(20, 2900.0, 100.0);
  Rng rng = make_rng(77);
  int within_two = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const double truth = 900.0 + 2100.0 * uniform01(rng);
    PlacementState state = make_placement_state("new", 20);
    while (!state.finished) {
      const ModelRef opp = next_placement_opponent(state, theta);
      const double u_opp = theta.scores(roster_index(theta.roster).at(opp.id));
      int wins = 0;
      for (int k = 0; k < 10; ++k) {
        if (bernoulli(rng, win_prob(truth, u_opp, kDefaultAlpha))) ++wins;
      }
      state = placement_step(state, theta, wins, 10 - wins, {});
    }
    auto rank_of = [&](double rating) {
      int rank = 1;
      for (int i = 0; i < theta.size(); ++i) {
        if (theta.scores(i) > rating) ++rank;
      }
      return rank;
    };
    if (std::abs(rank_of(*state.final_rating) - rank_of(truth)) <= 2) {
      ++within_two;
    }
  }
  CHECK(within_two >= 90);  // the acceptance suite pins >= 90% at 500 trials
}

TEST_SUITE_END();

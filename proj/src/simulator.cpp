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

#include "pairarena/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "pairarena/core.hpp"
#include "pairarena/graph.hpp"
#include "pairarena/information.hpp"

namespace pairarena {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t cell_seed(const SyntheticWorld& world, double h,
                        std::int64_t budget, int tag, std::uint64_t seed) {
  return derive_seed(world.seed ^ seed, std::bit_cast<std::uint64_t>(h),
                     static_cast<std::uint64_t>(budget),
                     static_cast<std::uint64_t>(tag));
}

}  // namespace

std::string strategy_name(SamplingStrategy s) {
  return s == SamplingStrategy::proximity ? "proximity" : "uniform";
}

SyntheticWorld make_world(int n_models, double lo, double hi,
                          std::uint64_t seed, double noise_fraction) {
  if (n_models < 2) throw RosterTooSmallError("need at least 2 models");
  if (!(lo < hi)) throw ValidationError("empty rating range");
  if (!(noise_fraction >= 0.0) || !(noise_fraction < 1.0)) {
    throw ValidationError("noise fraction must be in [0, 1)");
  }
  Rng rng = make_rng(derive_seed(seed, 0x901dc0ffeeULL));
  Eigen::VectorXd scores(n_models);
  for (int i = 0; i < n_models; ++i) {
    scores(i) = hi - (hi - lo) * uniform01(rng);  // (lo, hi]
  }
  std::sort(scores.data(), scores.data() + n_models, std::greater<double>());

  std::vector<ModelRef> roster;
  roster.reserve(n_models);
  char buf[16];
  for (int i = 0; i < n_models; ++i) {
    std::snprintf(buf, sizeof(buf), "m%03d", i);
    roster.emplace_back(buf);
  }
  SyntheticWorld world;
  world.golden = make_rating_vector(std::move(roster), std::move(scores));
  world.seed = seed;
  world.noise_fraction = noise_fraction;
  return world;
}

BattleRecord sample_outcome(const SyntheticWorld& world, int i, int j,
                            Rng& rng) {
  if (i == j) throw SelfBattleError("a model cannot battle itself");
  const double p = win_prob(world.golden.scores(i), world.golden.scores(j),
                            world.golden.alpha);
  BattleRecord rec;
  rec.model_a = world.golden.roster[i];
  rec.model_b = world.golden.roster[j];
  rec.outcome = bernoulli(rng, p) ? 1 : 0;
  rec.source = BattleSource::simulated;
  return rec;
}

std::vector<BattleRecord> generate_battles(const SyntheticWorld& world,
                                           SamplingStrategy strategy, double h,
                                           std::int64_t budget, Rng& rng) {
  if (budget < 1) throw ValidationError("budget must be at least 1");
  const int n = world.golden.size();
  std::vector<std::pair<int, int>> all_pairs;
  std::vector<std::pair<int, int>> near_pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      all_pairs.emplace_back(i, j);
      if (std::abs(world.golden.scores(i) - world.golden.scores(j)) < h) {
        near_pairs.emplace_back(i, j);
      }
    }
  }
  const bool proximity = strategy == SamplingStrategy::proximity;
  if (proximity && near_pairs.empty()) {
    throw EmptyProximitySetError("no pair has rating gap below the threshold");
  }

  // Exact noise share, spread across the stream.
  std::int64_t noise_count =
      proximity ? std::llround(world.noise_fraction *
                               static_cast<double>(budget))
                : 0;
  std::vector<char> noisy(budget, 0);
  std::fill(noisy.begin(), noisy.begin() + noise_count, 1);
  for (std::int64_t k = budget - 1; k > 0; --k) {
    std::swap(noisy[k], noisy[uniform_index(rng, k + 1)]);
  }

  std::vector<BattleRecord> records;
  records.reserve(budget);
  for (std::int64_t k = 0; k < budget; ++k) {
    const auto& pool = (proximity && !noisy[k]) ? near_pairs : all_pairs;
    const auto [i, j] =
        pool[uniform_index(rng, static_cast<std::int64_t>(pool.size()))];
    BattleRecord rec = sample_outcome(world, i, j, rng);
    rec.timestamp = k;
    records.push_back(std::move(rec));
  }
  return records;
}

SweepResult threshold_sweep(const SyntheticWorld& world,
                            const std::vector<double>& thresholds,
                            const std::vector<std::int64_t>& budgets,
                            const std::vector<SamplingStrategy>& strategies,
                            const std::vector<std::uint64_t>& seeds,
                            const SolverConfig& solver) {
  SweepResult result;
  for (double h : thresholds) {
    for (std::int64_t budget : budgets) {
      for (SamplingStrategy strategy : strategies) {
        for (std::uint64_t seed : seeds) {
          SweepRow row;
          row.h = h;
          row.budget = static_cast<double>(budget);
          row.strategy = strategy_name(strategy);
          row.seed = seed;
          try {
            Rng rng = make_rng(cell_seed(world, h, budget,
                                         static_cast<int>(strategy), seed));
            const auto records =
                generate_battles(world, strategy, h, budget, rng);
            const ComparisonMatrices matrices =
                build_matrices(records, world.golden.roster);
            row.connected = is_connected(matrices.counts);
            row.trace_inv_fim =
                row.connected
                    ? fisher_matrix(world.golden, matrices).trace_inv_fim
                    : kInf;
            const RatingVector fit = fit_bt_mle(matrices, solver);
            const RankMetrics metrics = rank_metrics(fit, world.golden);
            row.rmse = metrics.rmse;
            row.mse = metrics.rmse * metrics.rmse;
            row.kendall_tau = metrics.kendall_tau;
            row.spearman_rho = metrics.spearman_rho;
            row.avg_rank_diff = metrics.avg_rank_diff;
            row.solved = true;
          } catch (const Error& e) {
            row.solved = false;
            row.error = e.what();
          }
          result.rows.push_back(std::move(row));
        }
      }
    }
  }
  return result;
}

SweepResult fim_sweep(const SyntheticWorld& world,
                      const std::vector<double>& thresholds,
                      const std::vector<std::int64_t>& budgets,
                      FimSweepMode mode,
                      const std::vector<std::uint64_t>& seeds) {
  SweepResult result;
  const double a2 = world.golden.alpha * world.golden.alpha;
  const int n = world.golden.size();

  for (double h : thresholds) {
    for (std::int64_t budget : budgets) {
      for (std::uint64_t seed : seeds) {
        SweepRow row;
        row.h = h;
        row.budget = static_cast<double>(budget);
        row.strategy =
            mode == FimSweepMode::ideal ? "fim-ideal" : "fim-practical";
        row.seed = seed;
        try {
          if (mode == FimSweepMode::ideal) {
            const double trace =
                ideal_trace_pinv(world.golden, h, static_cast<double>(budget));
            row.connected = std::isfinite(trace);
            row.trace_inv_fim = trace / a2;  // inf stays inf
          } else {
            // Battle counts accumulated through sampling rounds with two
            // models per round.
            ProximityConfig cfg;
            cfg.h = h;
            cfg.sample_size_k = 2;
            ComparisonMatrices m;
            m.roster = world.golden.roster;
            m.counts = CountMatrix::Zero(n, n);
            m.wins = CountMatrix::Zero(n, n);
            Rng rng = make_rng(cell_seed(world, h, budget, 100, seed));
            const auto prox_sets =
                proximity_sets(world.golden.scores, cfg.h,
                               cfg.min_proximity_n_m);
            for (std::int64_t round = 0; round < budget; ++round) {
              const auto pair = proximity_sample_indices(
                  world.golden, m, cfg, prox_sets, rng);
              const int i = pair[0], j = pair[1];
              const double p = win_prob(world.golden.scores(i),
                                        world.golden.scores(j),
                                        world.golden.alpha);
              m.counts(i, j) += 1;
              m.counts(j, i) += 1;
              if (bernoulli(rng, p)) {
                m.wins(i, j) += 1;
              } else {
                m.wins(j, i) += 1;
              }
            }
            row.connected = is_connected(m.counts);
            row.trace_inv_fim =
                row.connected
                    ? fisher_matrix(world.golden, m).trace_inv_fim
                    : kInf;
          }
          row.solved = true;
        } catch (const Error& e) {
          row.solved = false;
          row.error = e.what();
        }
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

namespace {

// Rated-pool bookkeeping for the replay protocol.
struct RatedPool {
  std::vector<ModelRef> roster;
  std::vector<double> scores;
  std::unordered_map<std::string, int> index;

  bool contains(const std::string& id) const { return index.count(id) > 0; }
  int size() const { return static_cast<int>(roster.size()); }

  void add(const ModelRef& model, double rating) {
    index.emplace(model.id, size());
    roster.push_back(model);
    scores.push_back(rating);
  }

  RatingVector theta(double alpha) const {
    return make_rating_vector(
        roster, Eigen::Map<const Eigen::VectorXd>(scores.data(), size()),
        alpha);
  }
};

struct PlacementSession {
  PlacementState state;
  int wins = 0;
  int losses = 0;
  std::vector<BattleRecord> buffered;  // joins the data once placed
};

}  // namespace

ReplayResult replay_experiment(const std::vector<BattleRecord>& records,
                               const std::vector<ModelRef>& roster,
                               const ReplayConfig& cfg, std::uint64_t seed) {
  (void)seed;  // the protocol is deterministic given the stream
  if (records.empty()) throw ValidationError("empty record stream");
  if (!(cfg.cold_start_fraction > 0.0) || cfg.cold_start_fraction > 1.0) {
    throw ValidationError("cold start fraction must be in (0, 1]");
  }
  if (cfg.refit_interval < 1) {
    throw ValidationError("refit interval must be at least 1");
  }

  ReplayResult result;
  // Reference ratings come from the full dataset, before any filtering.
  const ComparisonMatrices full = build_matrices(records, roster);
  result.reference = fit_bt_mle(full, cfg.solver);

  const std::int64_t prefix_len = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::floor(cfg.cold_start_fraction *
                        static_cast<double>(records.size()))));

  // Cold start: fit the largest connected component of the prefix.
  std::vector<BattleRecord> prefix(records.begin(),
                                   records.begin() + prefix_len);
  const ComparisonMatrices prefix_matrices = build_matrices(prefix, roster);
  auto comps = connected_components(prefix_matrices.counts);
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  if (comps.empty() || comps.front().size() < 2) {
    throw ValidationError("cold start prefix holds no comparable models");
  }
  std::vector<int> component = comps.front();
  std::sort(component.begin(), component.end());
  std::unordered_set<std::string> in_component;
  for (int idx : component) in_component.insert(roster[idx].id);

  std::vector<ModelRef> pool_roster;
  for (int idx : component) pool_roster.push_back(roster[idx]);

  std::vector<BattleRecord> accumulated;
  for (const BattleRecord& rec : prefix) {
    if (in_component.count(rec.model_a.id) &&
        in_component.count(rec.model_b.id)) {
      accumulated.push_back(rec);
    } else {
      ++result.skipped;
    }
  }
  result.consumed_total = static_cast<std::int64_t>(accumulated.size());

  RatedPool pool;
  {
    const ComparisonMatrices m = build_matrices(accumulated, pool_roster);
    const RatingVector fit = fit_bt_mle(m, cfg.solver);
    for (int i = 0; i < fit.size(); ++i) {
      pool.add(fit.roster[i], fit.scores(i));
    }
  }

  const double alpha = cfg.solver.alpha;
  std::int64_t seen = prefix_len;
  std::int64_t last_refit_consumed = -1;

  auto golden_subset = [&](const RatedPool& p) {
    const auto ref_index = roster_index(result.reference.roster);
    Eigen::VectorXd gold(p.size());
    for (int i = 0; i < p.size(); ++i) {
      gold(i) = result.reference.scores(ref_index.at(p.roster[i].id));
    }
    return make_rating_vector(p.roster, gold, alpha);
  };

  auto refit = [&]() {
    try {
      const ComparisonMatrices m = build_matrices(accumulated, pool.roster);
      const RatingVector fit = fit_bt_mle(m, cfg.solver);
      for (int i = 0; i < fit.size(); ++i) {
        pool.scores[pool.index.at(fit.roster[i].id)] = fit.scores(i);
      }
      ReplayRefit point;
      point.seen = seen;
      point.consumed = result.consumed_total;
      point.rated_models = pool.size();
      point.vs_reference = rank_metrics(pool.theta(alpha), golden_subset(pool));
      result.timeline.push_back(point);
      result.final_ratings = pool.theta(alpha);
      last_refit_consumed = result.consumed_total;
    } catch (const NumericalError&) {
      // Keep the previous ratings and retry at the next interval.
    }
  };
  refit();  // the cold-start fit is the first timeline point

  std::unordered_map<std::string, PlacementSession> sessions;

  for (std::int64_t k = prefix_len;
       k < static_cast<std::int64_t>(records.size()); ++k) {
    if (cfg.max_consumed && result.consumed_total >= *cfg.max_consumed) break;
    const BattleRecord& rec = records[k];
    seen = k + 1;
    const bool a_rated = pool.contains(rec.model_a.id);
    const bool b_rated = pool.contains(rec.model_b.id);

    if (a_rated && b_rated) {
      if (cfg.strategy == SamplingStrategy::proximity) {
        const double gap = std::abs(pool.scores[pool.index.at(rec.model_a.id)] -
                                    pool.scores[pool.index.at(rec.model_b.id)]);
        if (gap >= cfg.h) {
          ++result.skipped;
          continue;
        }
      }
      accumulated.push_back(rec);
      ++result.consumed_total;
    } else if (a_rated != b_rated) {
      // One unrated model: route the record into its placement session if
      // it faces the required midpoint opponent.
      const ModelRef& newcomer = a_rated ? rec.model_b : rec.model_a;
      const ModelRef& opponent = a_rated ? rec.model_a : rec.model_b;
      const int newcomer_won = a_rated ? 1 - rec.outcome : rec.outcome;

      auto [it, created] = sessions.try_emplace(newcomer.id);
      PlacementSession& session = it->second;
      if (created) {
        session.state = make_placement_state(newcomer.id, pool.size());
      }
      const RatingVector pool_theta = pool.theta(alpha);
      const ModelRef required =
          next_placement_opponent(session.state, pool_theta);
      if (required.id != opponent.id) {
        ++result.skipped;
        continue;
      }
      session.wins += newcomer_won;
      session.losses += 1 - newcomer_won;
      session.buffered.push_back(rec);
      ++result.consumed_total;
      ++result.placement_consumed;

      if (session.wins + session.losses == cfg.placement.battles_per_round) {
        session.state = placement_step(session.state, pool_theta, session.wins,
                                       session.losses, cfg.placement);
        session.wins = 0;
        session.losses = 0;
        if (session.state.finished) {
          pool.add(newcomer, *session.state.final_rating);
          for (BattleRecord& buffered : session.buffered) {
            accumulated.push_back(std::move(buffered));
          }
          sessions.erase(it);
          ++result.placements_finished;
        }
      }
    } else {
      ++result.skipped;  // neither model rated yet
    }

    if (result.consumed_total - last_refit_consumed >= cfg.refit_interval) {
      refit();
    }
  }

  if (result.consumed_total != last_refit_consumed) refit();
  return result;
}

}  // namespace pairarena

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
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pairarena/analysis.hpp"
#include "pairarena/core.hpp"
#include "pairarena/disc.hpp"
#include "pairarena/information.hpp"
#include "pairarena/io.hpp"
#include "pairarena/rating.hpp"
#include "pairarena/scheduler.hpp"
#include "pairarena/simulator.hpp"

namespace {

using namespace pairarena;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;      // input / validation errors
constexpr int kExitNumerical = 3;  // disconnected graph, no finite maximizer

void report_rejections(const IngestResult& result) {
  if (result.rejected.empty()) return;
  std::cerr << result.rejected.size() << " line(s) rejected:\n";
  for (const Rejection& r : result.rejected) {
    std::cerr << "  line " << r.line << ": " << r.reason << "\n";
  }
}

std::vector<BattleRecord> ingest_or_die(const std::string& path) {
  IngestResult result = ingest(path);
  report_rejections(result);
  if (result.records.empty()) {
    throw ValidationError("no usable battles in " + path);
  }
  return std::move(result.records);
}

void print_leaderboard(const RatingVector& ratings,
                       const ComparisonMatrices& matrices) {
  std::vector<int> order(ratings.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ratings.scores(a) > ratings.scores(b);
  });
  std::cout << std::left << std::setw(6) << "rank" << std::setw(28) << "model"
            << std::right << std::setw(10) << "score" << std::setw(10)
            << "battles" << "\n";
  for (std::size_t r = 0; r < order.size(); ++r) {
    const int i = order[r];
    std::cout << std::left << std::setw(6) << r + 1 << std::setw(28)
              << ratings.roster[i].id << std::right << std::setw(10)
              << std::fixed << std::setprecision(1) << ratings.scores(i)
              << std::setw(10) << matrices.counts.row(i).sum() << "\n";
  }
}

std::string fingerprint(const std::string& text) {
  std::ostringstream os;
  os << std::hex << fnv1a64(text);
  return os.str();
}

// ---- rank ------------------------------------------------------------------

struct RankArgs {
  std::string log_path;
  std::string out = "pairarena-state.json";
  std::string ratings_csv;
  double regularization = 0.0;
  double tolerance = 1e-8;
  int max_iterations = 200;
  std::uint64_t seed = 42;
};

int run_rank(const RankArgs& args) {
  const auto records = ingest_or_die(args.log_path);
  const auto roster = roster_from_records(records);
  const auto matrices = build_matrices(records, roster);

  SolverConfig cfg;
  cfg.regularization = args.regularization;
  cfg.tolerance = args.tolerance;
  cfg.max_iterations = args.max_iterations;
  const RatingVector ratings = fit_bt_mle(matrices, cfg);

  print_leaderboard(ratings, matrices);

  std::ostringstream cfg_text;
  cfg_text << "rank reg=" << args.regularization << " tol=" << args.tolerance
           << " seed=" << args.seed;
  save_state(snapshot_now(ratings, matrices, fingerprint(cfg_text.str())),
             args.out);
  std::cout << "snapshot written to " << args.out << "\n";
  if (!args.ratings_csv.empty()) {
    write_ratings_csv(ratings, args.ratings_csv, cfg_text.str());
  }
  return kExitOk;
}

// ---- schedule ----------------------------------------------------------------

struct ScheduleArgs {
  std::string snapshot_path;
  ProximityConfig cfg;
  int rounds = 1;
  std::uint64_t seed = 42;
  std::string out;
};

int run_schedule(const ScheduleArgs& args) {
  const StateSnapshot state = load_state(args.snapshot_path);
  Rng rng = make_rng(args.seed);
  std::ofstream out_file;
  if (!args.out.empty()) {
    out_file.open(args.out);
    if (!out_file) throw IoError("cannot write " + args.out);
  }
  for (int round = 0; round < args.rounds; ++round) {
    const auto set =
        proximity_sample(state.ratings, state.matrices, args.cfg, rng);
    std::string line;
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k) line += ",";
      line += set[k].id;
    }
    std::cout << line << "\n";
    if (out_file) out_file << line << "\n";
  }
  return kExitOk;
}

// ---- place -------------------------------------------------------------------

struct PlaceArgs {
  std::string snapshot_path;
  std::string new_model;
  std::string results_path;
  PlacementConfig cfg;
  std::string out;
  std::uint64_t seed = 42;
};

int run_place(const PlaceArgs& args) {
  StateSnapshot state = load_state(args.snapshot_path);
  if (args.new_model.empty()) {
    throw ValidationError("--new-model is required");
  }
  for (const ModelRef& m : state.roster) {
    if (m.id == args.new_model) {
      throw ValidationError(args.new_model + " is already on the roster");
    }
  }

  auto session_it =
      std::find_if(state.placements.begin(), state.placements.end(),
                   [&](const PlacementState& p) {
                     return p.model_id == args.new_model;
                   });
  PlacementState session =
      session_it != state.placements.end()
          ? *session_it
          : make_placement_state(args.new_model, state.ratings.size());

  if (args.results_path.empty()) {
    const ModelRef opponent = next_placement_opponent(session, state.ratings);
    std::cout << "next opponent: " << opponent.id << " (play "
              << args.cfg.battles_per_round
              << " battles, then rerun with --results)\n";
  } else {
    std::ifstream in(args.results_path);
    if (!in) throw IoError("cannot read " + args.results_path);
    int wins = 0, losses = 0;
    while (in >> wins >> losses) {
      if (session.finished) {
        throw AlreadyFinishedError("placement already finished");
      }
      const ModelRef opponent =
          next_placement_opponent(session, state.ratings);
      session = placement_step(session, state.ratings, wins, losses, args.cfg);
      std::cout << "round " << session.rounds.size() << ": vs " << opponent.id
                << " " << wins << "-" << losses << " -> interval ["
                << session.lo << ", " << session.hi << "]\n";
    }
  }

  if (session.finished) {
    std::cout << args.new_model << " placed at rating "
              << std::setprecision(1) << std::fixed << *session.final_rating
              << "\n";
    // The placed model joins the roster with its initial rating and an
    // empty battle row.
    const int n = state.ratings.size();
    ModelRef placed(args.new_model);
    state.roster.push_back(placed);
    state.ratings.roster.push_back(placed);
    Eigen::VectorXd scores(n + 1);
    scores.head(n) = state.ratings.scores;
    scores(n) = *session.final_rating;
    state.ratings.scores = scores;
    state.ratings.gauge_anchor = scores.mean();
    state.matrices.roster.push_back(placed);
    CountMatrix counts = CountMatrix::Zero(n + 1, n + 1);
    counts.topLeftCorner(n, n) = state.matrices.counts;
    state.matrices.counts = counts;
    CountMatrix wins_m = CountMatrix::Zero(n + 1, n + 1);
    wins_m.topLeftCorner(n, n) = state.matrices.wins;
    state.matrices.wins = wins_m;
    if (session_it != state.placements.end()) {
      state.placements.erase(session_it);
    }
  } else {
    if (session_it != state.placements.end()) {
      *session_it = session;
    } else {
      state.placements.push_back(session);
    }
    if (!session.rounds.empty()) {
      std::cout << "session continues; next opponent: "
                << next_placement_opponent(session, state.ratings).id << "\n";
    }
  }

  const std::string out = args.out.empty() ? args.snapshot_path : args.out;
  save_state(state, out);
  std::cout << "snapshot written to " << out << "\n";
  return kExitOk;
}

// ---- simulate ----------------------------------------------------------------

struct SweepArgs {
  int models = 100;
  double lo = 400.0;
  double hi = 1400.0;
  double noise = 0.05;
  std::vector<double> thresholds = {50,  100, 150, 200, 300,
                                    400, 500, 700, 1000};
  std::vector<std::int64_t> budgets = {10000, 50000, 100000};
  std::vector<std::string> strategies = {"proximity"};
  int n_seeds = 5;
  std::uint64_t seed = 42;
  std::string out = "sweep_threshold.csv";
  std::string mode = "ideal";
};

std::vector<std::uint64_t> seed_list(std::uint64_t base, int n) {
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < n; ++k) seeds.push_back(derive_seed(base, k));
  return seeds;
}

std::string sweep_comment(const SweepArgs& args, const std::string& kind) {
  std::ostringstream os;
  os << kind << " models=" << args.models << " range=(" << args.lo << ","
     << args.hi << "] noise=" << args.noise << " seed=" << args.seed
     << " seeds=" << args.n_seeds;
  return os.str();
}

int run_sweep_threshold(const SweepArgs& args) {
  const SyntheticWorld world =
      make_world(args.models, args.lo, args.hi, args.seed, args.noise);
  std::vector<SamplingStrategy> strategies;
  for (const std::string& name : args.strategies) {
    if (name == "proximity") {
      strategies.push_back(SamplingStrategy::proximity);
    } else if (name == "uniform") {
      strategies.push_back(SamplingStrategy::uniform);
    } else {
      throw ValidationError("unknown strategy " + name);
    }
  }
  const SweepResult result =
      threshold_sweep(world, args.thresholds, args.budgets, strategies,
                      seed_list(args.seed, args.n_seeds));
  write_sweep_csv(result, args.out, sweep_comment(args, "sweep-threshold"));
  std::cout << result.rows.size() << " rows written to " << args.out << "\n";
  return kExitOk;
}

int run_sweep_fim(const SweepArgs& args) {
  const SyntheticWorld world =
      make_world(args.models, args.lo, args.hi, args.seed, args.noise);
  FimSweepMode mode;
  if (args.mode == "ideal") {
    mode = FimSweepMode::ideal;
  } else if (args.mode == "practical") {
    mode = FimSweepMode::practical;
  } else {
    throw ValidationError("mode must be ideal or practical");
  }
  const SweepResult result =
      fim_sweep(world, args.thresholds, args.budgets, mode,
                seed_list(args.seed, args.n_seeds));
  write_sweep_csv(result, args.out,
                  sweep_comment(args, "sweep-fim mode=" + args.mode));
  std::cout << result.rows.size() << " rows written to " << args.out << "\n";
  return kExitOk;
}

struct GenLogArgs {
  int models = 20;
  std::int64_t battles = 10000;
  double lo = 400.0;
  double hi = 1400.0;
  double noise = 0.05;
  double h = 1000.0;
  std::string strategy = "uniform";
  std::uint64_t seed = 42;
  std::string out = "battles.jsonl";
  std::string golden_csv;
};

int run_gen_log(const GenLogArgs& args) {
  const SyntheticWorld world =
      make_world(args.models, args.lo, args.hi, args.seed, args.noise);
  const SamplingStrategy strategy = args.strategy == "proximity"
                                        ? SamplingStrategy::proximity
                                        : SamplingStrategy::uniform;
  Rng rng = make_rng(derive_seed(args.seed, 0xb177135));
  const auto records =
      generate_battles(world, strategy, args.h, args.battles, rng);
  write_battle_log(records, args.out);
  std::cout << records.size() << " battles written to " << args.out << "\n";
  if (!args.golden_csv.empty()) {
    std::ostringstream comment;
    comment << "golden ratings, seed=" << args.seed;
    write_ratings_csv(world.golden, args.golden_csv, comment.str());
    std::cout << "golden ratings written to " << args.golden_csv << "\n";
  }
  return kExitOk;
}

struct ReplayArgs {
  std::string log_path;  // optional external dataset
  int models = 20;
  std::int64_t budget = 100000;
  double lo = 400.0;
  double hi = 1400.0;
  ReplayConfig cfg;
  std::string strategy = "proximity";
  std::uint64_t seed = 42;
  std::string out = "replay.csv";
};

int run_replay(const ReplayArgs& args) {
  ReplayConfig cfg = args.cfg;
  if (args.strategy == "proximity") {
    cfg.strategy = SamplingStrategy::proximity;
  } else if (args.strategy == "uniform") {
    cfg.strategy = SamplingStrategy::uniform;
  } else {
    throw ValidationError("unknown strategy " + args.strategy);
  }

  std::vector<BattleRecord> records;
  std::vector<ModelRef> roster;
  std::ostringstream comment;
  if (!args.log_path.empty()) {
    std::ifstream probe(args.log_path);
    if (!probe) {
      throw DatasetUnavailableError("replay dataset not readable: " +
                                    args.log_path);
    }
    records = ingest_or_die(args.log_path);
    roster = roster_from_records(records);
    comment << "replay log=" << args.log_path;
  } else {
    const SyntheticWorld world =
        make_world(args.models, args.lo, args.hi, args.seed);
    Rng rng = make_rng(derive_seed(args.seed, 0x5eedf00d));
    records = generate_battles(world, SamplingStrategy::uniform, 0.0,
                               args.budget, rng);
    roster = world.golden.roster;
    comment << "replay synthetic models=" << args.models
            << " budget=" << args.budget;
  }
  comment << " strategy=" << args.strategy << " h=" << cfg.h
          << " cold=" << cfg.cold_start_fraction
          << " refit=" << cfg.refit_interval << " seed=" << args.seed;

  const ReplayResult result =
      replay_experiment(records, roster, cfg, args.seed);
  write_replay_csv(result, args.out, comment.str());
  const RankMetrics& last = result.timeline.back().vs_reference;
  std::cout << "refits: " << result.timeline.size()
            << ", consumed: " << result.consumed_total
            << " (placement " << result.placement_consumed << ", skipped "
            << result.skipped << ")\n"
            << "final vs reference: tau " << last.kendall_tau << ", rho "
            << last.spearman_rho << ", rmse " << last.rmse << "\n"
            << "timeline written to " << args.out << "\n";
  return kExitOk;
}

// ---- disc-fit ----------------------------------------------------------------

struct DiscArgs {
  std::string log_path;
  int iterations = 4000;
  double learning_rate = 8.0;
  std::int64_t min_pair_battles = 0;
  std::uint64_t seed = 42;
  std::string out;
};

int run_disc(const DiscArgs& args) {
  const auto records = ingest_or_die(args.log_path);
  const auto roster = roster_from_records(records);
  ComparisonMatrices matrices = build_matrices(records, roster);
  if (args.min_pair_battles > 0) {
    // Drop thin edges, keep all models; connectivity is re-checked by the
    // fit.
    for (int i = 0; i < matrices.size(); ++i) {
      for (int j = 0; j < matrices.size(); ++j) {
        if (i != j && matrices.counts(i, j) <= args.min_pair_battles) {
          matrices.counts(i, j) = 0;
          matrices.wins(i, j) = 0;
          matrices.wins(j, i) = 0;
          matrices.counts(j, i) = 0;
        }
      }
    }
  }
  const DiscScores scores =
      fit_disc(matrices, args.iterations, args.learning_rate, args.seed);
  const TransitivityReport report = transitivity_report(scores);

  std::cout << std::left << std::setw(28) << "model" << std::right
            << std::setw(12) << "u" << std::setw(12) << "v" << "\n";
  for (int i = 0; i < static_cast<int>(scores.roster.size()); ++i) {
    std::cout << std::left << std::setw(28) << scores.roster[i].id
              << std::right << std::setw(12) << std::fixed
              << std::setprecision(4) << scores.u(i) << std::setw(12)
              << scores.v(i) << "\n";
  }
  std::cout << "final loss " << std::setprecision(6) << scores.final_loss
            << "\nmean(v) " << report.mean_v << ", std(v) " << report.std_v
            << ", dispersion " << report.dispersion << "\n"
            << (report.u_dominant
                    ? "structure is transitive (one dominant axis)"
                    : "structure shows cyclic components")
            << "\n";

  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw IoError("cannot write " + args.out);
    out << std::setprecision(17);
    out << "# disc-fit iterations=" << args.iterations
        << " lr=" << args.learning_rate << " seed=" << args.seed
        << " min_pair_battles=" << args.min_pair_battles << "\n";
    out << "model,u,v\n";
    for (int i = 0; i < static_cast<int>(scores.roster.size()); ++i) {
      out << scores.roster[i].id << ',' << scores.u(i) << ',' << scores.v(i)
          << "\n";
    }
  }
  return kExitOk;
}

// ---- bootstrap ---------------------------------------------------------------

struct BootstrapArgs {
  std::string log_path;
  std::string baseline_log;
  int rounds = 100;
  std::uint64_t seed = 42;
  std::string out = "bootstrap.csv";
};

int run_bootstrap(const BootstrapArgs& args) {
  const auto records = ingest_or_die(args.log_path);
  const auto roster = roster_from_records(records);
  const auto primary = bootstrap_variance(records, roster, "proximity",
                                          args.rounds, args.seed);

  BootstrapReport report;
  std::ostringstream comment;
  comment << "bootstrap rounds=" << args.rounds << " seed=" << args.seed
          << " log=" << args.log_path;
  if (!args.baseline_log.empty()) {
    const auto baseline_records = ingest_or_die(args.baseline_log);
    const auto baseline = bootstrap_variance(baseline_records, roster,
                                             "uniform", args.rounds, args.seed);
    report = make_bootstrap_report(primary, baseline);
    comment << " baseline=" << args.baseline_log;
    std::cout << "mean variance reduction (uniform - proximity): "
              << report.mean_variance_reduction << "\n";
  } else {
    report.rounds = primary.rounds;
    report.roster = primary.roster;
    report.strategies[primary.label] = primary;
  }
  if (primary.redraws > 0) {
    std::cout << primary.redraws
              << " disconnected resample(s) were redrawn\n";
  }
  write_bootstrap_csv(report, args.out, comment.str());
  std::cout << "per-model variances written to " << args.out << "\n";
  return kExitOk;
}

// ---- metrics -----------------------------------------------------------------

struct MetricsArgs {
  std::string estimated_path;
  std::string golden_path;
  std::string out;
  std::uint64_t seed = 42;
};

int run_metrics(const MetricsArgs& args) {
  const RatingVector estimated = read_ratings_csv(args.estimated_path);
  const RatingVector golden = read_ratings_csv(args.golden_path);
  const RankMetrics m = rank_metrics(estimated, golden);
  std::cout << "spearman_rho  " << m.spearman_rho << "\n"
            << "kendall_tau   " << m.kendall_tau << "\n"
            << "avg_rank_diff " << m.avg_rank_diff << "\n"
            << "rmse          " << m.rmse << "\n";
  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw IoError("cannot write " + args.out);
    out << std::setprecision(17);
    out << "# metrics estimated=" << args.estimated_path
        << " golden=" << args.golden_path << "\n";
    out << "spearman_rho,kendall_tau,avg_rank_diff,rmse\n";
    out << m.spearman_rho << ',' << m.kendall_tau << ',' << m.avg_rank_diff
        << ',' << m.rmse << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise-comparison leaderboard engine"};
  app.require_subcommand(1);

  RankArgs rank_args;
  auto* rank_cmd =
      app.add_subcommand("rank", "ingest a battle log and fit the leaderboard");
  rank_cmd->add_option("log", rank_args.log_path, "JSONL battle log")
      ->required();
  rank_cmd->add_option("--out", rank_args.out, "snapshot output path");
  rank_cmd->add_option("--ratings-csv", rank_args.ratings_csv,
                       "also write the fitted ratings as CSV");
  rank_cmd->add_option("--reg", rank_args.regularization,
                       "pseudo-count added to every observed pair");
  rank_cmd->add_option("--tolerance", rank_args.tolerance,
                       "gradient max-norm stop");
  rank_cmd->add_option("--max-iter", rank_args.max_iterations,
                       "iteration cap");
  rank_cmd->add_option("--seed", rank_args.seed, "run seed");

  ScheduleArgs schedule_args;
  auto* schedule_cmd =
      app.add_subcommand("schedule", "emit the next battle set(s)");
  schedule_cmd
      ->add_option("snapshot", schedule_args.snapshot_path, "state snapshot")
      ->required();
  schedule_cmd->add_option("--k", schedule_args.cfg.sample_size_k,
                           "models per battle round");
  schedule_cmd->add_option("--threshold", schedule_args.cfg.h,
                           "proximity threshold (rating units)");
  schedule_cmd->add_option("--tau", schedule_args.cfg.tau,
                           "softmax temperature");
  schedule_cmd->add_option("--n-m", schedule_args.cfg.min_proximity_n_m,
                           "minimum proximity set size");
  schedule_cmd->add_option("--rounds", schedule_args.rounds,
                           "number of battle sets to emit");
  schedule_cmd->add_option("--seed", schedule_args.seed, "run seed");
  schedule_cmd->add_option("--out", schedule_args.out,
                           "also write the sets to this file");

  PlaceArgs place_args;
  auto* place_cmd =
      app.add_subcommand("place", "drive a placement session for a new model");
  place_cmd->add_option("snapshot", place_args.snapshot_path, "state snapshot")
      ->required();
  place_cmd->add_option("--new-model", place_args.new_model, "new model id")
      ->required();
  place_cmd->add_option("--t", place_args.cfg.battles_per_round,
                        "battles per round");
  place_cmd->add_option("--results", place_args.results_path,
                        "file of per-round results: 'wins losses' per line");
  place_cmd->add_option("--winrate-band", place_args.cfg.winrate_band,
                        "early-stop band around 50%");
  place_cmd->add_option("--min-interval", place_args.cfg.min_interval,
                        "terminate when fewer models remain");
  place_cmd->add_option("--out", place_args.out,
                        "updated snapshot path (default: in place)");
  place_cmd->add_option("--seed", place_args.seed, "run seed");

  auto* simulate_cmd =
      app.add_subcommand("simulate", "synthetic experiment protocols");
  simulate_cmd->require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep_threshold_cmd = simulate_cmd->add_subcommand(
      "sweep-threshold", "rating recovery vs proximity threshold");
  SweepArgs fim_args;
  fim_args.lo = 0.0;
  fim_args.hi = 1000.0;
  fim_args.noise = 0.0;
  fim_args.thresholds = {100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
  fim_args.budgets = {10000, 100000, 1000000};
  fim_args.n_seeds = 1;
  fim_args.out = "sweep_fim.csv";
  auto* sweep_fim_cmd = simulate_cmd->add_subcommand(
      "sweep-fim", "total estimator variance vs proximity threshold");
  for (auto& [cmd, args] :
       std::vector<std::pair<CLI::App*, SweepArgs*>>{
           {sweep_threshold_cmd, &sweep_args}, {sweep_fim_cmd, &fim_args}}) {
    cmd->add_option("--models", args->models, "synthetic roster size");
    cmd->add_option("--lo", args->lo, "rating range lower bound (open)");
    cmd->add_option("--hi", args->hi, "rating range upper bound (closed)");
    cmd->add_option("--noise", args->noise,
                    "fraction of battles drawn outside the threshold");
    cmd->add_option("--thresholds", args->thresholds, "threshold grid");
    cmd->add_option("--budgets", args->budgets, "total battle budgets");
    cmd->add_option("--seeds", args->n_seeds, "replicates per cell");
    cmd->add_option("--seed", args->seed, "base seed");
    cmd->add_option("--out", args->out, "CSV output path");
  }
  sweep_threshold_cmd->add_option("--strategies", sweep_args.strategies,
                                  "proximity and/or uniform");
  sweep_fim_cmd->add_option("--mode", fim_args.mode, "ideal or practical");

  GenLogArgs gen_args;
  auto* gen_cmd = simulate_cmd->add_subcommand(
      "gen-log", "write a synthetic battle log (and optional golden CSV)");
  gen_cmd->add_option("--models", gen_args.models, "synthetic roster size");
  gen_cmd->add_option("--battles", gen_args.battles, "number of battles");
  gen_cmd->add_option("--lo", gen_args.lo, "rating range lower bound");
  gen_cmd->add_option("--hi", gen_args.hi, "rating range upper bound");
  gen_cmd->add_option("--noise", gen_args.noise, "out-of-threshold fraction");
  gen_cmd->add_option("--threshold", gen_args.h, "proximity threshold");
  gen_cmd->add_option("--strategy", gen_args.strategy,
                      "proximity or uniform");
  gen_cmd->add_option("--seed", gen_args.seed, "world seed");
  gen_cmd->add_option("--out", gen_args.out, "JSONL output path");
  gen_cmd->add_option("--golden-csv", gen_args.golden_csv,
                      "also write the golden ratings");

  ReplayArgs replay_args;
  auto* replay_cmd = simulate_cmd->add_subcommand(
      "replay", "chronological replay with placement and refits");
  replay_cmd->add_option("--log", replay_args.log_path,
                         "external battle log (chronological); synthetic "
                         "stream when omitted");
  replay_cmd->add_option("--models", replay_args.models,
                         "synthetic roster size");
  replay_cmd->add_option("--budget", replay_args.budget,
                         "synthetic stream length");
  replay_cmd->add_option("--cold-fraction",
                         replay_args.cfg.cold_start_fraction,
                         "leading fraction used for the cold start");
  replay_cmd->add_option("--refit-interval", replay_args.cfg.refit_interval,
                         "consumed records between refits");
  replay_cmd->add_option("--strategy", replay_args.strategy,
                         "proximity or uniform");
  replay_cmd->add_option("--threshold", replay_args.cfg.h, "proximity filter width");
  replay_cmd->add_option("--t",
                         replay_args.cfg.placement.battles_per_round,
                         "placement battles per round");
  replay_cmd->add_option("--max-consumed", replay_args.cfg.max_consumed,
                         "stop after this many consumed records");
  replay_cmd->add_option("--seed", replay_args.seed, "run seed");
  replay_cmd->add_option("--out", replay_args.out, "CSV output path");

  DiscArgs disc_args;
  auto* disc_cmd = app.add_subcommand(
      "disc-fit", "two-dimensional score fit and transitivity report");
  disc_cmd->add_option("log", disc_args.log_path, "JSONL battle log")
      ->required();
  disc_cmd->add_option("--iterations", disc_args.iterations,
                       "gradient steps");
  disc_cmd->add_option("--lr", disc_args.learning_rate, "step size");
  disc_cmd->add_option("--min-pair-battles", disc_args.min_pair_battles,
                       "drop pairs with at most this many battles");
  disc_cmd->add_option("--seed", disc_args.seed, "init seed");
  disc_cmd->add_option("--out", disc_args.out, "CSV of fitted (u, v)");

  BootstrapArgs bootstrap_args;
  auto* bootstrap_cmd = app.add_subcommand(
      "bootstrap", "rating stability via bootstrap resampling");
  bootstrap_cmd->add_option("log", bootstrap_args.log_path, "JSONL battle log")
      ->required();
  bootstrap_cmd->add_option("--rounds", bootstrap_args.rounds,
                            "bootstrap rounds");
  bootstrap_cmd->add_option("--baseline-log", bootstrap_args.baseline_log,
                            "uniform-sampling log to compare against");
  bootstrap_cmd->add_option("--seed", bootstrap_args.seed, "resampling seed");
  bootstrap_cmd->add_option("--out", bootstrap_args.out, "CSV output path");

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "rank agreement between two rating files");
  metrics_cmd
      ->add_option("estimated", metrics_args.estimated_path,
                   "estimated ratings CSV")
      ->required();
  metrics_cmd
      ->add_option("golden", metrics_args.golden_path, "golden ratings CSV")
      ->required();
  metrics_cmd->add_option("--out", metrics_args.out, "CSV output path");
  metrics_cmd->add_option("--seed", metrics_args.seed, "run seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (rank_cmd->parsed()) return run_rank(rank_args);
    if (schedule_cmd->parsed()) return run_schedule(schedule_args);
    if (place_cmd->parsed()) return run_place(place_args);
    if (simulate_cmd->parsed()) {
      if (sweep_threshold_cmd->parsed()) return run_sweep_threshold(sweep_args);
      if (sweep_fim_cmd->parsed()) return run_sweep_fim(fim_args);
      if (gen_cmd->parsed()) return run_gen_log(gen_args);
      if (replay_cmd->parsed()) return run_replay(replay_args);
    }
    if (disc_cmd->parsed()) return run_disc(disc_args);
    if (bootstrap_cmd->parsed()) return run_bootstrap(bootstrap_args);
    if (metrics_cmd->parsed()) return run_metrics(metrics_args);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

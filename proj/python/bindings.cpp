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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairarena/analysis.hpp"
#include "pairarena/core.hpp"
#include "pairarena/disc.hpp"
#include "pairarena/information.hpp"
#include "pairarena/io.hpp"
#include "pairarena/rating.hpp"
#include "pairarena/scheduler.hpp"
#include "pairarena/simulator.hpp"

namespace py = pybind11;
using namespace pairarena;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pairwise-comparison leaderboard engine";

  const auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<NumericalError>(m, "NumericalError", error);

  m.attr("DEFAULT_ALPHA") = kDefaultAlpha;
  m.attr("DEFAULT_GAUGE_ANCHOR") = kDefaultGaugeAnchor;
  m.attr("ELO_LAMBDA") = kEloLambda;

  // ---- core types ----------------------------------------------------------

  py::class_<ModelRef>(m, "ModelRef")
      .def(py::init<std::string>(), py::arg("id"))
      .def(py::init<std::string, std::string>(), py::arg("id"),
           py::arg("display_name"))
      .def_readwrite("id", &ModelRef::id)
      .def_readwrite("display_name", &ModelRef::display_name)
      .def("__eq__",
           [](const ModelRef& a, const ModelRef& b) { return a == b; })
      .def("__repr__", [](const ModelRef& r) {
        return "ModelRef('" + r.id + "')";
      });

  py::enum_<BattleSource>(m, "BattleSource")
      .value("live", BattleSource::live)
      .value("simulated", BattleSource::simulated)
      .value("replay", BattleSource::replay);

  py::class_<BattleRecord>(m, "BattleRecord")
      .def(py::init([](ModelRef a, ModelRef b, int outcome,
                       std::int64_t timestamp, BattleSource source,
                       bool valid) {
             BattleRecord rec;
             rec.model_a = std::move(a);
             rec.model_b = std::move(b);
             rec.outcome = outcome;
             rec.timestamp = timestamp;
             rec.source = source;
             rec.valid = valid;
             return rec;
           }),
           py::arg("model_a"), py::arg("model_b"), py::arg("outcome"),
           py::arg("timestamp") = 0,
           py::arg("source") = BattleSource::live, py::arg("valid") = true)
      .def_readwrite("model_a", &BattleRecord::model_a)
      .def_readwrite("model_b", &BattleRecord::model_b)
      .def_readwrite("outcome", &BattleRecord::outcome)
      .def_readwrite("timestamp", &BattleRecord::timestamp)
      .def_readwrite("source", &BattleRecord::source)
      .def_readwrite("valid", &BattleRecord::valid);

  py::class_<ComparisonMatrices>(m, "ComparisonMatrices")
      .def_readonly("roster", &ComparisonMatrices::roster)
      .def_property_readonly(
          "counts",
          [](const ComparisonMatrices& m_) { return m_.counts; })
      .def_property_readonly(
          "wins", [](const ComparisonMatrices& m_) { return m_.wins; })
      .def("total_battles", &ComparisonMatrices::total_battles)
      .def("__len__", &ComparisonMatrices::size);

  py::class_<RatingVector>(m, "RatingVector")
      .def_readonly("roster", &RatingVector::roster)
      .def_property_readonly(
          "scores", [](const RatingVector& r) { return r.scores; })
      .def_readonly("alpha", &RatingVector::alpha)
      .def_readonly("gauge_anchor", &RatingVector::gauge_anchor)
      .def("__len__", &RatingVector::size);

  py::class_<PayoffMatrix>(m, "PayoffMatrix")
      .def_property_readonly(
          "values", [](const PayoffMatrix& p) { return p.values; })
      .def_property_readonly(
          "defined",
          [](const PayoffMatrix& p) {
            return Eigen::MatrixXi(p.defined.cast<int>());
          })
      .def("at", [](const PayoffMatrix& p, int i, int j) {
        return p.at(i, j);
      });

  m.def("make_rating_vector", &make_rating_vector, py::arg("roster"),
        py::arg("scores"), py::arg("alpha") = kDefaultAlpha,
        "Rating vector anchored at the mean of the given scores.");
  m.def("build_matrices", &build_matrices, py::arg("records"),
        py::arg("roster"));
  m.def("payoff", &payoff, py::arg("matrices"));
  m.def("roster_from_records", &roster_from_records, py::arg("records"));

  // ---- ratings ---------------------------------------------------------------

  py::class_<EloConfig>(m, "EloConfig")
      .def(py::init([](double k_factor, double lambda_scale,
                       bool symmetric_update) {
             return EloConfig{k_factor, lambda_scale, symmetric_update};
           }),
           py::arg("k_factor") = 32.0, py::arg("lambda_scale") = 400.0,
           py::arg("symmetric_update") = true)
      .def_readwrite("k_factor", &EloConfig::k_factor)
      .def_readwrite("lambda_scale", &EloConfig::lambda_scale)
      .def_readwrite("symmetric_update", &EloConfig::symmetric_update);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](double alpha, int max_iterations, double tolerance,
                       double regularization) {
             return SolverConfig{alpha, max_iterations, tolerance,
                                 regularization};
           }),
           py::arg("alpha") = kDefaultAlpha, py::arg("max_iterations") = 200,
           py::arg("tolerance") = 1e-8, py::arg("regularization") = 0.0)
      .def_readwrite("alpha", &SolverConfig::alpha)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations)
      .def_readwrite("tolerance", &SolverConfig::tolerance)
      .def_readwrite("regularization", &SolverConfig::regularization);

  m.def("win_prob", &win_prob, py::arg("u_i"), py::arg("u_j"),
        py::arg("alpha") = kDefaultAlpha);
  m.def("elo_update", &elo_update, py::arg("u_i"), py::arg("u_j"),
        py::arg("outcome"), py::arg("config") = EloConfig{});
  m.def("bt_log_likelihood", &bt_log_likelihood, py::arg("matrices"),
        py::arg("theta"));
  m.def("bt_gradient", &bt_gradient, py::arg("matrices"), py::arg("theta"));
  m.def("fit_bt_mle", &fit_bt_mle, py::arg("matrices"),
        py::arg("config") = SolverConfig{},
        py::arg("gauge_anchor") = kDefaultGaugeAnchor);

  // ---- information ------------------------------------------------------------

  py::class_<InformationSummary>(m, "InformationSummary")
      .def_property_readonly(
          "fim", [](const InformationSummary& s) { return s.fim; })
      .def_property_readonly(
          "laplacian",
          [](const InformationSummary& s) { return s.laplacian; })
      .def_readonly("connected", &InformationSummary::connected)
      .def_readonly("null_dim", &InformationSummary::null_dim)
      .def_readonly("trace_pinv", &InformationSummary::trace_pinv)
      .def_readonly("trace_inv_fim", &InformationSummary::trace_inv_fim)
      .def_readonly("alpha", &InformationSummary::alpha);

  py::class_<DeltaPhiEntry>(m, "DeltaPhiEntry")
      .def_readonly("breakpoint", &DeltaPhiEntry::breakpoint)
      .def_readonly("pairs_added", &DeltaPhiEntry::pairs_added)
      .def_readonly("benefit", &DeltaPhiEntry::benefit)
      .def_readonly("cost", &DeltaPhiEntry::cost)
      .def_readonly("approx_delta_phi", &DeltaPhiEntry::approx_delta_phi)
      .def_readonly("actual_delta_phi", &DeltaPhiEntry::actual_delta_phi)
      .def_readonly("phi_below", &DeltaPhiEntry::phi_below)
      .def_readonly("phi_above", &DeltaPhiEntry::phi_above)
      .def_readonly("connected_below", &DeltaPhiEntry::connected_below);

  py::class_<DeltaPhiReport>(m, "DeltaPhiReport")
      .def_readonly("entries", &DeltaPhiReport::entries);

  m.def("fisher_matrix", &fisher_matrix, py::arg("theta"),
        py::arg("matrices"));
  m.def("fisher_from_counts", &fisher_from_counts, py::arg("theta"),
        py::arg("counts"));
  m.def("fim_vs_hessian_check", &fim_vs_hessian_check, py::arg("theta"),
        py::arg("matrices"), py::arg("step") = 1e-3);
  m.def("ideal_allocation", &ideal_allocation, py::arg("theta"),
        py::arg("threshold"), py::arg("budget"));
  m.def("rating_gap_breakpoints", &rating_gap_breakpoints, py::arg("theta"));
  m.def("delta_phi_decomposition", &delta_phi_decomposition, py::arg("theta"),
        py::arg("budget"), py::arg("breakpoint_index"));
  m.def("delta_phi_report", &delta_phi_report, py::arg("theta"),
        py::arg("budget"));
  m.def("ideal_trace_pinv", &ideal_trace_pinv, py::arg("theta"),
        py::arg("threshold"), py::arg("budget"));

  // ---- scheduler ----------------------------------------------------------------

  py::class_<ProximityConfig>(m, "ProximityConfig")
      .def(py::init([](double h, double tau, int sample_size_k,
                       int min_proximity_n_m) {
             return ProximityConfig{h, tau, sample_size_k, min_proximity_n_m};
           }),
           py::arg("h") = 150.0, py::arg("tau") = 1.0,
           py::arg("sample_size_k") = 2, py::arg("min_proximity_n_m") = 3)
      .def_readwrite("h", &ProximityConfig::h)
      .def_readwrite("tau", &ProximityConfig::tau)
      .def_readwrite("sample_size_k", &ProximityConfig::sample_size_k)
      .def_readwrite("min_proximity_n_m", &ProximityConfig::min_proximity_n_m);

  py::class_<PlacementConfig>(m, "PlacementConfig")
      .def(py::init([](int battles_per_round, double winrate_band,
                       int min_interval) {
             return PlacementConfig{battles_per_round, winrate_band,
                                    min_interval};
           }),
           py::arg("battles_per_round") = 10, py::arg("winrate_band") = 0.05,
           py::arg("min_interval") = 3)
      .def_readwrite("battles_per_round", &PlacementConfig::battles_per_round)
      .def_readwrite("winrate_band", &PlacementConfig::winrate_band)
      .def_readwrite("min_interval", &PlacementConfig::min_interval);

  py::class_<PlacementRound>(m, "PlacementRound")
      .def_readonly("opponent", &PlacementRound::opponent)
      .def_readonly("wins", &PlacementRound::wins)
      .def_readonly("losses", &PlacementRound::losses);

  py::class_<PlacementState>(m, "PlacementState")
      .def_readonly("model_id", &PlacementState::model_id)
      .def_readonly("lo", &PlacementState::lo)
      .def_readonly("hi", &PlacementState::hi)
      .def_readonly("rounds", &PlacementState::rounds)
      .def_readonly("finished", &PlacementState::finished)
      .def_readonly("final_rating", &PlacementState::final_rating);

  m.def("make_placement_state", &make_placement_state, py::arg("model_id"),
        py::arg("roster_size"));
  m.def("initial_weights", &initial_weights, py::arg("theta"),
        py::arg("matrices"), py::arg("config") = ProximityConfig{});
  m.def(
      "proximity_sample",
      [](const RatingVector& theta, const ComparisonMatrices& matrices,
         const ProximityConfig& cfg, std::uint64_t seed) {
        return proximity_sample(theta, matrices, cfg, seed);
      },
      py::arg("theta"), py::arg("matrices"),
      py::arg("config") = ProximityConfig{}, py::arg("seed") = 0);
  m.def("next_placement_opponent", &next_placement_opponent, py::arg("state"),
        py::arg("theta"));
  m.def("placement_step", &placement_step, py::arg("state"), py::arg("theta"),
        py::arg("wins"), py::arg("losses"),
        py::arg("config") = PlacementConfig{});

  // ---- disc ----------------------------------------------------------------------

  py::class_<DiscScores>(m, "DiscScores")
      .def_readonly("roster", &DiscScores::roster)
      .def_property_readonly("u",
                             [](const DiscScores& s) { return s.u; })
      .def_property_readonly("v",
                             [](const DiscScores& s) { return s.v; })
      .def_readonly("final_loss", &DiscScores::final_loss)
      .def_readonly("iterations", &DiscScores::iterations)
      .def_readonly("loss_checkpoints", &DiscScores::loss_checkpoints);

  py::class_<TransitivityReport>(m, "TransitivityReport")
      .def_readonly("mean_v", &TransitivityReport::mean_v)
      .def_readonly("std_v", &TransitivityReport::std_v)
      .def_readonly("dispersion", &TransitivityReport::dispersion)
      .def_readonly("u_dominant", &TransitivityReport::u_dominant);

  m.def("fit_disc", &fit_disc, py::arg("matrices"),
        py::arg("iterations") = 4000, py::arg("learning_rate") = 8.0,
        py::arg("seed") = 0);
  m.def("disc_loss", &disc_loss, py::arg("matrices"), py::arg("u"),
        py::arg("v"));
  m.def("transitivity_report", &transitivity_report, py::arg("scores"));

  // ---- analysis ------------------------------------------------------------------

  py::class_<RankMetrics>(m, "RankMetrics")
      .def_readonly("spearman_rho", &RankMetrics::spearman_rho)
      .def_readonly("kendall_tau", &RankMetrics::kendall_tau)
      .def_readonly("avg_rank_diff", &RankMetrics::avg_rank_diff)
      .def_readonly("rmse", &RankMetrics::rmse);

  py::class_<StrategyBootstrap>(m, "StrategyBootstrap")
      .def_readonly("label", &StrategyBootstrap::label)
      .def_readonly("roster", &StrategyBootstrap::roster)
      .def_readonly("rounds", &StrategyBootstrap::rounds)
      .def_readonly("redraws", &StrategyBootstrap::redraws)
      .def_property_readonly(
          "mean", [](const StrategyBootstrap& s) { return s.mean; })
      .def_property_readonly(
          "variance", [](const StrategyBootstrap& s) { return s.variance; })
      .def_property_readonly(
          "samples", [](const StrategyBootstrap& s) { return s.samples; });

  py::class_<BootstrapReport>(m, "BootstrapReport")
      .def_readonly("rounds", &BootstrapReport::rounds)
      .def_readonly("roster", &BootstrapReport::roster)
      .def_readonly("strategies", &BootstrapReport::strategies)
      .def_property_readonly(
          "variance_reduction",
          [](const BootstrapReport& r) { return r.variance_reduction; })
      .def_readonly("mean_variance_reduction",
                    &BootstrapReport::mean_variance_reduction);

  m.def("kendall_tau_b", &kendall_tau_b, py::arg("x"), py::arg("y"));
  m.def("spearman_rho", &spearman_rho, py::arg("x"), py::arg("y"));
  m.def("average_ranks_desc", &average_ranks_desc, py::arg("values"));
  m.def("rank_metrics", &rank_metrics, py::arg("estimated"),
        py::arg("golden"));
  m.def("bootstrap_variance", &bootstrap_variance, py::arg("records"),
        py::arg("roster"), py::arg("label"), py::arg("rounds") = 100,
        py::arg("seed") = 0, py::arg("solver") = SolverConfig{});
  m.def("make_bootstrap_report", &make_bootstrap_report, py::arg("proximity"),
        py::arg("uniform"));

  // ---- simulator ----------------------------------------------------------------

  py::enum_<SamplingStrategy>(m, "SamplingStrategy")
      .value("proximity", SamplingStrategy::proximity)
      .value("uniform", SamplingStrategy::uniform);

  py::enum_<FimSweepMode>(m, "FimSweepMode")
      .value("ideal", FimSweepMode::ideal)
      .value("practical", FimSweepMode::practical);

  py::class_<SyntheticWorld>(m, "SyntheticWorld")
      .def_readonly("golden", &SyntheticWorld::golden)
      .def_readonly("seed", &SyntheticWorld::seed)
      .def_readwrite("noise_fraction", &SyntheticWorld::noise_fraction);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("h", &SweepRow::h)
      .def_readonly("budget", &SweepRow::budget)
      .def_readonly("strategy", &SweepRow::strategy)
      .def_readonly("seed", &SweepRow::seed)
      .def_readonly("connected", &SweepRow::connected)
      .def_readonly("solved", &SweepRow::solved)
      .def_readonly("rmse", &SweepRow::rmse)
      .def_readonly("mse", &SweepRow::mse)
      .def_readonly("kendall_tau", &SweepRow::kendall_tau)
      .def_readonly("spearman_rho", &SweepRow::spearman_rho)
      .def_readonly("avg_rank_diff", &SweepRow::avg_rank_diff)
      .def_readonly("trace_inv_fim", &SweepRow::trace_inv_fim)
      .def_readonly("error", &SweepRow::error);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("rows", &SweepResult::rows);

  py::class_<ReplayConfig>(m, "ReplayConfig")
      .def(py::init([](double cold_start_fraction, std::int64_t refit_interval,
                       SamplingStrategy strategy, double h,
                       PlacementConfig placement, SolverConfig solver,
                       std::optional<std::int64_t> max_consumed) {
             ReplayConfig cfg;
             cfg.cold_start_fraction = cold_start_fraction;
             cfg.refit_interval = refit_interval;
             cfg.strategy = strategy;
             cfg.h = h;
             cfg.placement = placement;
             cfg.solver = solver;
             cfg.max_consumed = max_consumed;
             return cfg;
           }),
           py::arg("cold_start_fraction") = 0.2,
           py::arg("refit_interval") = 5000,
           py::arg("strategy") = SamplingStrategy::proximity,
           py::arg("h") = 150.0, py::arg("placement") = PlacementConfig{},
           py::arg("solver") = SolverConfig{},
           py::arg("max_consumed") = std::nullopt)
      .def_readwrite("cold_start_fraction", &ReplayConfig::cold_start_fraction)
      .def_readwrite("refit_interval", &ReplayConfig::refit_interval)
      .def_readwrite("strategy", &ReplayConfig::strategy)
      .def_readwrite("h", &ReplayConfig::h)
      .def_readwrite("placement", &ReplayConfig::placement)
      .def_readwrite("solver", &ReplayConfig::solver)
      .def_readwrite("max_consumed", &ReplayConfig::max_consumed);

  py::class_<ReplayRefit>(m, "ReplayRefit")
      .def_readonly("seen", &ReplayRefit::seen)
      .def_readonly("consumed", &ReplayRefit::consumed)
      .def_readonly("rated_models", &ReplayRefit::rated_models)
      .def_readonly("vs_reference", &ReplayRefit::vs_reference);

  py::class_<ReplayResult>(m, "ReplayResult")
      .def_readonly("timeline", &ReplayResult::timeline)
      .def_readonly("reference", &ReplayResult::reference)
      .def_readonly("final_ratings", &ReplayResult::final_ratings)
      .def_readonly("consumed_total", &ReplayResult::consumed_total)
      .def_readonly("placement_consumed", &ReplayResult::placement_consumed)
      .def_readonly("skipped", &ReplayResult::skipped)
      .def_readonly("placements_finished", &ReplayResult::placements_finished);

  m.def("make_world", &make_world, py::arg("n_models"), py::arg("lo"),
        py::arg("hi"), py::arg("seed"), py::arg("noise_fraction") = 0.05);
  m.def(
      "sample_outcome",
      [](const SyntheticWorld& world, int i, int j, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return sample_outcome(world, i, j, rng);
      },
      py::arg("world"), py::arg("i"), py::arg("j"), py::arg("seed") = 0);
  m.def(
      "generate_battles",
      [](const SyntheticWorld& world, SamplingStrategy strategy, double h,
         std::int64_t budget, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return generate_battles(world, strategy, h, budget, rng);
      },
      py::arg("world"), py::arg("strategy"), py::arg("threshold"),
      py::arg("budget"), py::arg("seed") = 0);
  m.def("threshold_sweep", &threshold_sweep, py::arg("world"),
        py::arg("thresholds"), py::arg("budgets"), py::arg("strategies"),
        py::arg("seeds"), py::arg("solver") = SolverConfig{});
  m.def("fim_sweep", &fim_sweep, py::arg("world"), py::arg("thresholds"),
        py::arg("budgets"), py::arg("mode"), py::arg("seeds"));
  m.def("replay_experiment", &replay_experiment, py::arg("records"),
        py::arg("roster"), py::arg("config") = ReplayConfig{},
        py::arg("seed") = 0);

  // ---- io -----------------------------------------------------------------------

  py::class_<Rejection>(m, "Rejection")
      .def_readonly("line", &Rejection::line)
      .def_readonly("reason", &Rejection::reason);

  py::class_<IngestResult>(m, "IngestResult")
      .def_readonly("records", &IngestResult::records)
      .def_readonly("rejected", &IngestResult::rejected);

  py::class_<StateSnapshot>(m, "StateSnapshot")
      .def(py::init([](const RatingVector& ratings,
                       const ComparisonMatrices& matrices,
                       const std::string& fingerprint) {
             return snapshot_now(ratings, matrices, fingerprint);
           }),
           py::arg("ratings"), py::arg("matrices"),
           py::arg("config_fingerprint") = "")
      .def_readonly("roster", &StateSnapshot::roster)
      .def_readonly("ratings", &StateSnapshot::ratings)
      .def_readonly("matrices", &StateSnapshot::matrices)
      .def_readonly("placements", &StateSnapshot::placements)
      .def_readonly("config_fingerprint", &StateSnapshot::config_fingerprint)
      .def_readonly("created_at", &StateSnapshot::created_at)
      .def("__eq__", [](const StateSnapshot& a, const StateSnapshot& b) {
        return a == b;
      });

  m.def("ingest", &ingest, py::arg("path"));
  m.def("save_state", &save_state, py::arg("state"), py::arg("path"));
  m.def("load_state", &load_state, py::arg("path"));
  m.def("write_battle_log", &write_battle_log, py::arg("records"),
        py::arg("path"));
  m.def("write_ratings_csv", &write_ratings_csv, py::arg("ratings"),
        py::arg("path"), py::arg("comment") = "");
  m.def("read_ratings_csv", &read_ratings_csv, py::arg("path"));
}

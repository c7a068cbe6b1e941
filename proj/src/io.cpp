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

#include "pairarena/io.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pairarena {

namespace {

using nlohmann::json;

std::optional<std::int64_t> parse_timestamp(const json& value) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) {
    return static_cast<std::int64_t>(value.get<double>());
  }
  if (value.is_string()) {
    // ISO-8601 without offset, optional trailing Z.
    std::string text = value.get<std::string>();
    if (!text.empty() && text.back() == 'Z') text.pop_back();
    std::tm tm = {};
    std::istringstream is(text);
    is >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%S");
    if (is.fail()) return std::nullopt;
    return static_cast<std::int64_t>(timegm(&tm));
  }
  return std::nullopt;
}

std::string iso_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm = {};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json roster_to_json(const std::vector<ModelRef>& roster) {
  json out = json::array();
  for (const ModelRef& m : roster) {
    out.push_back({{"id", m.id}, {"name", m.display_name}});
  }
  return out;
}

std::vector<ModelRef> roster_from_json(const json& arr) {
  std::vector<ModelRef> roster;
  for (const json& item : arr) {
    roster.emplace_back(item.at("id").get<std::string>(),
                        item.at("name").get<std::string>());
  }
  return roster;
}

json count_matrix_to_json(const CountMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

CountMatrix count_matrix_from_json(const json& rows) {
  const int n = static_cast<int>(rows.size());
  CountMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw CorruptSnapshotError("snapshot matrix is not square");
    }
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j].get<std::int64_t>();
  }
  return m;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << std::setprecision(17);
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

IngestResult ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);

  IngestResult result;
  // battle_group -> (winner id, indices into result.records, line numbers)
  struct GroupInfo {
    std::string winner;
    bool consistent = true;
    std::vector<std::size_t> record_slots;
    std::vector<int> lines;
  };
  std::map<std::string, GroupInfo> groups;
  std::vector<char> keep;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      result.rejected.push_back({line_no, "malformed json"});
      continue;
    }
    if (!doc.contains("schema_version") ||
        !doc["schema_version"].is_number_integer()) {
      result.rejected.push_back({line_no, "missing schema_version"});
      continue;
    }
    if (doc["schema_version"].get<int>() != kBattleLogSchemaVersion) {
      throw SchemaVersionError("unsupported battle log schema_version " +
                               doc["schema_version"].dump() + " at line " +
                               std::to_string(line_no));
    }
    if (!doc.contains("model_a") || !doc.contains("model_b") ||
        !doc.contains("winner") || !doc["model_a"].is_string() ||
        !doc["model_b"].is_string() || !doc["winner"].is_string()) {
      result.rejected.push_back({line_no, "missing model fields"});
      continue;
    }
    const std::string a = doc["model_a"].get<std::string>();
    const std::string b = doc["model_b"].get<std::string>();
    const std::string winner = doc["winner"].get<std::string>();
    if (a == b) {
      result.rejected.push_back({line_no, "self battle"});
      continue;
    }
    if (winner != a && winner != b) {
      result.rejected.push_back({line_no, "winner is not a participant"});
      continue;
    }
    if (!doc.contains("timestamp")) {
      result.rejected.push_back({line_no, "missing timestamp"});
      continue;
    }
    const auto ts = parse_timestamp(doc["timestamp"]);
    if (!ts) {
      result.rejected.push_back({line_no, "unparseable timestamp"});
      continue;
    }

    BattleRecord rec;
    rec.model_a = ModelRef(a);
    rec.model_b = ModelRef(b);
    rec.outcome = winner == a ? 1 : 0;
    rec.timestamp = *ts;
    rec.source = BattleSource::live;
    rec.valid = true;

    if (doc.contains("battle_group") && doc["battle_group"].is_string()) {
      auto& group = groups[doc["battle_group"].get<std::string>()];
      if (group.lines.empty()) {
        group.winner = winner;
      } else if (group.winner != winner) {
        // A K-way round has one winner facing each loser; anything else
        // means the lines do not describe one round.
        group.consistent = false;
      }
      group.record_slots.push_back(result.records.size());
      group.lines.push_back(line_no);
    }
    result.records.push_back(std::move(rec));
    keep.push_back(1);
  }

  for (const auto& [id, group] : groups) {
    if (group.consistent) continue;
    for (std::size_t slot : group.record_slots) keep[slot] = 0;
    for (int bad_line : group.lines) {
      result.rejected.push_back(
          {bad_line, "inconsistent winners in battle_group " + id});
    }
  }
  if (!groups.empty()) {
    std::vector<BattleRecord> kept;
    kept.reserve(result.records.size());
    for (std::size_t k = 0; k < result.records.size(); ++k) {
      if (keep[k]) kept.push_back(std::move(result.records[k]));
    }
    result.records = std::move(kept);
    std::sort(result.rejected.begin(), result.rejected.end(),
              [](const Rejection& x, const Rejection& y) {
                return x.line < y.line;
              });
  }
  return result;
}

bool operator==(const StateSnapshot& a, const StateSnapshot& b) {
  auto rosters_equal = [](const std::vector<ModelRef>& x,
                          const std::vector<ModelRef>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].id != y[i].id || x[i].display_name != y[i].display_name) {
        return false;
      }
    }
    return true;
  };
  if (!rosters_equal(a.roster, b.roster) ||
      !rosters_equal(a.ratings.roster, b.ratings.roster) ||
      !rosters_equal(a.matrices.roster, b.matrices.roster)) {
    return false;
  }
  if (a.ratings.scores != b.ratings.scores ||
      a.ratings.alpha != b.ratings.alpha ||
      a.ratings.gauge_anchor != b.ratings.gauge_anchor) {
    return false;
  }
  if (a.matrices.counts != b.matrices.counts ||
      a.matrices.wins != b.matrices.wins) {
    return false;
  }
  if (a.placements.size() != b.placements.size()) return false;
  for (std::size_t k = 0; k < a.placements.size(); ++k) {
    const PlacementState& p = a.placements[k];
    const PlacementState& q = b.placements[k];
    if (p.model_id != q.model_id || p.lo != q.lo || p.hi != q.hi ||
        p.finished != q.finished || p.final_rating != q.final_rating ||
        p.rounds.size() != q.rounds.size()) {
      return false;
    }
    for (std::size_t r = 0; r < p.rounds.size(); ++r) {
      if (p.rounds[r].opponent.id != q.rounds[r].opponent.id ||
          p.rounds[r].wins != q.rounds[r].wins ||
          p.rounds[r].losses != q.rounds[r].losses) {
        return false;
      }
    }
  }
  return a.config_fingerprint == b.config_fingerprint &&
         a.created_at == b.created_at;
}

void save_state(const StateSnapshot& state, const std::string& path) {
  json payload;
  payload["roster"] = roster_to_json(state.roster);
  payload["alpha"] = state.ratings.alpha;
  payload["gauge_anchor"] = state.ratings.gauge_anchor;
  payload["rating_roster"] = roster_to_json(state.ratings.roster);
  payload["scores"] = std::vector<double>(
      state.ratings.scores.data(),
      state.ratings.scores.data() + state.ratings.scores.size());
  payload["matrix_roster"] = roster_to_json(state.matrices.roster);
  payload["counts"] = count_matrix_to_json(state.matrices.counts);
  payload["wins"] = count_matrix_to_json(state.matrices.wins);
  json placements = json::array();
  for (const PlacementState& p : state.placements) {
    json rounds = json::array();
    for (const PlacementRound& r : p.rounds) {
      rounds.push_back({{"opponent", r.opponent.id},
                        {"wins", r.wins},
                        {"losses", r.losses}});
    }
    json entry = {{"model_id", p.model_id}, {"lo", p.lo},     {"hi", p.hi},
                  {"finished", p.finished}, {"rounds", rounds}};
    entry["final_rating"] =
        p.final_rating ? json(*p.final_rating) : json(nullptr);
    placements.push_back(std::move(entry));
  }
  payload["placements"] = std::move(placements);
  payload["config_fingerprint"] = state.config_fingerprint;
  payload["created_at"] = state.created_at;

  const std::string body = payload.dump();
  json wrapper;
  wrapper["schema_version"] = kSnapshotSchemaVersion;
  std::ostringstream checksum;
  checksum << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(body);
  wrapper["checksum"] = checksum.str();
  wrapper["payload"] = std::move(payload);

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << wrapper.dump(1, '\t') << "\n";
  if (!out) throw IoError("failed writing " + path);
}

StateSnapshot load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();

  json wrapper = json::parse(buffer.str(), nullptr, false);
  if (wrapper.is_discarded() || !wrapper.is_object() ||
      !wrapper.contains("payload") || !wrapper.contains("checksum")) {
    throw CorruptSnapshotError("snapshot is truncated or not valid json");
  }
  int version = -1;
  std::string stored_checksum;
  try {
    version = wrapper.at("schema_version").get<int>();
    stored_checksum = wrapper.at("checksum").get<std::string>();
  } catch (const json::exception&) {
    throw CorruptSnapshotError("snapshot header is malformed");
  }
  if (version != kSnapshotSchemaVersion) {
    throw SchemaVersionError("unsupported snapshot schema version");
  }

  std::ostringstream checksum;
  checksum << std::hex << std::setw(16) << std::setfill('0')
           << fnv1a64(wrapper["payload"].dump());
  if (checksum.str() != stored_checksum) {
    throw CorruptSnapshotError("snapshot checksum mismatch");
  }

  try {
    const json& payload = wrapper["payload"];
    StateSnapshot state;
    state.roster = roster_from_json(payload.at("roster"));
    state.ratings.roster = roster_from_json(payload.at("rating_roster"));
    const auto scores = payload.at("scores").get<std::vector<double>>();
    state.ratings.scores =
        Eigen::Map<const Eigen::VectorXd>(scores.data(), scores.size());
    state.ratings.alpha = payload.at("alpha").get<double>();
    state.ratings.gauge_anchor = payload.at("gauge_anchor").get<double>();
    state.matrices.roster = roster_from_json(payload.at("matrix_roster"));
    state.matrices.counts = count_matrix_from_json(payload.at("counts"));
    state.matrices.wins = count_matrix_from_json(payload.at("wins"));
    for (const json& entry : payload.at("placements")) {
      PlacementState p;
      p.model_id = entry.at("model_id").get<std::string>();
      p.lo = entry.at("lo").get<int>();
      p.hi = entry.at("hi").get<int>();
      p.finished = entry.at("finished").get<bool>();
      if (!entry.at("final_rating").is_null()) {
        p.final_rating = entry.at("final_rating").get<double>();
      }
      for (const json& r : entry.at("rounds")) {
        p.rounds.push_back({ModelRef(r.at("opponent").get<std::string>()),
                            r.at("wins").get<int>(),
                            r.at("losses").get<int>()});
      }
      state.placements.push_back(std::move(p));
    }
    state.config_fingerprint =
        payload.at("config_fingerprint").get<std::string>();
    state.created_at = payload.at("created_at").get<std::string>();
    return state;
  } catch (const json::exception& e) {
    throw CorruptSnapshotError(std::string("snapshot payload is malformed: ") +
                               e.what());
  }
}

void write_sweep_csv(const SweepResult& result, const std::string& path,
                     const std::string& comment) {
  auto out = open_output(path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "h,budget,strategy,seed,connected,solved,rmse,mse,kendall_tau,"
         "spearman_rho,avg_rank_diff,trace_inv_fim,error\n";
  for (const SweepRow& row : result.rows) {
    // Error messages may contain commas; keep the column machine-safe.
    std::string error = row.error;
    std::replace(error.begin(), error.end(), ',', ';');
    out << row.h << ',' << row.budget << ',' << row.strategy << ','
        << row.seed << ',' << (row.connected ? 1 : 0) << ','
        << (row.solved ? 1 : 0) << ',' << row.rmse << ',' << row.mse << ','
        << row.kendall_tau << ',' << row.spearman_rho << ','
        << row.avg_rank_diff << ',' << row.trace_inv_fim << ',' << error
        << "\n";
  }
}

void write_ratings_csv(const RatingVector& ratings, const std::string& path,
                       const std::string& comment) {
  auto out = open_output(path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "model,score\n";
  for (int i = 0; i < ratings.size(); ++i) {
    out << ratings.roster[i].id << ',' << ratings.scores(i) << "\n";
  }
}

RatingVector read_ratings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::vector<ModelRef> roster;
  std::vector<double> scores;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // "model,score"
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw IoError("bad ratings row at line " + std::to_string(line_no));
    }
    roster.emplace_back(line.substr(0, comma));
    try {
      scores.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError("bad rating value at line " + std::to_string(line_no));
    }
  }
  if (roster.empty()) throw IoError("no ratings in " + path);
  return make_rating_vector(
      std::move(roster),
      Eigen::Map<const Eigen::VectorXd>(scores.data(), scores.size()));
}

void write_bootstrap_csv(const BootstrapReport& report, const std::string& path,
                         const std::string& comment) {
  auto out = open_output(path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "model";
  for (const auto& [label, run] : report.strategies) {
    out << ',' << label << "_mean," << label << "_variance";
  }
  if (report.variance_reduction.size() > 0) out << ",variance_reduction";
  out << "\n";
  for (std::size_t i = 0; i < report.roster.size(); ++i) {
    out << report.roster[i].id;
    for (const auto& [label, run] : report.strategies) {
      out << ',' << run.mean(i) << ',' << run.variance(i);
    }
    if (report.variance_reduction.size() > 0) {
      out << ',' << report.variance_reduction(i);
    }
    out << "\n";
  }
}

void write_replay_csv(const ReplayResult& result, const std::string& path,
                      const std::string& comment) {
  auto out = open_output(path);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "seen,consumed,rated_models,spearman_rho,kendall_tau,avg_rank_diff,"
         "rmse\n";
  for (const ReplayRefit& point : result.timeline) {
    out << point.seen << ',' << point.consumed << ',' << point.rated_models
        << ',' << point.vs_reference.spearman_rho << ','
        << point.vs_reference.kendall_tau << ','
        << point.vs_reference.avg_rank_diff << ',' << point.vs_reference.rmse
        << "\n";
  }
}

void write_battle_log(const std::vector<BattleRecord>& records,
                      const std::string& path) {
  auto out = open_output(path);
  for (const BattleRecord& rec : records) {
    json line;
    line["schema_version"] = kBattleLogSchemaVersion;
    line["timestamp"] = rec.timestamp;
    line["model_a"] = rec.model_a.id;
    line["model_b"] = rec.model_b.id;
    line["winner"] = rec.outcome == 1 ? rec.model_a.id : rec.model_b.id;
    out << line.dump() << "\n";
  }
}

StateSnapshot snapshot_now(const RatingVector& ratings,
                           const ComparisonMatrices& matrices,
                           const std::string& config_fingerprint) {
  StateSnapshot state;
  state.roster = ratings.roster;
  state.ratings = ratings;
  state.matrices = matrices;
  state.config_fingerprint = config_fingerprint;
  state.created_at = iso_now();
  return state;
}

}  // namespace pairarena

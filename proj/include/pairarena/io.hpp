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

#include <string>
#include <vector>

#include "pairarena/analysis.hpp"
#include "pairarena/scheduler.hpp"
#include "pairarena/simulator.hpp"
#include "pairarena/types.hpp"

namespace pairarena {

inline constexpr int kBattleLogSchemaVersion = 1;
inline constexpr int kSnapshotSchemaVersion = 1;

struct Rejection {
  int line = 0;  // 1-based
  std::string reason;
};

struct IngestResult {
  std::vector<BattleRecord> records;  // original line order
  std::vector<Rejection> rejected;
};

// Reads a JSONL battle log. Each line carries schema_version, timestamp,
// model_a, model_b, winner and optional battle_group / app_id. Malformed
// lines, self-battles and unknown winners are rejected with their line
// numbers. Lines sharing a battle_group form one K-way round and must
// agree on the winner (winner vs. each loser); disagreeing groups are
// rejected whole.
IngestResult ingest(const std::string& path);

// Full persisted engine state.
struct StateSnapshot {
  std::vector<ModelRef> roster;
  RatingVector ratings;
  ComparisonMatrices matrices;
  std::vector<PlacementState> placements;
  std::string config_fingerprint;
  std::string created_at;

  friend bool operator==(const StateSnapshot& a, const StateSnapshot& b);
};

// Single self-describing JSON file with an embedded checksum; load
// verifies it and throws CorruptSnapshotError on any mismatch or
// truncation. Ratings round-trip bit-exactly.
void save_state(const StateSnapshot& state, const std::string& path);
StateSnapshot load_state(const std::string& path);

// Fresh snapshot of fitted state, stamped with the current time.
StateSnapshot snapshot_now(const RatingVector& ratings,
                           const ComparisonMatrices& matrices,
                           const std::string& config_fingerprint);

// CSV emitters. Every file starts with '#' comment lines recording the
// configuration and seed, then a header row.
void write_sweep_csv(const SweepResult& result, const std::string& path,
                     const std::string& comment);
void write_ratings_csv(const RatingVector& ratings, const std::string& path,
                       const std::string& comment);
RatingVector read_ratings_csv(const std::string& path);
void write_bootstrap_csv(const BootstrapReport& report, const std::string& path,
                         const std::string& comment);
void write_replay_csv(const ReplayResult& result, const std::string& path,
                      const std::string& comment);
void write_battle_log(const std::vector<BattleRecord>& records,
                      const std::string& path);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace pairarena

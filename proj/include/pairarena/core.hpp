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

#include <vector>

#include "pairarena/types.hpp"

namespace pairarena {

// Aggregates battle records into count/win matrices over the given roster
// order. Records referencing unknown models, self-battles, invalid
// records, or outcomes outside {0,1} raise; nothing is silently dropped.
ComparisonMatrices build_matrices(const std::vector<BattleRecord>& records,
                                  const std::vector<ModelRef>& roster);

// Empirical win-rate matrix. Entries with no battles (and the diagonal)
// are undefined, never 0.
PayoffMatrix payoff(const ComparisonMatrices& matrices);

// Roster in first-appearance order over a record stream.
std::vector<ModelRef> roster_from_records(
    const std::vector<BattleRecord>& records);

}  // namespace pairarena

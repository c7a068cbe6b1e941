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
#include <vector>

#include "pairarena/types.hpp"

namespace pairarena {

// Two-dimensional scores fitted to P(i beats j) = sigmoid(u_i v_j - v_i u_j).
// Unlike the one-dimensional logistic model this can represent cyclic
// (rock-paper-scissors) win structures.
struct DiscScores {
  std::vector<ModelRef> roster;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double final_loss = 0.0;  // mean binary cross-entropy over battles
  int iterations = 0;
  std::vector<double> loss_checkpoints;  // recorded every few iterations
};

struct TransitivityReport {
  double mean_v = 0.0;
  double std_v = 0.0;
  double dispersion = 0.0;  // std(v) / |mean(v)| after gauge normalization
  bool u_dominant = false;  // dispersion below 0.5: Elo-like structure
};

// Gradient-descent fit from a seeded small random initialization.
// Only observed pairs (N_ij > 0) contribute to the loss. Deterministic
// per seed. Requires at least 3 models and a connected comparison graph.
DiscScores fit_disc(const ComparisonMatrices& matrices, int iterations,
                    double learning_rate, std::uint64_t seed);

// Mean loss of the given scores against the observed counts.
double disc_loss(const ComparisonMatrices& matrices, const Eigen::VectorXd& u,
                 const Eigen::VectorXd& v);

// Analytic loss gradient, stacked (du..., dv...). Used by the
// finite-difference checks.
Eigen::VectorXd disc_loss_gradient(const ComparisonMatrices& matrices,
                                   const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& v);

// The score pairs are only identified up to a common rotation and scale;
// this rotates the mean direction onto +v and rescales so the mean point
// norm is 1 before summarizing the v spread.
TransitivityReport transitivity_report(const DiscScores& scores);

}  // namespace pairarena

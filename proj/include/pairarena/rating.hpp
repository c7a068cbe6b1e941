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
#include <utility>

#include "pairarena/types.hpp"

namespace pairarena {

struct EloConfig {
  double k_factor = 32.0;
  double lambda_scale = 400.0;
  bool symmetric_update = true;  // zero-sum: loser mirrors the winner delta
};

struct SolverConfig {
  double alpha = kDefaultAlpha;
  int max_iterations = 200;
  // Gradient max-norm threshold in natural-parameter units (alpha * u),
  // so convergence does not depend on the chosen alpha.
  double tolerance = 1e-8;
  // Virtual wins AND losses added to every observed pair. Smooths only
  // existing edges; disconnected graphs still fail loudly.
  double regularization = 0.0;
};

// P(i beats j) = 1 / (1 + exp(-alpha * (u_i - u_j))), strictly in (0, 1).
double win_prob(double u_i, double u_j, double alpha);

// One online Elo step: u_i' = u_i + K * (S - p) with p evaluated at scale
// ln(10)/lambda_scale. Returns (u_i', u_j').
std::pair<double, double> elo_update(double u_i, double u_j, int outcome,
                                     const EloConfig& cfg = {});

// Log-likelihood of the observed win counts under the logistic model at
// the given ratings.
double bt_log_likelihood(const ComparisonMatrices& matrices,
                         const RatingVector& theta);

// Gradient of the log-likelihood with respect to the Elo-unit scores.
Eigen::VectorXd bt_gradient(const ComparisonMatrices& matrices,
                            const RatingVector& theta);

// Maximum-likelihood ratings, gauge-fixed so mean(scores) equals the
// anchor. Deterministic; depends only on the aggregate matrices.
//
// Throws DisconnectedGraphError when the comparison graph is not
// connected, and (with regularization = 0) NoFiniteMaximizerError when
// the win digraph is not strongly connected, i.e. some model or group of
// models never loses (or never wins) against the rest.
RatingVector fit_bt_mle(const ComparisonMatrices& matrices,
                        const SolverConfig& cfg = {},
                        double gauge_anchor = kDefaultGaugeAnchor);

}  // namespace pairarena

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

// Fisher information of the logistic pairwise model together with its
// graph-Laplacian form. With edge weights w_ij = c_ij * p_ij * (1 - p_ij)
// the information matrix is I = alpha^2 * L(w), so the total-variance
// objective tr[I^-1] equals alpha^-2 * tr[L^+].
struct InformationSummary {
  Eigen::MatrixXd fim;
  Eigen::MatrixXd laplacian;
  bool connected = false;  // from the edge set {c_ij > 0}
  int null_dim = 0;        // from the Laplacian spectrum
  double trace_pinv = 0.0;
  double trace_inv_fim = 0.0;  // alpha^-2 * trace_pinv
  double alpha = kDefaultAlpha;
};

// First-order split of the trace-objective jump at one threshold
// breakpoint: benefit from newly admitted pairs vs. the cost of spreading
// the budget thinner on existing pairs.
struct DeltaPhiEntry {
  double breakpoint = 0.0;   // the rating gap h_(t)
  int pairs_added = 0;       // m_t (ties share one breakpoint)
  double benefit = 0.0;      // A_t >= 0
  double cost = 0.0;         // B_t >= 0
  double approx_delta_phi = 0.0;  // -A_t + B_t
  double actual_delta_phi = 0.0;  // exact recomputation
  double phi_below = 0.0;         // +inf when disconnected below
  double phi_above = 0.0;
  bool connected_below = false;
};

struct DeltaPhiReport {
  std::vector<DeltaPhiEntry> entries;  // breakpoints strictly increasing
};

// L(w) = sum_{i<j} w_ij (e_i - e_j)(e_i - e_j)^T for a symmetric,
// zero-diagonal weight matrix.
Eigen::MatrixXd weighted_laplacian(const Eigen::MatrixXd& weights);

struct LaplacianSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns
  double cutoff = 0.0;           // n * eps * lambda_max
  int null_dim = 0;
  double trace_pinv = 0.0;  // sum of 1/lambda over eigenvalues > cutoff
};

LaplacianSpectrum analyze_laplacian(const Eigen::MatrixXd& laplacian);

// Moore-Penrose pseudo-inverse from the spectrum above.
Eigen::MatrixXd laplacian_pinv(const LaplacianSpectrum& spectrum);

InformationSummary fisher_matrix(const RatingVector& theta,
                                 const ComparisonMatrices& matrices);

// Same, for real-valued battle counts (ideal allocations).
InformationSummary fisher_from_counts(const RatingVector& theta,
                                      const Eigen::MatrixXd& counts);

// Central finite-difference Hessian of the expected negative
// log-likelihood (each outcome replaced by its mean), compared against
// the analytic Fisher matrix. Returns the max deviation relative to the
// largest Fisher entry. `step` is in Elo units.
double fim_vs_hessian_check(const RatingVector& theta,
                            const ComparisonMatrices& matrices, double step);

// Even split of `budget` battles over the pairs with rating gap < h.
// Throws EmptyProximitySetError when no pair qualifies.
Eigen::MatrixXd ideal_allocation(const RatingVector& theta, double h,
                                 double budget);

// Distinct pairwise rating gaps, ascending (gaps equal within a relative
// 1e-9 collapse into one breakpoint).
std::vector<double> rating_gap_breakpoints(const RatingVector& theta);

// Decomposition at breakpoint index t (0-based into
// rating_gap_breakpoints). Throws DisconnectedBelowBreakpointError when
// the graph just below the breakpoint is not connected (phi is infinite
// there).
DeltaPhiEntry delta_phi_decomposition(const RatingVector& theta,
                                      double budget, int breakpoint_index);

// All breakpoints; disconnected-below entries are flagged instead of
// throwing, with phi_below = +inf.
DeltaPhiReport delta_phi_report(const RatingVector& theta, double budget);

// tr[L(w(h))^+] for the ideal allocation at threshold h; +inf when the
// proximity graph is disconnected.
double ideal_trace_pinv(const RatingVector& theta, double h, double budget);

}  // namespace pairarena

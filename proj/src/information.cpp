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

#include "pairarena/information.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "pairarena/graph.hpp"
#include "pairarena/rating.hpp"

namespace pairarena {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GapPair {
  double gap;
  int i;
  int j;
};

// All i<j pairs sorted by rating gap (deterministic tie-break by index).
std::vector<GapPair> sorted_gap_pairs(const RatingVector& theta) {
  const int n = theta.size();
  std::vector<GapPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pairs.push_back({std::abs(theta.scores(i) - theta.scores(j)), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const GapPair& a, const GapPair& b) {
    if (a.gap != b.gap) return a.gap < b.gap;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return pairs;
}

double gap_group_tolerance(const RatingVector& theta) {
  double span = theta.size() > 0
                    ? theta.scores.maxCoeff() - theta.scores.minCoeff()
                    : 0.0;
  return 1e-9 * std::max(1.0, span);
}

// Pairs grouped by (near-)equal gap; group g starts at offsets[g] and the
// breakpoint value is the first gap of the group.
struct GapGroups {
  std::vector<GapPair> pairs;
  std::vector<int> offsets;  // size = groups + 1
};

GapGroups group_gaps(const RatingVector& theta) {
  GapGroups g;
  g.pairs = sorted_gap_pairs(theta);
  const double tol = gap_group_tolerance(theta);
  g.offsets.push_back(0);
  for (std::size_t k = 1; k < g.pairs.size(); ++k) {
    if (g.pairs[k].gap - g.pairs[g.offsets.back()].gap > tol) {
      g.offsets.push_back(static_cast<int>(k));
    }
  }
  if (!g.pairs.empty()) g.offsets.push_back(static_cast<int>(g.pairs.size()));
  return g;
}

Eigen::MatrixXd variance_terms(const RatingVector& theta) {
  const int n = theta.size();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double p = win_prob(theta.scores(i), theta.scores(j), theta.alpha);
      f(i, j) = p * (1.0 - p);
    }
  }
  return f;
}

bool pairs_connect(int n, const std::vector<GapPair>& pairs, int count) {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < count; ++k) {
    adj(pairs[k].i, pairs[k].j) = 1.0;
    adj(pairs[k].j, pairs[k].i) = 1.0;
  }
  return n <= 1 || is_connected(adj);
}

}  // namespace

Eigen::MatrixXd weighted_laplacian(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = weights(i, j);
      if (w == 0.0) continue;
      lap(i, i) += w;
      lap(j, j) += w;
      lap(i, j) -= w;
      lap(j, i) -= w;
    }
  }
  return lap;
}

LaplacianSpectrum analyze_laplacian(const Eigen::MatrixXd& laplacian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian);
  LaplacianSpectrum s;
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  const int n = static_cast<int>(s.eigenvalues.size());
  const double lambda_max =
      n > 0 ? std::max(0.0, s.eigenvalues.cwiseAbs().maxCoeff()) : 0.0;
  s.cutoff = n * std::numeric_limits<double>::epsilon() * lambda_max;
  s.null_dim = 0;
  s.trace_pinv = 0.0;
  for (int k = 0; k < n; ++k) {
    if (s.eigenvalues(k) > s.cutoff) {
      s.trace_pinv += 1.0 / s.eigenvalues(k);
    } else {
      ++s.null_dim;
    }
  }
  return s;
}

Eigen::MatrixXd laplacian_pinv(const LaplacianSpectrum& spectrum) {
  const int n = static_cast<int>(spectrum.eigenvalues.size());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    if (spectrum.eigenvalues(k) > spectrum.cutoff) {
      inv(k) = 1.0 / spectrum.eigenvalues(k);
    }
  }
  return spectrum.eigenvectors * inv.asDiagonal() *
         spectrum.eigenvectors.transpose();
}

InformationSummary fisher_from_counts(const RatingVector& theta,
                                      const Eigen::MatrixXd& counts) {
  const int n = theta.size();
  if (counts.rows() != n || counts.cols() != n) {
    throw RosterMismatchError("count matrix does not match the roster size");
  }
  const double a2 = theta.alpha * theta.alpha;
  const Eigen::MatrixXd f = variance_terms(theta);

  InformationSummary info;
  info.alpha = theta.alpha;

  // The Fisher matrix from its per-entry definition...
  info.fim = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j || counts(i, j) == 0.0) continue;
      info.fim(i, j) = -counts(i, j) * a2 * f(i, j);
      diag += counts(i, j) * a2 * f(i, j);
    }
    info.fim(i, i) = diag;
  }

  // ...and the Laplacian from the edge-weight sum; the two agree up to
  // the alpha^2 factor by construction of the model, which the tests
  // verify independently.
  Eigen::MatrixXd weights = counts.cwiseProduct(f);
  weights.diagonal().setZero();
  info.laplacian = weighted_laplacian(weights);

  info.connected = is_connected(counts.cwiseAbs());
  const LaplacianSpectrum spectrum = analyze_laplacian(info.laplacian);
  info.null_dim = spectrum.null_dim;
  info.trace_pinv = spectrum.trace_pinv;
  info.trace_inv_fim = spectrum.trace_pinv / a2;
  return info;
}

InformationSummary fisher_matrix(const RatingVector& theta,
                                 const ComparisonMatrices& matrices) {
  if (!same_roster(theta.roster, matrices.roster)) {
    throw RosterMismatchError("matrices and ratings cover different rosters");
  }
  return fisher_from_counts(theta, matrices.counts_real());
}

double fim_vs_hessian_check(const RatingVector& theta,
                            const ComparisonMatrices& matrices, double step) {
  if (!(step > 0.0)) throw ValidationError("step must be positive");
  if (!same_roster(theta.roster, matrices.roster)) {
    throw RosterMismatchError("matrices and ratings cover different rosters");
  }
  const int n = theta.size();
  const double alpha = theta.alpha;
  const Eigen::MatrixXd counts = matrices.counts_real();
  const Eigen::MatrixXd pbar = [&] {
    Eigen::MatrixXd p(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        p(i, j) =
            i == j ? 0.5 : win_prob(theta.scores(i), theta.scores(j), alpha);
      }
    }
    return p;
  }();

  // Expected log-likelihood: each outcome replaced by its mean at theta,
  // so the exact Hessian of the negation is the Fisher matrix.
  auto expected_ll = [&](const Eigen::VectorXd& u) {
    double ll = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (counts(i, j) == 0.0) continue;
        const double x = alpha * (u(i) - u(j));
        const double log_p = x >= 0 ? -std::log1p(std::exp(-x))
                                    : x - std::log1p(std::exp(x));
        const double log_q = -x >= 0 ? -std::log1p(std::exp(x))
                                     : -x - std::log1p(std::exp(-x));
        ll += counts(i, j) * (pbar(i, j) * log_p + (1.0 - pbar(i, j)) * log_q);
      }
    }
    return ll;
  };

  const Eigen::VectorXd u0 = theta.scores;
  Eigen::MatrixXd fd = Eigen::MatrixXd::Zero(n, n);
  const double center = expected_ll(u0);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd up = u0, dn = u0;
    up(k) += step;
    dn(k) -= step;
    fd(k, k) = -(expected_ll(up) - 2.0 * center + expected_ll(dn)) /
               (step * step);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      Eigen::VectorXd pp = u0, pm = u0, mp = u0, mm = u0;
      pp(k) += step;
      pp(l) += step;
      pm(k) += step;
      pm(l) -= step;
      mp(k) -= step;
      mp(l) += step;
      mm(k) -= step;
      mm(l) -= step;
      const double mixed = (expected_ll(pp) - expected_ll(pm) -
                            expected_ll(mp) + expected_ll(mm)) /
                           (4.0 * step * step);
      fd(k, l) = fd(l, k) = -mixed;
    }
  }

  const Eigen::MatrixXd fim = fisher_from_counts(theta, counts).fim;
  const double scale = fim.cwiseAbs().maxCoeff();
  const double dev = (fd - fim).cwiseAbs().maxCoeff();
  if (scale == 0.0) return dev;
  return dev / scale;
}

Eigen::MatrixXd ideal_allocation(const RatingVector& theta, double h,
                                 double budget) {
  if (!(h > 0.0)) throw ValidationError("threshold must be positive");
  if (!(budget > 0.0)) throw ValidationError("budget must be positive");
  const int n = theta.size();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  int members = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(theta.scores(i) - theta.scores(j)) < h) {
        counts(i, j) = 1.0;
        counts(j, i) = 1.0;
        ++members;
      }
    }
  }
  if (members == 0) {
    throw EmptyProximitySetError("no pair has rating gap below the threshold");
  }
  counts *= budget / static_cast<double>(members);
  return counts;
}

std::vector<double> rating_gap_breakpoints(const RatingVector& theta) {
  const GapGroups groups = group_gaps(theta);
  std::vector<double> breakpoints;
  for (std::size_t g = 0; g + 1 < groups.offsets.size(); ++g) {
    breakpoints.push_back(groups.pairs[groups.offsets[g]].gap);
  }
  return breakpoints;
}

namespace {

DeltaPhiEntry delta_phi_at(const RatingVector& theta, double budget,
                           const GapGroups& groups, int t) {
  const int n = theta.size();
  const int group_count = static_cast<int>(groups.offsets.size()) - 1;
  if (t < 0 || t >= group_count) {
    throw ValidationError("breakpoint index out of range");
  }

  const int below_count = groups.offsets[t];
  const int above_count = groups.offsets[t + 1];

  DeltaPhiEntry entry;
  entry.breakpoint = groups.pairs[below_count].gap;
  entry.pairs_added = above_count - below_count;
  entry.connected_below = pairs_connect(n, groups.pairs, below_count);

  const Eigen::MatrixXd f = variance_terms(theta);
  const double n_minus = static_cast<double>(below_count);
  const double n_plus = static_cast<double>(above_count);
  const double m_t = static_cast<double>(entry.pairs_added);

  // phi just above the breakpoint: budget split over all admitted pairs.
  Eigen::MatrixXd w_above = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < above_count; ++k) {
    const auto& p = groups.pairs[k];
    const double w = budget * f(p.i, p.j) / n_plus;
    w_above(p.i, p.j) = w;
    w_above(p.j, p.i) = w;
  }
  const LaplacianSpectrum above = analyze_laplacian(weighted_laplacian(w_above));
  entry.phi_above = pairs_connect(n, groups.pairs, above_count)
                        ? above.trace_pinv
                        : kInf;

  if (!entry.connected_below) {
    entry.phi_below = kInf;
    entry.benefit = entry.cost = std::numeric_limits<double>::quiet_NaN();
    entry.approx_delta_phi = std::numeric_limits<double>::quiet_NaN();
    entry.actual_delta_phi = -kInf;
    return entry;
  }

  Eigen::MatrixXd w_below = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < below_count; ++k) {
    const auto& p = groups.pairs[k];
    const double w = budget * f(p.i, p.j) / n_minus;
    w_below(p.i, p.j) = w;
    w_below(p.j, p.i) = w;
  }
  const LaplacianSpectrum below =
      analyze_laplacian(weighted_laplacian(w_below));
  entry.phi_below = below.trace_pinv;

  // d(phi)/d(w_ij) = -(e_i - e_j)^T (L^+)^2 (e_i - e_j), evaluated just
  // below the breakpoint.
  const Eigen::MatrixXd pinv = laplacian_pinv(below);
  const Eigen::MatrixXd pinv2 = pinv * pinv;
  auto quad = [&](int i, int j) {
    return pinv2(i, i) + pinv2(j, j) - 2.0 * pinv2(i, j);
  };

  double benefit = 0.0;
  for (int k = below_count; k < above_count; ++k) {
    const auto& p = groups.pairs[k];
    benefit += quad(p.i, p.j) * budget * f(p.i, p.j) / n_plus;
  }
  double cost = 0.0;
  for (int k = 0; k < below_count; ++k) {
    const auto& p = groups.pairs[k];
    cost += quad(p.i, p.j) * budget * f(p.i, p.j) * m_t / (n_minus * n_plus);
  }
  entry.benefit = benefit;
  entry.cost = cost;
  entry.approx_delta_phi = -benefit + cost;
  entry.actual_delta_phi = entry.phi_above - entry.phi_below;
  return entry;
}

}  // namespace

DeltaPhiEntry delta_phi_decomposition(const RatingVector& theta, double budget,
                                      int breakpoint_index) {
  if (!(budget > 0.0)) throw ValidationError("budget must be positive");
  const GapGroups groups = group_gaps(theta);
  DeltaPhiEntry entry = delta_phi_at(theta, budget, groups, breakpoint_index);
  if (!entry.connected_below) {
    throw DisconnectedBelowBreakpointError(
        "comparison graph below the breakpoint is disconnected; phi is "
        "infinite there");
  }
  return entry;
}

DeltaPhiReport delta_phi_report(const RatingVector& theta, double budget) {
  if (!(budget > 0.0)) throw ValidationError("budget must be positive");
  const GapGroups groups = group_gaps(theta);
  DeltaPhiReport report;
  const int group_count = static_cast<int>(groups.offsets.size()) - 1;
  for (int t = 0; t < group_count; ++t) {
    report.entries.push_back(delta_phi_at(theta, budget, groups, t));
  }
  return report;
}

double ideal_trace_pinv(const RatingVector& theta, double h, double budget) {
  const int n = theta.size();
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd f = variance_terms(theta);
  int members = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(theta.scores(i) - theta.scores(j)) < h) {
        weights(i, j) = f(i, j);
        weights(j, i) = f(i, j);
        ++members;
      }
    }
  }
  if (members == 0) return kInf;
  weights *= budget / static_cast<double>(members);
  if (!is_connected(weights.cwiseAbs())) return kInf;
  return analyze_laplacian(weighted_laplacian(weights)).trace_pinv;
}

}  // namespace pairarena

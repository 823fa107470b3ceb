// Copyright 2026 The armapred Authors.
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

#include <functional>
#include <map>
#include <vector>

#include "armapred/blocks.hpp"
#include "armapred/linalg.hpp"
#include "armapred/model.hpp"
#include "armapred/report.hpp"
#include "armapred/specfactor.hpp"

namespace armapred {

// Reference computations that do not share code paths with the closed form.

struct LevinsonResult {
  MatrixList forward;   // phi_{n,1..n}
  MatrixList backward;  // backward coefficients of the same order
  ComplexMatrix forward_error;
  ComplexMatrix backward_error;
};

/// Whittle's multivariate Levinson recursion on gamma(0..n), where
/// gamma(k) = E[X_k X_0^*]. `on_order` sees every intermediate order m with
/// the forward coefficients phi_{m,1..m}.
/// Throws NotPositiveDefinite when an innovation covariance stops being so.
LevinsonResult durbin_levinson(const MatrixList& gamma, long n,
                               const std::function<void(long, const MatrixList&)>& on_order = {});

/// Dense block-Toeplitz solve of the same normal equations; O(n^3).
MatrixList yule_walker_dense(const MatrixList& gamma, long n);

struct PhaseCoefficients {
  long grid = 0;
  std::map<long, ComplexMatrix> by_quadrature;  // beta_k, |k| <= k_max
  std::map<long, ComplexMatrix> by_closed_form;  // beta_k, 1 <= k <= k_max
};

/// beta_k = -(1/2pi) int e^{-ik t} h(e^{it})^* h_sharp(e^{it})^{-1} dt by the
/// trapezoid rule, doubling from `grid` until stable; plus the pole-sum form
/// built from the theta coefficients in `bb`.
PhaseCoefficients beta_coefficients(const RationalMatrixFunction& h, const SharpFactor& sf,
                                    const BuildingBlocks& bb, long k_max, long grid = 1024,
                                    const Tolerances& tol = {});

/// beta_k for k >= 1 from the theta coefficients alone.
ComplexMatrix beta_closed_form(const BuildingBlocks& bb, long k);

/// theta_{mu,j} read off as principal-part coefficients of -h_sharp h^dagger{}^{-1}
/// by contour integrals, with h_sharp from the Taylor series in `sf`.
/// Same layout as BuildingBlocks::theta_coef.
std::vector<MatrixList> theta_by_contour(const RationalMatrixFunction& h, const SharpFactor& sf,
                                         const OuterInverseDecomposition& pd,
                                         const Tolerances& tol = {});

struct BSequences {
  // [k][j] for k = 0..k_max and j = 0..j_max.
  std::vector<MatrixList> recursion, recursion_tilde;
  std::vector<MatrixList> closed_form, closed_form_tilde;
  long truncation = 0;
};

/// The alternating b and b-tilde sequences by their defining recursions
/// (truncated sums over beta) and by matrix products. Doubles the truncation
/// once and throws TruncationInsufficient if the recursion moves by more than tol.
BSequences b_sequences(const BuildingBlocks& bb, long n, int k_max, long j_max,
                       long truncation = 64, double tol = 1e-12);

/// Partial sum of the alternating series for phi_{n,j} up to k_max double steps.
/// k_max = 0 gives c_0 a_j.
ComplexMatrix phi_series(const BuildingBlocks& bb, long n, long j, int k_max);

struct AsymptoticRow {
  long n = 0;
  double lhs_sum = 0.0;       // sum_j ||phi_{n,j} - phi_j||
  double theorem_rhs = 0.0;   // C1 n^{m-1} |p1|^n / (m-1)!
  double tail_sum = 0.0;      // sum_{k>n} ||phi_k||
  double tail_formula = 0.0;  // ||c0 rho_{1,m}|| n^{m-1} |p1|^{n+1} / ((m-1)! (1-|p1|))
  double cor_ratio = 0.0;     // lhs_sum / tail_sum
  // Exact leading term of lhs_sum: C1 |binom(n,m-1) p1^{n-m+1}| |p1|^m.
  double leading_term = 0.0;
};

struct AsymptoticsReport {
  double C1 = 0.0;
  std::vector<double> C1_terms;
  ComplexMatrix H;  // d x dM selector (I_d, 0, ..., 0)
  Complex p1;
  int m1 = 0;
  double cor_limit = 0.0;  // (1-|p1|) C1 / (|p1| ||c0 rho_{1,m1}||)
  std::vector<AsymptoticRow> rows;
};

/// Requires a strictly dominant |p1| among the poles of h^{-1} (in 1/conj form);
/// throws AssumptionP1MaxViolated otherwise.
AsymptoticsReport baxter_asymptotics(const BuildingBlocks& bb, const std::vector<long>& n_list,
                                     const Tolerances& tol = {});

/// Horizons with C1 n^{m-1}|p1|^n/(m-1)! inside [lo, hi], scanning n = 1..n_cap.
std::vector<long> asymptotic_window(const AsymptoticsReport& rep, double lo = 1e-12,
                                    double hi = 1e-2, long n_cap = 100000);

/// Algebraic identities behind the closed form, on seeded random inputs.
Report identity_suite(unsigned long long seed);

}  // namespace armapred

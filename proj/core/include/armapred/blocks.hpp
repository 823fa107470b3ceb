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

#include <utility>
#include <vector>

#include "armapred/linalg.hpp"
#include "armapred/model.hpp"

namespace armapred {

/// Fixed-size matrices (dM x dM or dM x d) shared by every horizon n.
/// Block order is pole-major: (mu = 1, i = 1..m_1 | mu = 2, ... ).
struct BuildingBlocks {
  Eigen::Index d = 0;
  int K = 0;
  int M = 0;
  int m0 = 0;
  OuterInverseDecomposition pd;
  OuterInverseDecomposition pd_sharp;
  ComplexMatrix lambda;      // sum_l p_l p_l^*
  ComplexMatrix theta;       // block-diagonal Hankel
  ComplexMatrix J;           // Xi_{n+1} = Xi_n J
  ComplexMatrix xi1;         // Xi_1
  ComplexMatrix rho;         // stacked rho_{mu,j}
  ComplexMatrix rho_tilde;   // stacked (rho^sharp_{mu,j})^*
  ComplexMatrix c0;          // h(0)
  ComplexMatrix p0;          // p_vec at n = 0
  // theta_coef[mu][j-1]; index 0 holds the polynomial part (p_0 = 0).
  std::vector<MatrixList> theta_coef;
};

/// p_{mu,i}(n) = binom(n, i-1) p_mu^{n-i+1}.
Complex p_function(Complex p, int i, long n);

/// Stacked blocks p_{mu,i}(n) I_d (dM x d).
ComplexMatrix p_vec(const OuterInverseDecomposition& pd, long n);

/// Lambda = sum_{l >= 0} p_l p_l^*, closed form.
ComplexMatrix lambda_matrix(const OuterInverseDecomposition& pd);

/// Xi_n from the closed-form entries.
ComplexMatrix xi_direct(const OuterInverseDecomposition& pd, long n);

ComplexMatrix j_matrix(const OuterInverseDecomposition& pd);

/// Xi_1..Xi_nMax by the J recursion.
MatrixList xi_sequence(const OuterInverseDecomposition& pd, long n_max);

/// Taylor coefficients 0..count-1 of h_sharp at p (contour differentiation of
/// the fitted inverse).
MatrixList sharp_taylor_at(const OuterInverseDecomposition& pd_sharp, Complex p, int count,
                           const Tolerances& tol = {});

/// theta_{mu,j}; result[0] is the polynomial part, result[mu] pole mu.
std::vector<MatrixList> theta_coefficients(const OuterInverseDecomposition& pd,
                                           const OuterInverseDecomposition& pd_sharp,
                                           const Tolerances& tol = {});

ComplexMatrix theta_matrix(const OuterInverseDecomposition& pd,
                           const std::vector<MatrixList>& theta_coef);

/// Block-diagonal upper-triangular Toeplitz Pi_n.
ComplexMatrix pi_matrix(const OuterInverseDecomposition& pd, long n);

/// (rho, rho_tilde) stacks.
std::pair<ComplexMatrix, ComplexMatrix> rho_stacks(const OuterInverseDecomposition& pd,
                                                   const OuterInverseDecomposition& pd_sharp);

BuildingBlocks build_blocks(const OuterInverseDecomposition& pd,
                            const OuterInverseDecomposition& pd_sharp, const Tolerances& tol = {});

/// (v_n, vtilde_n) for n >= 1, with the finite corrections for n <= m0.
std::pair<ComplexMatrix, ComplexMatrix> v_vectors(const BuildingBlocks& bb, long n);

}  // namespace armapred

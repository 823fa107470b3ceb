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

#include <optional>
#include <vector>

#include "armapred/linalg.hpp"
#include "armapred/model.hpp"

namespace armapred {

/// Row-side outer factor h_sharp with w = h h^* = h_sharp^* h_sharp.
struct SharpFactor {
  long grid = 0;
  // samples[g] = h_sharp(exp(2 pi i g / grid)).
  MatrixList samples;
  // Taylor coefficients of h_sharp at 0.
  MatrixList taylor;
  // Constant unitary U applied on the left so that h_sharp(0) is Hermitian
  // positive definite (identity for the univariate shortcut).
  ComplexMatrix gauge;
  int iterations = 0;
  // max_g ||h_sharp^* h_sharp - w|| / max_g ||w||.
  double residual = 0.0;
  // Poledata of h_sharp^{-1}, filled by extract_sharp_poledata or supplied.
  std::optional<OuterInverseDecomposition> poledata;
  double fit_residual = 0.0;

  /// h_sharp(z) for |z| < 1 from the Taylor series.
  ComplexMatrix taylor_at(Complex z) const;
};

/// w(exp(i theta_g)) = h h^* on an n-point grid.
MatrixList spectral_density(const RationalMatrixFunction& h, long grid);

/// Outer factor of a positive density sampled on the grid: returns psi
/// samples with S = psi psi^*, psi analytic in the disk (Wilson iteration).
/// Throws NoConvergence when the residual stays above `tol`.
MatrixList wilson_factor(const MatrixList& density, double tol, int max_iterations,
                         int* iterations = nullptr, double* residual = nullptr);

/// h_sharp samples and Taylor coefficients. For d = 1 returns h itself.
SharpFactor factorize_sharp(const RationalMatrixFunction& h, long grid, const Tolerances& tol = {});

/// Fits the partial fraction form of h_sharp^{-1} over the poles of pd.
OuterInverseDecomposition extract_sharp_poledata(const SharpFactor& sf,
                                                 const OuterInverseDecomposition& pd,
                                                 const Tolerances& tol = {},
                                                 double* fit_residual = nullptr);

/// SharpFactor built from supplied h_sharp pole data; checks that it factors w.
SharpFactor sharp_from_poledata(const RationalMatrixFunction& h,
                                const OuterInverseDecomposition& pd_sharp, long grid,
                                const Tolerances& tol = {});

/// h_sharp(z) from pole data (inverse of the fitted form).
ComplexMatrix sharp_at(const OuterInverseDecomposition& pd_sharp, Complex z);

struct CorrespondenceRow {
  int mu = 0;  // 0 denotes the polynomial part, evaluated at p_0 = 0
  Complex p;
  double residual = 0.0;  // relative
};

struct CorrespondenceReport {
  std::vector<CorrespondenceRow> rows;
  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

/// rho_{mu,m} h_sharp(p_mu)^* versus h(p_mu)^* rho^sharp_{mu,m} for every pole.
CorrespondenceReport verify_pole_correspondence(const RationalMatrixFunction& h,
                                                const OuterInverseDecomposition& pd,
                                                const OuterInverseDecomposition& pd_sharp);

/// Replaces h_sharp by U h_sharp in pole data form (rho^sharp -> rho^sharp U^*).
OuterInverseDecomposition apply_gauge(const OuterInverseDecomposition& pd_sharp,
                                      const ComplexMatrix& unitary);

}  // namespace armapred

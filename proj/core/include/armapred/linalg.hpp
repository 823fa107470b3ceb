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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace armapred {

using Complex = std::complex<double>;

/// Dense complex matrix; the carrier for every C^{m x n} quantity.
using ComplexMatrix = Eigen::MatrixXcd;
using MatrixList = std::vector<ComplexMatrix>;

/// Failure categories raised by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  InvalidArgument,
  Parse,
  NotStable,
  SingularSigma,
  PoleClusterAmbiguous,
  DegenerateLeadingResidue,
  NearPole,
  InsufficientSharpData,
  TailNotConverged,
  NoConvergence,
  GridTooCoarse,
  IllConditionedBasis,
  ResidualTooLarge,
  NearPoleDifferentiation,
  NeumannDiverged,
  NotPositiveDefinite,
  TruncationInsufficient,
  AssumptionP1MaxViolated,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical thresholds shared by every module. Every "is nonzero" decision
/// uses `zero`, measured relative to the natural scale of the quantity.
struct Tolerances {
  double zero = 1e-9;
  // det h roots closer than this (relative to max(1,|root|)) are one root.
  double root_merge = 1e-7;
  // Two surviving clusters closer than this make multiplicity unsafe.
  double cluster_ambiguity = 1e-4;
  // Contour residue estimates must agree to this under node doubling.
  double residue_agreement = 1e-11;
  int contour_nodes = 256;
  int max_contour_nodes = 1 << 14;
  // Truncation error target for infinite series.
  double series_tail = 1e-16;
  // Wilson iteration: relative residual of h_sharp^* h_sharp - w on the grid.
  double factorization = 1e-9;
  // Grid doubling agreement for circle samples.
  double grid_agreement = 1e-9;
  int max_grid = 1 << 14;
  // Relative residual of the h_sharp^{-1} ansatz fit.
  double sharp_fit = 1e-9;
  // Cap on cond(B^* B) of the ansatz basis.
  double max_normal_condition = 1e10;
  // Pole-correspondence residual.
  double correspondence = 1e-8;
  // Radius slack for the condition (C) scan: roots with |z| <= 1 + unit_disk count as inside.
  double unit_disk = 1e-9;
};

/// Spectral (operator 2-) norm.
double op_norm(const ComplexMatrix& a);

/// Largest entry modulus; cheap scale estimate.
double max_abs(const ComplexMatrix& a);

/// Binomial coefficient in floating point by multiplicative recurrence.
/// Returns 0 when k < 0 or k > n.
double binomial(long n, long k);

/// z^k for k >= 0 by repeated squaring (exact for z = 0 and k = 0).
Complex ipow(Complex z, long k);

/// Unitary factor of the polar decomposition a = U P (P Hermitian PSD).
ComplexMatrix polar_unitary(const ComplexMatrix& a);

/// Hermitian part (a + a^*)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Spectral radius via complex Schur form.
double spectral_radius(const ComplexMatrix& a);

/// 2-norm condition number.
double condition_number(const ComplexMatrix& a);

/// Vertically stacks equally wide blocks.
ComplexMatrix vstack(const MatrixList& blocks);

/// Returns the unit-modulus root of unity exp(2 pi i k / n).
Complex unit_root(long k, long n);

}  // namespace armapred

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

#include <vector>

#include "armapred/linalg.hpp"
#include "armapred/polynomial.hpp"

namespace armapred {

/// d x d matrix of rational functions N(z) / D(z) with a scalar denominator.
/// Common roots of D and every entry of N are cancelled on construction.
class RationalMatrixFunction {
 public:
  RationalMatrixFunction() = default;
  RationalMatrixFunction(PolynomialMatrix numerator, Polynomial denominator,
                         const Tolerances& tol = {});

  Eigen::Index dim() const { return numerator_.rows(); }
  const PolynomialMatrix& numerator() const { return numerator_; }
  const Polynomial& denominator() const { return denominator_; }
  /// Roots of the reduced denominator (poles of the function).
  const std::vector<Complex>& poles() const { return poles_; }

  /// Throws NearPole when z is within `guard` of a pole.
  ComplexMatrix operator()(Complex z, double guard = 0.0) const;
  /// h(z)^{-1} = D(z) N(z)^{-1}.
  ComplexMatrix inverse_at(Complex z) const;

  /// det N(z).
  Polynomial det_numerator() const;
  /// det N / D^{d-1} when the division is exact (so det h = result / D),
  /// otherwise det N.
  Polynomial det_zero_polynomial() const;

 private:
  PolynomialMatrix numerator_;
  Polynomial denominator_;
  std::vector<Complex> poles_;
};

struct Pole {
  Complex p;             // lies in the open unit disk, nonzero
  int multiplicity = 1;
};

/// Partial fraction data of h^{-1}:
///   h^{-1}(z) = -{rho0 + sum_mu sum_j (1 - conj(p_mu) z)^{-j} rho[mu][j-1]
///                 + sum_j z^j rho0j[j-1]}.
struct OuterInverseDecomposition {
  Eigen::Index d = 0;
  std::vector<Pole> poles;
  ComplexMatrix rho0;
  std::vector<MatrixList> rho;  // rho[mu][j-1], j = 1..m_mu
  MatrixList rho0j;             // j = 1..m0

  int K() const { return static_cast<int>(poles.size()); }
  int m0() const { return static_cast<int>(rho0j.size()); }
  /// Sum of pole multiplicities.
  int M() const;

  /// Throws InvalidArgument when shapes or the structural invariants fail.
  void validate(const Tolerances& tol = {}) const;
};

/// Right-hand side of the partial fraction form, i.e. h^{-1}(z).
ComplexMatrix evaluate(const OuterInverseDecomposition& pd, Complex z, double guard = 0.0);
ComplexMatrix evaluate(const RationalMatrixFunction& h, Complex z, double guard = 0.0);

/// h = Phi^{-1} Psi Sigma^{1/2}. With `check`, throws NotStable when det Phi
/// or det Psi vanishes in the closed unit disk.
RationalMatrixFunction from_arma_polynomials(const PolynomialMatrix& phi,
                                             const PolynomialMatrix& psi,
                                             const ComplexMatrix& sigma_half,
                                             const Tolerances& tol = {}, bool check = true);

/// Rebuilds h from partial fraction data of h^{-1}.
RationalMatrixFunction from_inverse_poledata(const OuterInverseDecomposition& pd,
                                             const Tolerances& tol = {});

struct ConditionReport {
  std::vector<Complex> poles_inside;  // denominator roots with |z| <= 1 + tol
  std::vector<Complex> zeros_inside;  // zeros of det h with |z| <= 1 + tol
  bool pass() const { return poles_inside.empty() && zeros_inside.empty(); }
};

ConditionReport check_condition_C(const RationalMatrixFunction& h, const Tolerances& tol = {});

/// Pole data of h^{-1}; h must satisfy condition (C).
OuterInverseDecomposition decompose_inverse(const RationalMatrixFunction& h,
                                            const Tolerances& tol = {});

/// Forward/backward MA and AR coefficients:
///   h(z) = sum c_k z^k,  -h(z)^{-1} = sum a_k z^k,
///   htilde(z) = h_sharp(conj z)^* = sum ctilde_k z^k,  -htilde^{-1} = sum atilde_k z^k.
struct SeriesCoefficients {
  MatrixList c, a, ctilde, atilde;
  // ||c_k|| <= tail_scale * tail_rate^k for k beyond the fitted window.
  double tail_scale = 0.0;
  double tail_rate = 0.0;

  int truncation() const { return static_cast<int>(c.size()) - 1; }
};

/// Coefficient k of -h^{-1} from pole data (closed form).
ComplexMatrix ar_coefficient(const OuterInverseDecomposition& pd, long k);
/// Coefficient k of -htilde^{-1} from the h_sharp pole data.
ComplexMatrix ar_tilde_coefficient(const OuterInverseDecomposition& pd_sharp, long k);

/// Terms 0..N of each series.
SeriesCoefficients series_coefficients(const RationalMatrixFunction& h,
                                       const OuterInverseDecomposition& pd,
                                       const OuterInverseDecomposition& pd_sharp, int N);

/// Taylor coefficients 0..N of N(z)/D(z).
MatrixList taylor_coefficients(const RationalMatrixFunction& h, int N);

/// Fits ||x_k|| <= C r^k on the last `window` terms; returns {C, r}.
std::pair<double, double> geometric_fit(const MatrixList& x, int window = 10);

/// Extends the series until the fitted tail of c is below `tail`.
SeriesCoefficients series_until(const RationalMatrixFunction& h,
                                const OuterInverseDecomposition& pd,
                                const OuterInverseDecomposition& pd_sharp, double tail,
                                int max_terms = 1 << 16);

/// gamma(k) = sum_j c_{k+j} c_j^*, gamma(-k) = gamma(k)^*.
ComplexMatrix autocovariance(const SeriesCoefficients& s, long k, double tol);

/// gamma(0..n) in one pass.
MatrixList autocovariances(const SeriesCoefficients& s, long n, double tol);

}  // namespace armapred

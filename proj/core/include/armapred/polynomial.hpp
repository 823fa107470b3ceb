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

namespace armapred {

/// Scalar complex polynomial, coefficients stored lowest degree first.
class Polynomial {
 public:
  Polynomial() : c_{Complex(0.0)} {}
  explicit Polynomial(std::vector<Complex> coefficients);

  static Polynomial constant(Complex value) { return Polynomial({value}); }
  /// 1 - a z
  static Polynomial one_minus(Complex a) { return Polynomial({Complex(1.0), -a}); }

  /// Degree after dropping exact trailing zeros; the zero polynomial has degree 0.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const;
  const std::vector<Complex>& coefficients() const { return c_; }
  Complex coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex(0.0);
  }
  double max_coefficient() const;

  Complex operator()(Complex z) const;
  Complex derivative_at(Complex z) const;

  /// Drops trailing coefficients below rel * max|c|.
  Polynomial trimmed(double rel) const;

  /// Synthetic division by (z - root); returns quotient and remainder.
  std::pair<Polynomial, Complex> deflate(Complex root) const;

  /// All complex roots (companion eigenvalues, Newton polished), counted with
  /// multiplicity.
  std::vector<Complex> roots() const;

  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;

 private:
  void strip();
  std::vector<Complex> c_;
};

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

/// Groups roots whose mutual distance is below tol * max(1, |root|); the
/// cluster center is the mean, which is accurate even when a multiple root
/// has been split by rounding.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double tol);

/// Square matrix-valued polynomial sum_k z^k A_k.
class PolynomialMatrix {
 public:
  PolynomialMatrix() = default;
  PolynomialMatrix(Eigen::Index rows, Eigen::Index cols, MatrixList coefficients);

  static PolynomialMatrix constant(const ComplexMatrix& a) { return {a.rows(), a.cols(), {a}}; }
  static PolynomialMatrix identity(Eigen::Index d) {
    return constant(ComplexMatrix::Identity(d, d));
  }

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const MatrixList& coefficients() const { return c_; }
  ComplexMatrix coefficient(int k) const;
  double max_coefficient() const;

  ComplexMatrix operator()(Complex z) const;
  Polynomial entry(Eigen::Index r, Eigen::Index c) const;

  PolynomialMatrix operator*(const PolynomialMatrix& o) const;
  PolynomialMatrix operator*(const ComplexMatrix& right) const;
  PolynomialMatrix operator+(const PolynomialMatrix& o) const;
  PolynomialMatrix scaled(const Polynomial& s) const;
  PolynomialMatrix trimmed(double rel) const;

 private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  MatrixList c_;
};

/// Coefficients of a polynomial of degree < n from samples at the n-th roots
/// of unity (sample g taken at exp(2 pi i g / n)).
std::vector<Complex> coefficients_from_circle(const std::vector<Complex>& samples);

/// det A(z) as a polynomial, by interpolation on the unit circle.
Polynomial determinant(const PolynomialMatrix& a);

/// adj A(z) as a polynomial matrix, by interpolation on the unit circle.
PolynomialMatrix adjugate(const PolynomialMatrix& a);

/// Pointwise adjugate via cofactors; defined for singular matrices too.
ComplexMatrix adjugate(const ComplexMatrix& a);

/// Smallest power of two >= n.
long next_pow2(long n);

}  // namespace armapred

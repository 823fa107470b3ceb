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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "armapred/polynomial.hpp"

namespace armapred {
namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(Polynomial, EvaluatesAndDifferentiates) {
  const Polynomial p({1.0, -3.0, 2.0});  // (1 - z)(1 - 2z)
  EXPECT_NEAR(std::abs(p(Complex(0.5))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p(Complex(0, 1)) - Complex(-1.0, -3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.derivative_at(Complex(2.0)) - Complex(5.0)), 0.0, 1e-15);
  EXPECT_EQ(p.degree(), 2);
}

TEST(Polynomial, StripsTrailingZeros) {
  const Polynomial p({1.0, 2.0, 0.0, 0.0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_TRUE(Polynomial({0.0, 0.0}).is_zero());
  EXPECT_EQ(Polynomial({1.0, 1.0, 1e-20}).trimmed(1e-12).degree(), 1);
}

TEST(Polynomial, ArithmeticMatchesHandExpansion) {
  const Polynomial a({1.0, 2.0}), b({3.0, -1.0});
  const Polynomial prod = a * b;  // 3 + 5z - 2z^2
  EXPECT_EQ(prod.degree(), 2);
  EXPECT_NEAR(std::abs(prod.coefficient(0) - 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(prod.coefficient(1) - 5.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(prod.coefficient(2) + 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs((a + b).coefficient(1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs((a - b).coefficient(0) + 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs((a * Complex(0, 1)).coefficient(1) - Complex(0, 2)), 0.0, 1e-15);
}

TEST(Polynomial, DeflateByKnownRoot) {
  const Polynomial p({-6.0, 11.0, -6.0, 1.0});  // (z-1)(z-2)(z-3)
  const auto [q, r] = p.deflate(Complex(2.0));
  EXPECT_NEAR(std::abs(r), 0.0, 1e-14);
  EXPECT_EQ(q.degree(), 2);
  EXPECT_NEAR(std::abs(q(Complex(1.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(q(Complex(3.0))), 0.0, 1e-14);
}

TEST(Polynomial, RootsWithMultiplicity) {
  // (z - 0.5)^2 (z + 2i)
  const Polynomial p = Polynomial({-0.5, 1.0}) * Polynomial({-0.5, 1.0}) *
                       Polynomial({Complex(0, 2), Complex(1.0)});
  std::vector<Complex> roots = p.roots();
  ASSERT_EQ(roots.size(), 3u);
  const auto clusters = cluster_roots(roots, 1e-6);
  ASSERT_EQ(clusters.size(), 2u);
  for (const RootCluster& c : clusters) {
    if (c.multiplicity == 2) {
      EXPECT_NEAR(std::abs(c.center - 0.5), 0.0, 1e-8);
    } else {
      EXPECT_EQ(c.multiplicity, 1);
      EXPECT_NEAR(std::abs(c.center - Complex(0, -2)), 0.0, 1e-12);
    }
  }
}

TEST(Polynomial, CoefficientsFromCircleSamples) {
  const std::vector<Complex> c = {Complex(1, 2), Complex(-0.5), Complex(0, 0.25)};
  const Polynomial p(c);
  const long n = 8;
  std::vector<Complex> samples;
  for (long g = 0; g < n; ++g) samples.push_back(p(unit_root(g, n)));
  const std::vector<Complex> back = coefficients_from_circle(samples);
  ASSERT_EQ(back.size(), static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k)
    EXPECT_NEAR(std::abs(back[k] - p.coefficient(static_cast<int>(k))), 0.0, 1e-15);
}

TEST(PolynomialMatrix, DeterminantAndAdjugate) {
  // A(z) = [[1, z], [z, 1]]: det = 1 - z^2, adj = [[1, -z], [-z, 1]].
  const PolynomialMatrix a(2, 2, {ComplexMatrix::Identity(2, 2), mat2(0, 1, 1, 0)});
  const Polynomial det = determinant(a);
  EXPECT_NEAR(std::abs(det.coefficient(0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(det.coefficient(1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(det.coefficient(2) + 1.0), 0.0, 1e-14);
  const PolynomialMatrix adj = adjugate(a);
  const Complex z(0.3, -0.7);
  const ComplexMatrix expect = mat2(1.0, -z, -z, 1.0);
  EXPECT_LT(max_abs(adj(z) - expect), 1e-14);
  EXPECT_LT(max_abs(a(z) * adj(z) - det(z) * ComplexMatrix::Identity(2, 2)), 1e-14);
}

TEST(PolynomialMatrix, PointwiseAdjugateOfSingularMatrix) {
  const ComplexMatrix s = mat2(1.0, 2.0, 2.0, 4.0);
  const ComplexMatrix adj = adjugate(s);
  EXPECT_LT(max_abs(adj - mat2(4.0, -2.0, -2.0, 1.0)), 1e-15);
  EXPECT_LT(max_abs(s * adj), 1e-15);
}

TEST(PolynomialMatrix, ProductEvaluatesAsProductOfValues) {
  const PolynomialMatrix a(2, 2, {mat2(1, 0, 2, 1), mat2(0, 1, 0, 0)});
  const PolynomialMatrix b(2, 2, {mat2(1, 1, 0, 1), mat2(0.5, 0, 0, 0.5), mat2(0, 0, 1, 0)});
  const Complex z(-0.4, 0.9);
  EXPECT_LT(max_abs((a * b)(z) - a(z) * b(z)), 1e-14);
  EXPECT_LT(max_abs((a + b)(z) - (a(z) + b(z))), 1e-14);
  EXPECT_EQ((a * b).degree(), 3);
}

TEST(Linalg, SmallHelpers) {
  EXPECT_EQ(next_pow2(1000), 1024);
  EXPECT_EQ(next_pow2(1024), 1024);
  EXPECT_DOUBLE_EQ(binomial(10, 3), 120.0);
  EXPECT_DOUBLE_EQ(binomial(3, 5), 0.0);
  EXPECT_DOUBLE_EQ(binomial(3, -1), 0.0);
  EXPECT_EQ(ipow(Complex(0.0), 0), Complex(1.0));
  EXPECT_NEAR(std::abs(ipow(Complex(0, 1), 7) - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(unit_root(1, 4) - Complex(0, 1)), 0.0, 1e-15);
  const ComplexMatrix a = mat2(2.0, 1.0, 0.0, 3.0);
  EXPECT_NEAR(spectral_radius(a), 3.0, 1e-14);
  const ComplexMatrix u = polar_unitary(a);
  EXPECT_LT(max_abs(u.adjoint() * u - ComplexMatrix::Identity(2, 2)), 1e-14);
  EXPECT_LT(max_abs(u.adjoint() * a - hermitian_part(u.adjoint() * a)), 1e-14);
}

}  // namespace
}  // namespace armapred

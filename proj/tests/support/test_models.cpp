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

#include "test_models.hpp"

#include <cmath>
#include <random>

#include "armapred/polynomial.hpp"

#ifndef ARMAPRED_MODELS_DIR
#define ARMAPRED_MODELS_DIR "models"
#endif

namespace armapred::testing {
namespace {

ComplexMatrix scalar(Complex v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

PolynomialMatrix scalar_poly(std::vector<Complex> c) {
  MatrixList coef;
  for (Complex v : c) coef.push_back(scalar(v));
  return PolynomialMatrix(1, 1, std::move(coef));
}

// Draws stay portable across standard libraries: only raw engine output is used.
struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  // Uniform multiple of 1/64 in [lo, hi].
  double grid(double lo, double hi) {
    const long a = std::lround(lo * 64), b = std::lround(hi * 64);
    return static_cast<double>(a + static_cast<long>(rng() % static_cast<std::uint64_t>(b - a + 1))) /
           64.0;
  }
  int pick(int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

}  // namespace

ModelSpec ma1_spec(double b) {
  ModelSpec s;
  s.name = "ma1";
  s.psi = scalar_poly({1.0, b});
  return s;
}

ModelSpec arma_m0_spec() {
  ModelSpec s;
  s.name = "arma_m0";
  s.phi = scalar_poly({1.0, -0.5, 0.06});
  s.psi = scalar_poly({1.0, 0.5});
  return s;
}

ModelSpec triangular_spec(double p) {
  OuterInverseDecomposition pd;
  pd.d = 2;
  pd.poles = {{Complex(p), 1}};
  pd.rho0 = -ComplexMatrix::Identity(2, 2);
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  r(1, 0) = 1.0;
  pd.rho = {{r}};
  ModelSpec s;
  s.name = "triangular";
  s.h_inverse_poledata = pd;
  return s;
}

ModelSpec ar1_spec() {
  ModelSpec s;
  s.name = "ar1";
  s.phi = scalar_poly({1.0, -0.5});
  s.psi = scalar_poly({1.0});
  return s;
}

ModelSpec random_model_spec(std::uint64_t seed, int d) {
  Draw draw(seed);
  // Poles: K in 1..3, separated, 0.2 <= |p| <= 0.8.
  const int K = draw.pick(1, 3);
  std::vector<Complex> poles;
  while (static_cast<int>(poles.size()) < K) {
    const Complex p(draw.grid(-0.56, 0.56), draw.grid(-0.56, 0.56));
    if (std::abs(p) < 0.2 || std::abs(p) > 0.8) continue;
    bool far = true;
    for (Complex q : poles) far = far && std::abs(p - q) > 0.15;
    if (far) poles.push_back(p);
  }
  // Factor lists for the diagonal entries q_i. Each pole lands in one entry
  // with exponent 1 or 2; a simple pole may also appear once more elsewhere.
  std::vector<std::vector<Complex>> factors(d);
  for (Complex p : poles) {
    const int m = draw.pick(1, 2);
    const int i = draw.pick(0, d - 1);
    for (int k = 0; k < m; ++k) factors[i].push_back(p);
    if (m == 1 && d > 1 && draw.pick(0, 2) == 0) factors[(i + 1) % d].push_back(p);
  }
  MatrixList diag_coef;
  std::vector<Polynomial> q(d, Polynomial(std::vector<Complex>{1.0}));
  for (int i = 0; i < d; ++i)
    for (Complex p : factors[i]) q[i] = q[i] * Polynomial(std::vector<Complex>{1.0, -std::conj(p)});
  int degree = 0;
  for (const Polynomial& p : q) degree = std::max(degree, p.degree());
  for (int k = 0; k <= degree; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = q[i].coefficient(k);
    diag_coef.push_back(m);
  }
  // Well-conditioned mixing matrix V = I + small off-diagonal part.
  ComplexMatrix v = ComplexMatrix::Identity(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (r != c) v(r, c) = Complex(draw.grid(-0.25, 0.25), draw.grid(-0.25, 0.25));
  const ComplexMatrix v_inv = v.inverse();
  MatrixList psi_coef;
  for (const ComplexMatrix& m : diag_coef) psi_coef.push_back(v * m * v_inv);
  // Phi = I - z A with spectral radius of A at most 0.5.
  ComplexMatrix a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = Complex(draw.grid(-0.25, 0.25), draw.grid(-0.25, 0.25));
  const double rad = spectral_radius(a);
  if (rad > 0.5) a *= 0.5 / rad;
  ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    sigma(r, r) = draw.grid(0.5, 1.5);
    for (int c = 0; c < r; ++c) sigma(r, c) = Complex(draw.grid(-0.5, 0.5), draw.grid(-0.5, 0.5));
  }
  ModelSpec s;
  s.name = "random" + std::to_string(seed);
  s.phi = PolynomialMatrix(d, d, {ComplexMatrix::Identity(d, d), ComplexMatrix(-a)});
  s.psi = PolynomialMatrix(d, d, std::move(psi_coef));
  s.sigma_half = sigma;
  return s;
}

std::vector<BatteryModel> battery() {
  std::vector<BatteryModel> out = {
      {"ma1", ma1_spec()}, {"arma_m0", arma_m0_spec()}, {"triangular", triangular_spec()}};
  const int dims[] = {2, 3, 2, 3, 2};
  for (int i = 0; i < 5; ++i) {
    ModelSpec s = random_model_spec(1001 + i, dims[i]);
    out.push_back({s.name, s});
  }
  return out;
}

std::string model_path(const std::string& name) {
  return std::string(ARMAPRED_MODELS_DIR) + "/" + name + ".json";
}

ComplexMatrix random_unitary(std::uint64_t seed, Eigen::Index d) {
  Draw draw(seed);
  ComplexMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = Complex(draw.grid(-1, 1), draw.grid(-1, 1));
  m += 2.0 * ComplexMatrix::Identity(d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  return qr.householderQ() * ComplexMatrix::Identity(d, d);
}

}  // namespace armapred::testing

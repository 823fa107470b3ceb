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

#include "armapred/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "armapred/fourier.hpp"

namespace armapred {

Polynomial::Polynomial(std::vector<Complex> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) c_.push_back(Complex(0.0));
  strip();
}

void Polynomial::strip() {
  while (c_.size() > 1 && c_.back() == Complex(0.0)) c_.pop_back();
}

bool Polynomial::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Complex v) { return v == Complex(0.0); });
}

double Polynomial::max_coefficient() const {
  double m = 0.0;
  for (Complex v : c_) m = std::max(m, std::abs(v));
  return m;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc(0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::derivative_at(Complex z) const {
  Complex acc(0.0);
  for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * c_[k];
  return acc;
}

Polynomial Polynomial::trimmed(double rel) const {
  const double cut = rel * max_coefficient();
  std::vector<Complex> c = c_;
  while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Complex> Polynomial::deflate(Complex root) const {
  const int n = degree();
  if (n == 0) return {Polynomial(), c_[0]};
  std::vector<Complex> q(n);
  Complex acc = c_[n];
  for (int k = n - 1; k >= 0; --k) {
    q[k] = acc;
    acc = acc * root + c_[k];
  }
  return {Polynomial(std::move(q)), acc};
}

std::vector<Complex> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  const Complex lead = c_[n];
  ComplexMatrix companion = ComplexMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c_[i] / lead;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
  std::vector<Complex> r(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  // Newton polish; a step is only accepted if it reduces |p|.
  for (Complex& z : r) {
    for (int it = 0; it < 8; ++it) {
      const Complex f = (*this)(z);
      const Complex df = derivative_at(z);
      if (f == Complex(0.0) || df == Complex(0.0)) break;
      const Complex next = z - f / df;
      if (!(std::abs((*this)(next)) < std::abs(f))) break;
      z = next;
    }
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<Complex> c(c_.size() + o.c_.size() - 1, Complex(0.0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> c(std::max(c_.size(), o.c_.size()), Complex(0.0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = coefficient(int(i)) + o.coefficient(int(i));
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1.0); }

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> c = c_;
  for (Complex& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double tol) {
  const size_t n = roots.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) <= tol * scale) parent[find(i)] = find(j);
    }
  }
  std::vector<RootCluster> out;
  std::vector<long> slot(n, -1);
  for (size_t i = 0; i < n; ++i) {
    const size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(out.size());
      out.push_back({Complex(0.0), 0});
    }
    RootCluster& c = out[slot[root]];
    c.center += roots[i];
    c.multiplicity += 1;
  }
  for (RootCluster& c : out) c.center /= static_cast<double>(c.multiplicity);
  return out;
}

PolynomialMatrix::PolynomialMatrix(Eigen::Index rows, Eigen::Index cols, MatrixList coefficients)
    : rows_(rows), cols_(cols), c_(std::move(coefficients)) {
  if (c_.empty()) c_.push_back(ComplexMatrix::Zero(rows, cols));
  for (const ComplexMatrix& m : c_) {
    if (m.rows() != rows || m.cols() != cols)
      throw Error(ErrorKind::InvalidArgument, "polynomial matrix coefficient has wrong shape");
  }
  while (c_.size() > 1 && c_.back().isZero(0.0)) c_.pop_back();
}

ComplexMatrix PolynomialMatrix::coefficient(int k) const {
  if (k >= 0 && k < static_cast<int>(c_.size())) return c_[k];
  return ComplexMatrix::Zero(rows_, cols_);
}

double PolynomialMatrix::max_coefficient() const {
  double m = 0.0;
  for (const ComplexMatrix& a : c_) m = std::max(m, max_abs(a));
  return m;
}

ComplexMatrix PolynomialMatrix::operator()(Complex z) const {
  ComplexMatrix acc = ComplexMatrix::Zero(rows_, cols_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial PolynomialMatrix::entry(Eigen::Index r, Eigen::Index c) const {
  std::vector<Complex> v(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) v[k] = c_[k](r, c);
  return Polynomial(std::move(v));
}

PolynomialMatrix PolynomialMatrix::operator*(const PolynomialMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::InvalidArgument, "polynomial matrix shape mismatch");
  MatrixList c(c_.size() + o.c_.size() - 1, ComplexMatrix::Zero(rows_, o.cols_));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return {rows_, o.cols_, std::move(c)};
}

PolynomialMatrix PolynomialMatrix::operator*(const ComplexMatrix& right) const {
  return *this * constant(right);
}

PolynomialMatrix PolynomialMatrix::operator+(const PolynomialMatrix& o) const {
  const size_t n = std::max(c_.size(), o.c_.size());
  MatrixList c(n);
  for (size_t k = 0; k < n; ++k) c[k] = coefficient(int(k)) + o.coefficient(int(k));
  return {rows_, cols_, std::move(c)};
}

PolynomialMatrix PolynomialMatrix::scaled(const Polynomial& s) const {
  const auto& sc = s.coefficients();
  MatrixList c(c_.size() + sc.size() - 1, ComplexMatrix::Zero(rows_, cols_));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < sc.size(); ++j) c[i + j] += c_[i] * sc[j];
  return {rows_, cols_, std::move(c)};
}

PolynomialMatrix PolynomialMatrix::trimmed(double rel) const {
  const double cut = rel * max_coefficient();
  MatrixList c = c_;
  while (c.size() > 1 && max_abs(c.back()) <= cut) c.pop_back();
  return {rows_, cols_, std::move(c)};
}

long next_pow2(long n) {
  long p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<Complex> coefficients_from_circle(const std::vector<Complex>& samples) {
  // samples[g] = sum_k c_k w^{gk}, w = exp(2 pi i / n): an unscaled inverse DFT.
  std::vector<Complex> c = fourier::forward(samples);
  const double n = static_cast<double>(samples.size());
  for (Complex& v : c) v /= n;
  return c;
}

namespace {

constexpr double kInterpolationTrim = 1e-13;

}  // namespace

ComplexMatrix adjugate(const ComplexMatrix& a) {
  const Eigen::Index d = a.rows();
  ComplexMatrix adj(d, d);
  if (d == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  ComplexMatrix minor(d - 1, d - 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index r = 0, rr = 0; r < d; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < d; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(j, i) = sign * minor.determinant();
    }
  }
  return adj;
}

Polynomial determinant(const PolynomialMatrix& a) {
  const long d = a.rows();
  const long n = next_pow2(d * a.degree() + 1);
  std::vector<Complex> samples(n);
  for (long g = 0; g < n; ++g) samples[g] = a(unit_root(g, n)).determinant();
  std::vector<Complex> c = coefficients_from_circle(samples);
  c.resize(d * a.degree() + 1);
  return Polynomial(std::move(c)).trimmed(kInterpolationTrim);
}

PolynomialMatrix adjugate(const PolynomialMatrix& a) {
  const long d = a.rows();
  const long deg = (d - 1) * a.degree();
  const long n = next_pow2(deg + 1);
  MatrixList samples(n);
  for (long g = 0; g < n; ++g) samples[g] = adjugate(a(unit_root(g, n)));
  MatrixList c = fourier::forward(samples);
  c.resize(deg + 1);
  for (ComplexMatrix& m : c) m /= static_cast<double>(n);
  return PolynomialMatrix(d, d, std::move(c)).trimmed(kInterpolationTrim);
}

}  // namespace armapred

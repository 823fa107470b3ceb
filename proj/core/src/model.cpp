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

#include "armapred/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "armapred/fourier.hpp"

namespace armapred {

namespace {

// Relative size of N(c) below which a denominator root c is cancelled.
constexpr double kCancelTol = 1e-11;
// Roots beyond this modulus come from a vanishing leading coefficient.
constexpr double kRootAtInfinity = 1e8;

PolynomialMatrix deflate_matrix(const PolynomialMatrix& a, Complex root) {
  const int n = a.degree();
  if (n == 0) return PolynomialMatrix(a.rows(), a.cols(), {ComplexMatrix::Zero(a.rows(), a.cols())});
  MatrixList q(n);
  ComplexMatrix acc = a.coefficient(n);
  for (int k = n - 1; k >= 0; --k) {
    q[k] = acc;
    acc = acc * root + a.coefficient(k);
  }
  return {a.rows(), a.cols(), std::move(q)};
}

double scale_at(const PolynomialMatrix& a, Complex z) {
  double s = 0.0, zk = 1.0;
  for (const ComplexMatrix& m : a.coefficients()) {
    s += max_abs(m) * zk;
    zk *= std::abs(z);
  }
  return s;
}

Polynomial power(const Polynomial& p, int e) {
  Polynomial out = Polynomial::constant(1.0);
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

}  // namespace

RationalMatrixFunction::RationalMatrixFunction(PolynomialMatrix numerator, Polynomial denominator,
                                               const Tolerances& tol)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (numerator_.rows() != numerator_.cols() || numerator_.rows() == 0)
    throw Error(ErrorKind::InvalidArgument, "numerator must be a nonempty square matrix");
  if (denominator_.is_zero())
    throw Error(ErrorKind::InvalidArgument, "denominator is identically zero");
  for (const RootCluster& c : cluster_roots(denominator_.roots(), tol.root_merge)) {
    for (int t = 0; t < c.multiplicity; ++t) {
      const double scale = scale_at(numerator_, c.center);
      if (max_abs(numerator_(c.center)) > kCancelTol * scale) break;
      denominator_ = denominator_.deflate(c.center).first;
      numerator_ = deflate_matrix(numerator_, c.center);
    }
  }
  poles_ = denominator_.roots();
}

ComplexMatrix RationalMatrixFunction::operator()(Complex z, double guard) const {
  for (Complex p : poles_) {
    if (std::abs(z - p) <= guard)
      throw Error(ErrorKind::NearPole, "evaluation point within guard distance of a pole");
  }
  return numerator_(z) / denominator_(z);
}

ComplexMatrix RationalMatrixFunction::inverse_at(Complex z) const {
  return denominator_(z) * numerator_(z).partialPivLu().inverse();
}

Polynomial RationalMatrixFunction::det_numerator() const { return determinant(numerator_); }

Polynomial RationalMatrixFunction::det_zero_polynomial() const {
  const Polynomial det = det_numerator();
  const int d = static_cast<int>(dim());
  if (d == 1 || denominator_.degree() == 0) {
    return d == 1 ? det : det * std::pow(denominator_.coefficient(0), -(d - 1));
  }
  // Power-series division is stable here because E has no roots in the disk
  // whenever the model is admissible; otherwise the residual check rejects it.
  const Polynomial e = power(denominator_, d - 1);
  const int qdeg = det.degree() - e.degree();
  if (qdeg < 0) return det;
  std::vector<Complex> q(qdeg + 1);
  for (int k = 0; k <= qdeg; ++k) {
    Complex acc = det.coefficient(k);
    for (int i = 1; i <= std::min(k, e.degree()); ++i) acc -= e.coefficient(i) * q[k - i];
    q[k] = acc / e.coefficient(0);
  }
  const Polynomial quotient(q);
  const Polynomial residual = det - quotient * e;
  if (residual.max_coefficient() > 1e-10 * std::max(1.0, det.max_coefficient())) return det;
  return quotient.trimmed(1e-13);
}

int OuterInverseDecomposition::M() const {
  int m = 0;
  for (const Pole& p : poles) m += p.multiplicity;
  return m;
}

void OuterInverseDecomposition::validate(const Tolerances& tol) const {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
  if (d <= 0) bad("dimension must be positive");
  auto square = [&](const ComplexMatrix& m) { return m.rows() == d && m.cols() == d; };
  if (!square(rho0)) bad("rho0 has wrong shape");
  if (rho.size() != poles.size()) bad("one residue list per pole required");
  for (size_t mu = 0; mu < poles.size(); ++mu) {
    const Pole& p = poles[mu];
    if (!(std::abs(p.p) > 0.0 && std::abs(p.p) < 1.0)) bad("poles must lie in the punctured unit disk");
    if (p.multiplicity < 1 || static_cast<int>(rho[mu].size()) != p.multiplicity)
      bad("residue count must equal pole multiplicity");
    for (const ComplexMatrix& r : rho[mu])
      if (!square(r)) bad("residue has wrong shape");
    if (op_norm(rho[mu].back()) <= tol.zero)
      throw Error(ErrorKind::DegenerateLeadingResidue, "leading residue vanishes");
    for (size_t nu = 0; nu < mu; ++nu)
      if (std::abs(poles[nu].p - p.p) <= tol.root_merge) bad("poles must be distinct");
  }
  for (const ComplexMatrix& r : rho0j)
    if (!square(r)) bad("polynomial-part coefficient has wrong shape");
  if (!rho0j.empty() && op_norm(rho0j.back()) <= tol.zero)
    throw Error(ErrorKind::DegenerateLeadingResidue, "leading polynomial-part coefficient vanishes");
  const auto finite = [](const ComplexMatrix& m) { return m.allFinite(); };
  if (!finite(rho0)) bad("non-finite entry");
  for (const auto& list : rho)
    for (const auto& m : list)
      if (!finite(m)) bad("non-finite entry");
  for (const auto& m : rho0j)
    if (!finite(m)) bad("non-finite entry");
}

ComplexMatrix evaluate(const OuterInverseDecomposition& pd, Complex z, double guard) {
  ComplexMatrix sum = pd.rho0;
  for (int mu = 0; mu < pd.K(); ++mu) {
    const Complex base = 1.0 - std::conj(pd.poles[mu].p) * z;
    if (std::abs(base) <= guard * std::abs(std::conj(pd.poles[mu].p)))
      throw Error(ErrorKind::NearPole, "evaluation point within guard distance of a pole");
    Complex f = 1.0;
    for (int j = 0; j < pd.poles[mu].multiplicity; ++j) {
      f /= base;
      sum += f * pd.rho[mu][j];
    }
  }
  Complex zj = 1.0;
  for (const ComplexMatrix& r : pd.rho0j) {
    zj *= z;
    sum += zj * r;
  }
  return -sum;
}

ComplexMatrix evaluate(const RationalMatrixFunction& h, Complex z, double guard) {
  return h(z, guard);
}

RationalMatrixFunction from_arma_polynomials(const PolynomialMatrix& phi,
                                             const PolynomialMatrix& psi,
                                             const ComplexMatrix& sigma_half,
                                             const Tolerances& tol, bool check) {
  const Eigen::Index d = phi.rows();
  if (phi.cols() != d || psi.rows() != d || psi.cols() != d || sigma_half.rows() != d ||
      sigma_half.cols() != d)
    throw Error(ErrorKind::InvalidArgument, "phi, psi and sigma_half must be d x d");
  Eigen::JacobiSVD<ComplexMatrix> svd(sigma_half);
  const auto& s = svd.singularValues();
  if (!(s(d - 1) > tol.zero * std::max(1.0, s(0))))
    throw Error(ErrorKind::SingularSigma, "sigma_half is not invertible");
  const Polynomial det_phi = determinant(phi);
  if (det_phi.is_zero()) throw Error(ErrorKind::InvalidArgument, "det phi vanishes identically");
  if (check) {
    for (const Polynomial& p : {det_phi, determinant(psi)}) {
      for (Complex r : p.roots()) {
        if (std::abs(r) <= 1.0 + tol.unit_disk)
          throw Error(ErrorKind::NotStable, "det phi or det psi vanishes in the closed unit disk");
      }
    }
  }
  return RationalMatrixFunction(adjugate(phi) * psi * sigma_half, det_phi, tol);
}

RationalMatrixFunction from_inverse_poledata(const OuterInverseDecomposition& pd,
                                             const Tolerances& tol) {
  pd.validate(tol);
  const Eigen::Index d = pd.d;
  std::vector<Polynomial> factor;
  Polynomial q = Polynomial::constant(1.0);
  for (const Pole& p : pd.poles) {
    factor.push_back(Polynomial::one_minus(std::conj(p.p)));
    q = q * power(factor.back(), p.multiplicity);
  }
  // P = -q h^{-1} is a polynomial matrix; h = q adj(P) / det P.
  PolynomialMatrix p = PolynomialMatrix::constant(-pd.rho0).scaled(q);
  for (int mu = 0; mu < pd.K(); ++mu) {
    Polynomial others = Polynomial::constant(1.0);
    for (int nu = 0; nu < pd.K(); ++nu)
      if (nu != mu) others = others * power(factor[nu], pd.poles[nu].multiplicity);
    for (int j = 1; j <= pd.poles[mu].multiplicity; ++j) {
      const Polynomial w = others * power(factor[mu], pd.poles[mu].multiplicity - j);
      p = p + PolynomialMatrix::constant(-pd.rho[mu][j - 1]).scaled(w);
    }
  }
  for (int j = 1; j <= pd.m0(); ++j) {
    std::vector<Complex> zj(j + 1, Complex(0.0));
    zj[j] = 1.0;
    p = p + PolynomialMatrix::constant(-pd.rho0j[j - 1]).scaled(q * Polynomial(zj));
  }
  if (d == 1) return RationalMatrixFunction(PolynomialMatrix::constant(ComplexMatrix::Identity(1, 1)).scaled(q),
                                            p.entry(0, 0), tol);
  return RationalMatrixFunction(adjugate(p).scaled(q), determinant(p), tol);
}

ConditionReport check_condition_C(const RationalMatrixFunction& h, const Tolerances& tol) {
  ConditionReport report;
  for (Complex r : h.poles())
    if (std::abs(r) <= 1.0 + tol.unit_disk) report.poles_inside.push_back(r);
  const Polynomial g = h.det_zero_polynomial();
  if (g.is_zero()) {
    report.zeros_inside.push_back(Complex(0.0));
    return report;
  }
  for (Complex r : g.roots())
    if (std::abs(r) <= 1.0 + tol.unit_disk) report.zeros_inside.push_back(r);
  return report;
}

namespace {

struct Laurent {
  MatrixList coefficients;  // L_1..L_jmax
  double radius = 0.0;
  double peak = 0.0;        // max ||f|| on the contour
};

Laurent laurent_coefficients(const RationalMatrixFunction& h, Complex center, double radius,
                             int jmax, const Tolerances& tol) {
  const Eigen::Index d = h.dim();
  auto run = [&](int nodes) {
    Laurent out;
    out.radius = radius;
    out.coefficients.assign(jmax, ComplexMatrix::Zero(d, d));
    for (int g = 0; g < nodes; ++g) {
      const Complex u = radius * unit_root(g, nodes);
      const ComplexMatrix f = h.inverse_at(center + u);
      out.peak = std::max(out.peak, op_norm(f));
      Complex uj = 1.0;
      for (int j = 0; j < jmax; ++j) {
        uj *= u;
        out.coefficients[j] += uj * f;
      }
    }
    for (ComplexMatrix& m : out.coefficients) m /= static_cast<double>(nodes);
    return out;
  };
  int nodes = tol.contour_nodes;
  Laurent prev = run(nodes);
  while (true) {
    nodes *= 2;
    if (nodes > tol.max_contour_nodes)
      throw Error(ErrorKind::NoConvergence, "residue contour integrals did not stabilize");
    Laurent next = run(nodes);
    double diff = 0.0;
    double rj = 1.0;
    for (int j = 0; j < jmax; ++j) {
      rj *= radius;
      diff = std::max(diff, op_norm(next.coefficients[j] - prev.coefficients[j]) / rj);
    }
    if (diff <= tol.residue_agreement * std::max(1.0, next.peak)) return next;
    prev = std::move(next);
  }
}

}  // namespace

OuterInverseDecomposition decompose_inverse(const RationalMatrixFunction& h, const Tolerances& tol) {
  const Eigen::Index d = h.dim();
  const Polynomial g = h.det_zero_polynomial();
  if (g.is_zero()) throw Error(ErrorKind::NotStable, "det h vanishes identically");

  std::vector<Complex> candidates;
  for (Complex r : g.roots()) {
    if (std::abs(r) <= 1.0 + tol.unit_disk)
      throw Error(ErrorKind::NotStable, "det h vanishes in the closed unit disk");
    if (std::abs(r) < kRootAtInfinity) candidates.push_back(r);
  }
  for (Complex r : h.poles()) {
    if (std::abs(r) <= 1.0 + tol.unit_disk)
      throw Error(ErrorKind::NotStable, "h has a pole in the closed unit disk");
    if (std::abs(r) < kRootAtInfinity) candidates.push_back(r);
  }
  // Root-finding resolves a root of multiplicity m only to about eps^{1/m},
  // so clusters closer than cluster_ambiguity are grouped and each group is
  // judged by its Laurent data after recentring on the pole.
  const std::vector<RootCluster> clusters = cluster_roots(candidates, tol.root_merge);
  std::vector<RootCluster> groups;
  {
    std::vector<size_t> parent(clusters.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (size_t i = 0; i < clusters.size(); ++i)
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        const double scale =
            std::max({1.0, std::abs(clusters[i].center), std::abs(clusters[j].center)});
        if (std::abs(clusters[i].center - clusters[j].center) <= tol.cluster_ambiguity * scale)
          parent[find(i)] = find(j);
      }
    std::vector<long> slot(clusters.size(), -1);
    for (size_t i = 0; i < clusters.size(); ++i) {
      const size_t r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<long>(groups.size());
        groups.push_back({Complex(0.0), 0});
      }
      RootCluster& g = groups[slot[r]];
      g.center += static_cast<double>(clusters[i].multiplicity) * clusters[i].center;
      g.multiplicity += clusters[i].multiplicity;
    }
    for (RootCluster& g : groups) g.center /= static_cast<double>(g.multiplicity);
  }

  // Normalized size of the j-th principal-part term on the contour.
  auto term_size = [](const Laurent& L, int j) {
    return op_norm(L.coefficients[j - 1]) / std::pow(L.radius, j);
  };
  const double strong = 1e-6;

  OuterInverseDecomposition pd;
  pd.d = d;
  for (size_t i = 0; i < groups.size(); ++i) {
    Complex z0 = groups[i].center;
    double sep = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < groups.size(); ++j)
      if (j != i) sep = std::min(sep, std::abs(groups[j].center - z0));
    const double radius = std::min(0.25 * sep, 0.25 * (std::abs(z0) - 1.0));
    const int jmax = static_cast<int>(d) * groups[i].multiplicity;
    Laurent L;
    for (int iter = 0;; ++iter) {
      L = laurent_coefficients(h, z0, radius, jmax + 1, tol);
      int m = 0;
      for (int j = 1; j <= jmax; ++j)
        if (term_size(L, j) > strong * L.peak) m = j;
      if (m == 0) break;
      // Off-centre by delta, a pole of order m leaks m * delta * L_m into L_{m+1}.
      const ComplexMatrix& lm = L.coefficients[m - 1];
      const ComplexMatrix& lm1 = L.coefficients[m];
      const Complex delta = (lm.conjugate().cwiseProduct(lm1)).sum() /
                            (static_cast<double>(m) * lm.squaredNorm());
      if (std::abs(delta) > 0.1 * radius)
        throw Error(ErrorKind::PoleClusterAmbiguous, "pole location does not settle");
      z0 += delta;
      if (std::abs(delta) <= 1e-15 * std::abs(z0)) break;
      if (iter == 8)
        throw Error(ErrorKind::PoleClusterAmbiguous, "pole location does not settle");
    }
    int order = 0, strong_order = 0;
    for (int j = 1; j <= jmax; ++j) {
      if (term_size(L, j) > tol.zero * L.peak) order = j;
      if (term_size(L, j) > strong * L.peak) strong_order = j;
    }
    if (order != strong_order)
      throw Error(ErrorKind::PoleClusterAmbiguous,
                  "principal part has terms too small to trust and too large to drop");
    if (order == 0) continue;
    const Complex p = 1.0 / std::conj(z0);
    MatrixList residues(order);
    for (int j = 1; j <= order; ++j)
      residues[j - 1] = -ipow(-std::conj(p), j) * L.coefficients[j - 1];
    pd.poles.push_back({p, order});
    pd.rho.push_back(std::move(residues));
  }

  // Deterministic ordering: decreasing |p|, then argument.
  std::vector<size_t> idx(pd.poles.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    const double ma = std::abs(pd.poles[a].p), mb = std::abs(pd.poles[b].p);
    if (std::abs(ma - mb) > 1e-12) return ma > mb;
    return std::arg(pd.poles[a].p) < std::arg(pd.poles[b].p);
  });
  std::vector<Pole> poles;
  std::vector<MatrixList> rho;
  for (size_t i : idx) {
    poles.push_back(pd.poles[i]);
    rho.push_back(pd.rho[i]);
  }
  pd.poles = std::move(poles);
  pd.rho = std::move(rho);

  // Polynomial part: subtract the principal parts on the unit circle, where
  // h^{-1} is analytic, and read off the Taylor coefficients of the remainder.
  const int bound = std::max(0, h.denominator().degree() +
                                    static_cast<int>(d - 1) * h.numerator().degree() -
                                    h.det_numerator().degree());
  const long nodes = next_pow2(std::max(64, 4 * (bound + 1)));
  MatrixList remainder(nodes);
  double scale = 1.0;
  pd.rho0 = ComplexMatrix::Zero(d, d);
  for (long gidx = 0; gidx < nodes; ++gidx) {
    const Complex z = unit_root(gidx, nodes);
    ComplexMatrix r = h.inverse_at(z);
    for (int mu = 0; mu < pd.K(); ++mu) {
      const Complex base = 1.0 - std::conj(pd.poles[mu].p) * z;
      Complex f = 1.0;
      for (int j = 0; j < pd.poles[mu].multiplicity; ++j) {
        f /= base;
        r += f * pd.rho[mu][j];
      }
    }
    scale = std::max(scale, op_norm(r));
    remainder[gidx] = std::move(r);
  }
  MatrixList coef = fourier::forward(remainder);
  for (ComplexMatrix& m : coef) m /= static_cast<double>(nodes);
  pd.rho0 = -coef[0];
  int m0 = 0;
  for (int j = 1; j <= bound; ++j)
    if (op_norm(coef[j]) > tol.zero * scale) m0 = j;
  for (int j = 1; j <= m0; ++j) pd.rho0j.push_back(-coef[j]);

  for (const MatrixList& r : pd.rho)
    if (op_norm(r.back()) <= tol.zero)
      throw Error(ErrorKind::DegenerateLeadingResidue, "recovered leading residue vanishes");
  return pd;
}

ComplexMatrix ar_coefficient(const OuterInverseDecomposition& pd, long k) {
  ComplexMatrix a = (k == 0) ? pd.rho0 : ComplexMatrix::Zero(pd.d, pd.d);
  for (int mu = 0; mu < pd.K(); ++mu) {
    const Complex pk = ipow(std::conj(pd.poles[mu].p), k);
    for (int j = 1; j <= pd.poles[mu].multiplicity; ++j)
      a += (binomial(k + j - 1, j - 1) * pk) * pd.rho[mu][j - 1];
  }
  if (k >= 1 && k <= pd.m0()) a += pd.rho0j[k - 1];
  return a;
}

ComplexMatrix ar_tilde_coefficient(const OuterInverseDecomposition& pd_sharp, long k) {
  ComplexMatrix a = (k == 0) ? ComplexMatrix(pd_sharp.rho0.adjoint())
                             : ComplexMatrix::Zero(pd_sharp.d, pd_sharp.d);
  for (int mu = 0; mu < pd_sharp.K(); ++mu) {
    const Complex pk = ipow(pd_sharp.poles[mu].p, k);
    for (int j = 1; j <= pd_sharp.poles[mu].multiplicity; ++j)
      a += (binomial(k + j - 1, j - 1) * pk) * pd_sharp.rho[mu][j - 1].adjoint();
  }
  if (k >= 1 && k <= pd_sharp.m0()) a += pd_sharp.rho0j[k - 1].adjoint();
  return a;
}

MatrixList taylor_coefficients(const RationalMatrixFunction& h, int N) {
  const Polynomial& den = h.denominator();
  const Complex d0 = den.coefficient(0);
  if (d0 == Complex(0.0)) throw Error(ErrorKind::NotStable, "h has a pole at the origin");
  MatrixList c(N + 1);
  for (int k = 0; k <= N; ++k) {
    ComplexMatrix acc = h.numerator().coefficient(k);
    for (int i = 1; i <= std::min(k, den.degree()); ++i) acc -= den.coefficient(i) * c[k - i];
    c[k] = acc / d0;
  }
  return c;
}

SeriesCoefficients series_coefficients(const RationalMatrixFunction& h,
                                       const OuterInverseDecomposition& pd,
                                       const OuterInverseDecomposition& pd_sharp, int N) {
  if (pd_sharp.d != pd.d || pd_sharp.K() != pd.K())
    throw Error(ErrorKind::InsufficientSharpData, "h_sharp pole data missing or mismatched");
  if (N < pd.m0() + 1) throw Error(ErrorKind::InvalidArgument, "series length must exceed m0");
  SeriesCoefficients s;
  s.c = taylor_coefficients(h, N);
  s.a.resize(N + 1);
  s.atilde.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    s.a[k] = ar_coefficient(pd, k);
    s.atilde[k] = ar_tilde_coefficient(pd_sharp, k);
  }
  const ComplexMatrix inv0 = s.atilde[0].partialPivLu().inverse();
  s.ctilde.resize(N + 1);
  s.ctilde[0] = -inv0;
  for (int k = 1; k <= N; ++k) {
    ComplexMatrix acc = ComplexMatrix::Zero(pd.d, pd.d);
    for (int i = 0; i < k; ++i) acc += s.ctilde[i] * s.atilde[k - i];
    s.ctilde[k] = -acc * inv0;
  }
  std::tie(s.tail_scale, s.tail_rate) = geometric_fit(s.c);
  return s;
}

std::pair<double, double> geometric_fit(const MatrixList& x, int window) {
  const int n = static_cast<int>(x.size());
  if (n < window || window < 2) return {std::numeric_limits<double>::infinity(), 1.0};
  const int half = window / 2;
  double older = 0.0, newer = 0.0;
  for (int k = n - window; k < n - half; ++k) older = std::max(older, x[k].norm());
  for (int k = n - half; k < n; ++k) newer = std::max(newer, x[k].norm());
  if (newer == 0.0) return {0.0, 0.0};
  if (older == 0.0) return {std::numeric_limits<double>::infinity(), 1.0};
  const double r = std::pow(newer / older, 1.0 / half);
  double logc = -std::numeric_limits<double>::infinity();
  for (int k = n - window; k < n; ++k) {
    const double v = x[k].norm();
    if (v > 0.0) logc = std::max(logc, std::log(v) - k * std::log(r));
  }
  return {std::exp(logc), r};
}

SeriesCoefficients series_until(const RationalMatrixFunction& h,
                                const OuterInverseDecomposition& pd,
                                const OuterInverseDecomposition& pd_sharp, double tail,
                                int max_terms) {
  for (int N = std::max(64, 2 * (pd.m0() + 1)); N <= max_terms; N *= 2) {
    SeriesCoefficients s = series_coefficients(h, pd, pd_sharp, N);
    if (s.tail_rate == 0.0) return s;
    if (s.tail_rate < 1.0 &&
        s.tail_scale * std::pow(s.tail_rate, N + 1) / (1.0 - s.tail_rate) < tail)
      return s;
  }
  throw Error(ErrorKind::TailNotConverged, "MA coefficients do not decay fast enough");
}

ComplexMatrix autocovariance(const SeriesCoefficients& s, long k, double tol) {
  if (k < 0) return autocovariance(s, -k, tol).adjoint();
  const long T = static_cast<long>(s.c.size());
  const Eigen::Index d = s.c.front().rows();
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  for (long j = 0; j + k < T; ++j) g.noalias() += s.c[k + j] * s.c[j].adjoint();
  if (s.tail_rate > 0.0) {
    double cmax = 0.0;
    for (const ComplexMatrix& m : s.c) cmax = std::max(cmax, m.norm());
    const double bound = s.tail_rate < 1.0
                             ? cmax * s.tail_scale * std::pow(s.tail_rate, T) / (1.0 - s.tail_rate)
                             : std::numeric_limits<double>::infinity();
    if (!(bound <= tol))
      throw Error(ErrorKind::TailNotConverged, "autocovariance tail exceeds tolerance");
  }
  return g;
}

MatrixList autocovariances(const SeriesCoefficients& s, long n, double tol) {
  MatrixList g(n + 1);
  for (long k = 0; k <= n; ++k) g[k] = autocovariance(s, k, tol);
  return g;
}

}  // namespace armapred

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

#include "armapred/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "armapred/fourier.hpp"
#include "armapred/polynomial.hpp"
#include "armapred/predictor.hpp"

namespace armapred {
namespace {

ComplexMatrix gamma_at(const MatrixList& gamma, long k) {
  return k >= 0 ? gamma[k] : ComplexMatrix(gamma[-k].adjoint());
}

// X with X h = rhs for Hermitian positive definite h.
ComplexMatrix right_solve_hpd(const ComplexMatrix& h, const ComplexMatrix& rhs) {
  Eigen::LLT<ComplexMatrix> llt(h);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "innovation covariance is not positive definite");
  return llt.solve(rhs.adjoint()).adjoint();
}

double norm_of(double x) { return std::abs(x); }
double norm_of(const ComplexMatrix& m) { return op_norm(m); }

// Sums term(k) for k = first, first+1, ... Terms may grow polynomially before
// decaying geometrically; stops once the tail predicted from the decay rate
// over the last eight terms falls below rel * max(1, sum of norms).
template <typename Term>
auto sum_until_tail(long first, Term term, double rel, long max_terms, const char* what) {
  auto acc = term(first);
  double mass = norm_of(acc);
  std::vector<double> norms{mass};
  for (long k = first + 1; k < first + max_terms; ++k) {
    auto t = term(k);
    const double tn = norm_of(t);
    acc += t;
    mass += tn;
    norms.push_back(tn);
    const std::size_t s = norms.size();
    if (s < 16) continue;
    const double old = norms[s - 9];
    if (tn == 0.0 && old == 0.0) return acc;
    if (old == 0.0) continue;
    const double rate = std::pow(tn / old, 1.0 / 8.0);
    if (rate >= 1.0) continue;
    if (tn * rate / (1.0 - rate) <= rel * std::max(1.0, mass)) return acc;
  }
  throw Error(ErrorKind::TailNotConverged, std::string(what) + " did not converge");
}

}  // namespace

LevinsonResult durbin_levinson(const MatrixList& gamma, long n,
                               const std::function<void(long, const MatrixList&)>& on_order) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
  if (static_cast<long>(gamma.size()) < n + 1)
    throw Error(ErrorKind::InvalidArgument, "need gamma(0..n)");
  LevinsonResult r;
  r.forward_error = hermitian_part(gamma[0]);
  r.backward_error = r.forward_error;
  MatrixList& a = r.forward;
  MatrixList& b = r.backward;
  for (long m = 0; m < n; ++m) {
    ComplexMatrix delta = gamma_at(gamma, m + 1);
    for (long j = 1; j <= m; ++j) delta -= a[j - 1] * gamma_at(gamma, m + 1 - j);
    const ComplexMatrix a_last = right_solve_hpd(r.backward_error, delta);
    const ComplexMatrix b_last = right_solve_hpd(r.forward_error, delta.adjoint());
    MatrixList a_next(m + 1), b_next(m + 1);
    for (long j = 1; j <= m; ++j) {
      a_next[j - 1] = a[j - 1] - a_last * b[m - j];
      b_next[j - 1] = b[j - 1] - b_last * a[m - j];
    }
    a_next[m] = a_last;
    b_next[m] = b_last;
    a = std::move(a_next);
    b = std::move(b_next);
    r.forward_error = hermitian_part(r.forward_error - a_last * delta.adjoint());
    r.backward_error = hermitian_part(r.backward_error - b_last * delta);
    if (on_order) on_order(m + 1, a);
  }
  // A final check so the caller never sees coefficients from an indefinite system.
  if (Eigen::LLT<ComplexMatrix>(r.forward_error).info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "innovation covariance is not positive definite");
  return r;
}

MatrixList yule_walker_dense(const MatrixList& gamma, long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
  if (static_cast<long>(gamma.size()) < n + 1)
    throw Error(ErrorKind::InvalidArgument, "need gamma(0..n)");
  const Eigen::Index d = gamma[0].rows();
  ComplexMatrix t(n * d, n * d), rhs(n * d, d);
  for (long k = 0; k < n; ++k) {
    for (long j = 0; j < n; ++j) t.block(k * d, j * d, d, d) = gamma_at(gamma, j - k);
    rhs.block(k * d, 0, d, d) = gamma_at(gamma, -(k + 1));
  }
  Eigen::LLT<ComplexMatrix> llt(t);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "Toeplitz matrix is not positive definite");
  const ComplexMatrix x = llt.solve(rhs);
  MatrixList out(n);
  for (long j = 0; j < n; ++j) out[j] = x.block(j * d, 0, d, d).adjoint();
  return out;
}

ComplexMatrix beta_closed_form(const BuildingBlocks& bb, long k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "closed form covers k >= 1");
  const long n = k - 1;
  ComplexMatrix acc = ComplexMatrix::Zero(bb.d, bb.d);
  for (int mu = 0; mu < bb.K; ++mu) {
    const Pole& pole = bb.pd.poles[mu];
    for (int j = 1; j <= pole.multiplicity; ++j)
      acc += p_function(pole.p, j, n) * bb.theta_coef[mu + 1][j - 1];
  }
  if (k <= bb.m0) acc += bb.theta_coef[0][k - 1];
  return acc.adjoint();
}

PhaseCoefficients beta_coefficients(const RationalMatrixFunction& h, const SharpFactor& sf,
                                    const BuildingBlocks& bb, long k_max, long grid,
                                    const Tolerances& tol) {
  if (grid < 2 || (grid & (grid - 1)) != 0)
    throw Error(ErrorKind::InvalidArgument, "quadrature grid must be a power of two");
  if (k_max < 0) throw Error(ErrorKind::InvalidArgument, "k_max must be nonnegative");
  const Eigen::Index d = h.dim();
  auto quadrature = [&](long g) {
    // h_sharp on the grid: fold the Taylor series modulo g and transform.
    MatrixList folded(g, ComplexMatrix::Zero(d, d));
    for (std::size_t k = 0; k < sf.taylor.size(); ++k) folded[k % g] += sf.taylor[k];
    MatrixList sharp = fourier::inverse(folded);
    MatrixList f(g);
    for (long i = 0; i < g; ++i) {
      const ComplexMatrix hz = h(unit_root(i, g));
      f[i] = hz.adjoint() * (sharp[i] * static_cast<double>(g)).partialPivLu().inverse();
    }
    const MatrixList transformed = fourier::forward(f);
    std::map<long, ComplexMatrix> out;
    for (long k = -k_max; k <= k_max; ++k)
      out[k] = -transformed[((k % g) + g) % g] / static_cast<double>(g);
    return out;
  };
  long g = std::max(grid, static_cast<long>(next_pow2(4 * (k_max + 1))));
  std::map<long, ComplexMatrix> prev = quadrature(g);
  for (g *= 2; g <= std::max<long>(tol.max_grid, 2 * grid); g *= 2) {
    std::map<long, ComplexMatrix> cur = quadrature(g);
    double diff = 0.0, peak = 0.0;
    for (const auto& [k, m] : cur) {
      diff = std::max(diff, max_abs(m - prev.at(k)));
      peak = std::max(peak, max_abs(m));
    }
    if (diff <= 1e-13 * std::max(1.0, peak)) {
      PhaseCoefficients pc;
      pc.grid = g;
      pc.by_quadrature = std::move(cur);
      for (long k = 1; k <= k_max; ++k) pc.by_closed_form[k] = beta_closed_form(bb, k);
      return pc;
    }
    prev = std::move(cur);
  }
  throw Error(ErrorKind::GridTooCoarse, "phase-function quadrature did not settle");
}

std::vector<MatrixList> theta_by_contour(const RationalMatrixFunction& h, const SharpFactor& sf,
                                         const OuterInverseDecomposition& pd,
                                         const Tolerances& tol) {
  const Eigen::Index d = pd.d;
  // -h_sharp(z) (h(1/conj z)^{-1})^*.
  auto f = [&](Complex z) -> ComplexMatrix {
    return -sf.taylor_at(z) * h.inverse_at(1.0 / std::conj(z)).adjoint();
  };
  auto principal_part = [&](Complex center, double radius, int order) {
    auto run = [&](int nodes) {
      MatrixList out(order, ComplexMatrix::Zero(d, d));
      for (int g = 0; g < nodes; ++g) {
        const Complex u = radius * unit_root(g, nodes);
        const ComplexMatrix v = f(center + u);
        Complex w = u;
        for (int j = 1; j <= order; ++j, w *= u) out[j - 1] += w * v;
      }
      for (ComplexMatrix& m : out) m /= static_cast<double>(nodes);
      return out;
    };
    MatrixList prev = run(tol.contour_nodes);
    for (int nodes = 2 * tol.contour_nodes; nodes <= tol.max_contour_nodes; nodes *= 2) {
      MatrixList cur = run(nodes);
      double diff = 0.0, peak = 0.0;
      for (int j = 0; j < order; ++j) {
        diff = std::max(diff, max_abs(cur[j] - prev[j]));
        peak = std::max(peak, max_abs(cur[j]));
      }
      if (diff <= 1e-12 * std::max(1.0, peak)) return cur;
      prev = std::move(cur);
    }
    throw Error(ErrorKind::NoConvergence, "principal-part contour did not settle");
  };
  double min_abs = 1.0;
  for (const Pole& p : pd.poles) min_abs = std::min(min_abs, std::abs(p.p));
  std::vector<MatrixList> out;
  out.push_back(pd.m0() > 0 ? principal_part(0.0, 0.5 * min_abs, pd.m0()) : MatrixList{});
  for (int mu = 0; mu < pd.K(); ++mu) {
    const Complex p = pd.poles[mu].p;
    double radius = std::min(1.0 - std::abs(p), std::abs(p));
    for (int nu = 0; nu < pd.K(); ++nu)
      if (nu != mu) radius = std::min(radius, std::abs(p - pd.poles[nu].p));
    out.push_back(principal_part(p, 0.5 * radius, pd.poles[mu].multiplicity));
  }
  return out;
}

namespace {

struct ClosedFormFactors {
  ComplexMatrix p0t;     // p_0^T
  ComplexMatrix g, gt;   // G_n, G~_n
  ComplexMatrix pt;      // Pi_n Theta
};

ClosedFormFactors closed_form_factors(const BuildingBlocks& bb, long n) {
  ClosedFormFactors f;
  f.p0t = p_vec(bb.pd, 0).transpose();
  std::tie(f.g, f.gt) = g_matrices(bb, n);
  f.pt = pi_matrix(bb.pd, n) * bb.theta;
  return f;
}

// Row factors R with b^level_{n,j} = R * p_j (even) or R * conj(p_j) (odd).
std::pair<ComplexMatrix, bool> b_row(const ClosedFormFactors& f, int level, bool tilde) {
  const int k = (level + 1) / 2;
  const bool odd = level % 2 == 1;
  const ComplexMatrix loop = tilde ? ComplexMatrix(f.g * f.gt) : ComplexMatrix(f.gt * f.g);
  ComplexMatrix r = f.p0t;
  for (int i = 1; i < k; ++i) r = r * loop;
  if (!tilde) {
    if (odd) return {r * f.pt.adjoint(), true};
    return {r * f.gt * f.pt, false};
  }
  if (odd) return {r * f.pt, false};
  return {r * f.g * f.pt.adjoint(), true};
}

void require_series_horizon(const BuildingBlocks& bb, long n) {
  if (n < std::max(bb.m0, 1))
    throw Error(ErrorKind::InvalidArgument, "series form needs n >= max(m0, 1)");
}

}  // namespace

BSequences b_sequences(const BuildingBlocks& bb, long n, int k_max, long j_max, long truncation,
                       double tol) {
  require_series_horizon(bb, n);
  if (k_max < 0 || j_max < 0 || truncation < 1)
    throw Error(ErrorKind::InvalidArgument, "bad b-sequence extents");
  const Eigen::Index d = bb.d;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  auto recurse = [&](long trunc, bool tilde) {
    const long width = std::max(trunc, j_max + 1);
    MatrixList beta(n + 2 * width + 2);
    for (long k = 1; k < static_cast<long>(beta.size()); ++k) beta[k] = beta_closed_form(bb, k);
    std::vector<MatrixList> levels(k_max + 1, MatrixList(width, ComplexMatrix::Zero(d, d)));
    levels[0][0] = eye;
    for (int k = 1; k <= k_max; ++k) {
      // Odd levels of b use beta, even levels use beta^*; b~ swaps them.
      const bool use_adjoint = (k % 2 == 0) != tilde;
      for (long j = 0; j < width; ++j) {
        ComplexMatrix acc = ComplexMatrix::Zero(d, d);
        for (long l = 0; l < trunc; ++l) {
          const ComplexMatrix& bk = beta[n + j + l + 1];
          acc += use_adjoint ? ComplexMatrix(levels[k - 1][l] * bk.adjoint())
                             : ComplexMatrix(levels[k - 1][l] * bk);
        }
        levels[k][j] = acc;
      }
    }
    for (MatrixList& l : levels) l.resize(j_max + 1);
    return levels;
  };
  BSequences out;
  for (bool tilde : {false, true}) {
    const auto coarse = recurse(truncation, tilde);
    const auto fine = recurse(2 * truncation, tilde);
    double diff = 0.0, peak = 0.0;
    for (int k = 0; k <= k_max; ++k)
      for (long j = 0; j <= j_max; ++j) {
        diff = std::max(diff, max_abs(coarse[k][j] - fine[k][j]));
        peak = std::max(peak, max_abs(fine[k][j]));
      }
    if (diff > tol * std::max(1.0, peak))
      throw Error(ErrorKind::TruncationInsufficient, "b-sequence sums moved under doubling");
    (tilde ? out.recursion_tilde : out.recursion) = fine;
  }
  out.truncation = 2 * truncation;

  const ClosedFormFactors f = closed_form_factors(bb, n);
  for (bool tilde : {false, true}) {
    std::vector<MatrixList> levels(k_max + 1, MatrixList(j_max + 1, ComplexMatrix::Zero(d, d)));
    levels[0][0] = eye;
    for (int k = 1; k <= k_max; ++k) {
      const auto [row, conj] = b_row(f, k, tilde);
      for (long j = 0; j <= j_max; ++j) {
        const ComplexMatrix pj = p_vec(bb.pd, j);
        levels[k][j] = conj ? ComplexMatrix(row * pj.conjugate()) : ComplexMatrix(row * pj);
      }
    }
    (tilde ? out.closed_form_tilde : out.closed_form) = std::move(levels);
  }
  return out;
}

ComplexMatrix phi_series(const BuildingBlocks& bb, long n, long j, int k_max) {
  require_series_horizon(bb, n);
  if (j < 1 || j > n) throw Error(ErrorKind::InvalidArgument, "j must lie in 1..n");
  ComplexMatrix acc = bb.c0 * ar_coefficient(bb.pd, j);
  if (k_max <= 0) return acc;
  const ClosedFormFactors f = closed_form_factors(bb, n);
  const long i = n - j + 1;
  const double rel = 1e-17;
  for (int k = 1; k <= k_max; ++k) {
    const ComplexMatrix even = b_row(f, 2 * k, false).first;
    const ComplexMatrix odd = b_row(f, 2 * k - 1, false).first;
    acc += bb.c0 * sum_until_tail(
                       0,
                       [&](long l) -> ComplexMatrix {
                         return even * p_vec(bb.pd, l) * ar_coefficient(bb.pd, j + l);
                       },
                       rel, 1L << 20, "even series term");
    acc += bb.c0 * sum_until_tail(
                       0,
                       [&](long l) -> ComplexMatrix {
                         return odd * p_vec(bb.pd, l).conjugate() *
                                ar_tilde_coefficient(bb.pd_sharp, i + l);
                       },
                       rel, 1L << 20, "odd series term");
  }
  return acc;
}

AsymptoticsReport baxter_asymptotics(const BuildingBlocks& bb, const std::vector<long>& n_list,
                                     const Tolerances& tol) {
  if (bb.K < 1)
    throw Error(ErrorKind::AssumptionP1MaxViolated, "no poles: the predictor is exact at finite n");
  // Poles arrive sorted by decreasing modulus, so the dominant one is first.
  const Pole& lead = bb.pd.poles[0];
  const double r1 = std::abs(lead.p);
  if (bb.K > 1 && r1 - std::abs(bb.pd.poles[1].p) <= tol.zero * r1)
    throw Error(ErrorKind::AssumptionP1MaxViolated, "two poles share the largest modulus");

  AsymptoticsReport rep;
  rep.p1 = lead.p;
  rep.m1 = lead.multiplicity;
  const Eigen::Index d = bb.d;
  rep.H = ComplexMatrix::Zero(d, d * bb.M);
  rep.H.leftCols(d).setIdentity();

  const ComplexMatrix h_p1 = evaluate(bb.pd, lead.p).partialPivLu().inverse();
  const ComplexMatrix row = bb.c0 * h_p1.adjoint() * bb.pd_sharp.rho[0][rep.m1 - 1] * rep.H;
  const ComplexMatrix xi1c = bb.xi1.conjugate();
  const ComplexMatrix jc = bb.J.conjugate();
  ComplexMatrix stream = bb.rho_tilde;  // conj(J)^{k-1} rho_tilde
  rep.C1 = sum_until_tail(
      1,
      [&](long k) -> double {
        ComplexMatrix vt;
        if (k <= bb.m0) {
          vt = v_vectors(bb, k).second;
        } else {
          vt = xi1c * stream;
        }
        stream = jc * stream;
        const double term = op_norm(row * vt);
        rep.C1_terms.push_back(term);
        return term;
      },
      1e-14, 1L << 20, "C1 series");
  if (!(rep.C1 > 0.0))
    throw Error(ErrorKind::DegenerateLeadingResidue, "C1 vanished");

  const double fact = std::tgamma(static_cast<double>(rep.m1));
  const double lead_norm = op_norm(bb.c0 * bb.pd.rho[0][rep.m1 - 1]);
  rep.cor_limit = (1.0 - r1) * rep.C1 / (r1 * lead_norm);

  for (long n : n_list) {
    AsymptoticRow r;
    r.n = n;
    for (const ComplexMatrix& m : phi_diff_all(bb, n)) r.lhs_sum += op_norm(m);
    const double poly = std::pow(static_cast<double>(n), rep.m1 - 1) / fact;
    r.theorem_rhs = rep.C1 * poly * std::pow(r1, static_cast<double>(n));
    r.tail_formula = lead_norm * poly * std::pow(r1, static_cast<double>(n + 1)) / (1.0 - r1);
    r.tail_sum = sum_until_tail(
        n + 1, [&](long k) -> double { return op_norm(bb.c0 * ar_coefficient(bb.pd, k)); }, 1e-15,
        1L << 20, "predictor tail");
    r.cor_ratio = r.lhs_sum / r.tail_sum;
    r.leading_term = rep.C1 * std::abs(p_function(lead.p, rep.m1, n)) *
                     std::pow(r1, static_cast<double>(rep.m1));
    rep.rows.push_back(r);
  }
  return rep;
}

std::vector<long> asymptotic_window(const AsymptoticsReport& rep, double lo, double hi,
                                    long n_cap) {
  std::vector<long> out;
  const double r1 = std::abs(rep.p1);
  const double fact = std::tgamma(static_cast<double>(rep.m1));
  for (long n = 1; n <= n_cap; ++n) {
    const double v = rep.C1 * std::pow(static_cast<double>(n), rep.m1 - 1) / fact *
                     std::pow(r1, static_cast<double>(n));
    if (v >= lo && v <= hi) out.push_back(n);
    // Past the peak of n^{m-1}|p|^n the value only decreases.
    if (v < lo && n > (rep.m1 - 1) / std::max(1e-300, -std::log(r1))) break;
  }
  return out;
}

namespace {

Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * M_PI * u(rng));
}

// Left side of the binomial sum identity, truncated once the certified tail
// (term ratios decrease monotonically to |xy|) is negligible.
Complex binomial_series(long i, long j, long n, Complex x, Complex y) {
  Complex acc = 0.0;
  const double ax = std::abs(x), ay = std::abs(y);
  for (long l = i;; ++l) {
    if (l + n >= j) {
      const double c = binomial(l, i) * binomial(l + n, j);
      const Complex t = c * ipow(x, l - i) * ipow(y, l + n - j);
      acc += t;
      const double bound = c * std::pow(ax, l - i) * std::pow(ay, l + n - j);
      const double q = static_cast<double>(l + 1) / (l + 1 - i) *
                       static_cast<double>(l + n + 1) / (l + n + 1 - j) * ax * ay;
      if (q < 1.0 && bound * q / (1.0 - q) <= 1e-17 * std::max(1.0, std::abs(acc))) return acc;
    }
    if (l > 100000) return acc;
  }
}

Complex binomial_closed(long i, long j, long n, Complex x, Complex y) {
  Complex acc = 0.0;
  const Complex s = 1.0 - x * y;
  for (long r = 0; r <= j; ++r)
    acc += binomial(n + i, r) * binomial(i + j - r, i) * ipow(x, j - r) * ipow(y, n + i - r) /
           ipow(s, i + j + 1 - r);
  return acc;
}

OuterInverseDecomposition random_pole_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3), mult(1, 3), dim(1, 2);
  OuterInverseDecomposition pd;
  pd.d = dim(rng);
  const int k = count(rng);
  while (static_cast<int>(pd.poles.size()) < k) {
    const Complex p = random_in_disk(rng, 0.9);
    bool ok = std::abs(p) > 0.05;
    for (const Pole& q : pd.poles) ok = ok && std::abs(p - q.p) > 0.1;
    if (ok) pd.poles.push_back({p, mult(rng)});
  }
  return pd;
}

}  // namespace

Report identity_suite(unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(0, 6);
  Report rep;
  rep.title = "identity_suite";

  // Binomial sum identity on random inputs.
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const long i = small(rng), j = small(rng), n = small(rng);
    const Complex x = random_in_disk(rng, 0.9), y = random_in_disk(rng, 0.9);
    const Complex lhs = binomial_series(i, j, n, x, y);
    const Complex rhs = binomial_closed(i, j, n, x, y);
    // Scale by the sum of term moduli; the closed form cancels heavily near |xy| = 1.
    const double mass = std::abs(binomial_closed(i, j, n, std::abs(x), std::abs(y)));
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, mass));
  }
  rep.add(check_bound("binomial_sum.max_rel_error", worst, 1e-10));
  {
    const Complex x(0.3, 0.2), y(-0.4, 0.5);
    const Complex lhs = binomial_series(0, 0, 3, x, y);
    rep.add(check_bound("binomial_sum.i0_j0", std::abs(lhs - ipow(y, 3) / (1.0 - x * y)), 1e-12));
    Complex direct = 0.0;  // sum l^2 0.25^{l-1}
    for (long l = 1; l < 400; ++l) direct += static_cast<double>(l * l) * std::pow(0.25, l - 1);
    rep.add(check_close("binomial_sum.i1_j1_half", std::abs(binomial_closed(1, 1, 0, 0.5, 0.5)),
                        std::abs(direct), 1e-10));
  }

  // The two symmetric forms of the n = 0 case and the coefficient identity.
  double sym = 0.0, coef = 0.0;
  for (int c = 0; c < 50; ++c) {
    const long i = small(rng), j = small(rng);
    const Complex x = random_in_disk(rng, 0.9), y = random_in_disk(rng, 0.9);
    const Complex s = 1.0 - x * y;
    Complex a = 0.0, b = 0.0;
    for (long r = 0; r <= j; ++r)
      a += binomial(i, r) * binomial(i + j - r, i) * ipow(x, j - r) * ipow(y, i - r) /
           ipow(s, i + j + 1 - r);
    for (long r = 0; r <= i; ++r)
      b += binomial(j, r) * binomial(i + j - r, j) * ipow(x, j - r) * ipow(y, i - r) /
           ipow(s, i + j + 1 - r);
    sym = std::max(sym, std::abs(a - b) / std::max(1.0, std::abs(a)));
    for (long r = 0; r <= std::max(i, j); ++r)
      coef = std::max(coef, std::abs(binomial(i, r) * binomial(i + j - r, i) -
                                     binomial(j, r) * binomial(i + j - r, j)));
  }
  rep.add(check_bound("binomial_sum.symmetric_form", sym, 1e-12));
  rep.add(check_bound("binomial_sum.coefficient_swap", coef, 0.0));

  // Linear independence of the p-vectors and positive definiteness of Lambda.
  double worst_rcond = 1.0, det_power = 0.0, min_eig = 1e300, lambda_err = 0.0;
  for (int c = 0; c < 20; ++c) {
    const OuterInverseDecomposition pd = random_pole_set(rng);
    const int m = pd.M();
    const Eigen::Index d = pd.d;
    for (long start : {0L, 1L, 5L}) {
      ComplexMatrix big(d * m, d * m), scalar(m, m);
      for (int c2 = 0; c2 < m; ++c2) {
        const ComplexMatrix v = p_vec(pd, start + c2);
        big.middleCols(c2 * d, d) = v;
        for (int r = 0; r < m; ++r) scalar(r, c2) = v(r * d, 0);
      }
      Eigen::JacobiSVD<ComplexMatrix> svd(scalar);
      const auto& sv = svd.singularValues();
      worst_rcond = std::min(worst_rcond, sv(sv.size() - 1) / sv(0));
      // The block matrix is a row and column permutation of scalar (x) I_d.
      const Complex db = big.determinant(), ds = std::pow(scalar.determinant(), d);
      det_power = std::max(det_power, std::abs(std::abs(db) - std::abs(ds)) /
                                          std::max(1e-300, std::abs(ds)));
    }
    const ComplexMatrix lambda = lambda_matrix(pd);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(lambda));
    min_eig = std::min(min_eig, es.eigenvalues()(0));
    ComplexMatrix direct = ComplexMatrix::Zero(m * d, m * d);
    for (long l = 0; l < 4000; ++l) {
      const ComplexMatrix v = p_vec(pd, l);
      direct += v * v.adjoint();
    }
    lambda_err = std::max(lambda_err, max_abs(direct - lambda) / std::max(1.0, max_abs(lambda)));
  }
  rep.add(check_true("pvec.independent.min_rcond", worst_rcond > 1e-14, worst_rcond, 1e-14));
  rep.add(check_bound("pvec.det_power.rel_error", det_power, 1e-8));
  rep.add(check_true("lambda.positive_definite.min_eig", min_eig > 0.0, min_eig, 0.0));
  rep.add(check_bound("lambda.series.rel_error", lambda_err, 1e-9));

  // Difference identity for p_{mu,i}.
  double diff = 0.0;
  std::uniform_int_distribution<int> idx(1, 5), lag(0, 30);
  for (int c = 0; c < 100; ++c) {
    const Complex pm = random_in_disk(rng, 0.95), pn = random_in_disk(rng, 0.95);
    const int i = idx(rng);
    const long k = lag(rng);
    const Complex lhs = p_function(pm, i, k + 1) - pn * p_function(pm, i, k);
    const Complex rhs = (pm - pn) * p_function(pm, i, k) + p_function(pm, i - 1, k);
    diff = std::max(diff, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  rep.add(check_bound("pfunction.difference.max_rel_error", diff, 1e-12));
  return rep;
}

}  // namespace armapred

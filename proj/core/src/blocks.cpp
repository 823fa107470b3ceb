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

#include "armapred/blocks.hpp"

#include <algorithm>
#include <cmath>

namespace armapred {

namespace {

// S (x) I_d.
ComplexMatrix kron_identity(const ComplexMatrix& s, Eigen::Index d) {
  ComplexMatrix out = ComplexMatrix::Zero(s.rows() * d, s.cols() * d);
  for (Eigen::Index r = 0; r < s.rows(); ++r)
    for (Eigen::Index c = 0; c < s.cols(); ++c)
      if (s(r, c) != Complex(0.0))
        out.block(r * d, c * d, d, d).diagonal().setConstant(s(r, c));
  return out;
}

std::vector<int> offsets(const OuterInverseDecomposition& pd) {
  std::vector<int> off(pd.K() + 1, 0);
  for (int mu = 0; mu < pd.K(); ++mu) off[mu + 1] = off[mu] + pd.poles[mu].multiplicity;
  return off;
}

constexpr int kInitialTaylorNodes = 64;

}  // namespace

Complex p_function(Complex p, int i, long n) {
  if (i - 1 > n) return 0.0;
  return binomial(n, i - 1) * ipow(p, n - i + 1);
}

ComplexMatrix p_vec(const OuterInverseDecomposition& pd, long n) {
  ComplexMatrix s(pd.M(), 1);
  int row = 0;
  for (const Pole& p : pd.poles)
    for (int i = 1; i <= p.multiplicity; ++i) s(row++, 0) = p_function(p.p, i, n);
  return kron_identity(s, pd.d);
}

ComplexMatrix lambda_matrix(const OuterInverseDecomposition& pd) {
  const std::vector<int> off = offsets(pd);
  ComplexMatrix s(pd.M(), pd.M());
  for (int mu = 0; mu < pd.K(); ++mu) {
    for (int nu = 0; nu < pd.K(); ++nu) {
      const Complex pm = pd.poles[mu].p, pn = std::conj(pd.poles[nu].p);
      const Complex denom = 1.0 - pm * pn;
      for (int i = 1; i <= pd.poles[mu].multiplicity; ++i) {
        for (int j = 1; j <= pd.poles[nu].multiplicity; ++j) {
          Complex acc = 0.0;
          for (int r = 0; r <= std::min(j - 1, i - 1); ++r) {
            acc += binomial(i - 1, r) * binomial(i + j - r - 2, i - 1) * ipow(pm, j - r - 1) *
                   ipow(pn, i - r - 1) / ipow(denom, i + j - r - 1);
          }
          s(off[mu] + i - 1, off[nu] + j - 1) = acc;
        }
      }
    }
  }
  return kron_identity(s, pd.d);
}

ComplexMatrix xi_direct(const OuterInverseDecomposition& pd, long n) {
  const std::vector<int> off = offsets(pd);
  ComplexMatrix s(pd.M(), pd.M());
  for (int mu = 0; mu < pd.K(); ++mu) {
    for (int nu = 0; nu < pd.K(); ++nu) {
      const Complex pm = pd.poles[mu].p, pn = std::conj(pd.poles[nu].p);
      const Complex denom = 1.0 - pm * pn;
      for (int i = 1; i <= pd.poles[mu].multiplicity; ++i) {
        for (int j = 1; j <= pd.poles[nu].multiplicity; ++j) {
          Complex acc = 0.0;
          for (int r = 0; r <= j - 1; ++r) {
            acc += binomial(n + i + j - 2, r) * binomial(i + j - r - 2, i - 1) *
                   ipow(pm, j - r - 1) * ipow(pn, n + i + j - r - 2) / ipow(denom, i + j - r - 1);
          }
          s(off[mu] + i - 1, off[nu] + j - 1) = acc;
        }
      }
    }
  }
  return kron_identity(s, pd.d);
}

ComplexMatrix j_matrix(const OuterInverseDecomposition& pd) {
  // Pascal's rule on binom(n+l+j-1, j-1) conj(p)^{n+l} gives
  // Xi_{n+1}(i,j) = conj(p) (Xi_n(i,j) + Xi_n(i,j-1)).
  const std::vector<int> off = offsets(pd);
  ComplexMatrix s = ComplexMatrix::Zero(pd.M(), pd.M());
  for (int nu = 0; nu < pd.K(); ++nu) {
    const Complex pn = std::conj(pd.poles[nu].p);
    for (int j = 0; j < pd.poles[nu].multiplicity; ++j) {
      s(off[nu] + j, off[nu] + j) = pn;
      if (j + 1 < pd.poles[nu].multiplicity) s(off[nu] + j, off[nu] + j + 1) = pn;
    }
  }
  return kron_identity(s, pd.d);
}

MatrixList xi_sequence(const OuterInverseDecomposition& pd, long n_max) {
  MatrixList xi;
  if (n_max < 1) return xi;
  const ComplexMatrix J = j_matrix(pd);
  xi.reserve(n_max);
  xi.push_back(xi_direct(pd, 1));
  for (long n = 2; n <= n_max; ++n) xi.push_back(xi.back() * J);
  return xi;
}

MatrixList sharp_taylor_at(const OuterInverseDecomposition& pd_sharp, Complex p, int count,
                           const Tolerances& tol) {
  const double gap = 1.0 - std::abs(p);
  if (!(gap > 1e-6))
    throw Error(ErrorKind::NearPoleDifferentiation, "expansion point too close to the unit circle");
  const double radius = 0.5 * gap;
  const Eigen::Index d = pd_sharp.d;
  auto run = [&](int nodes) {
    MatrixList t(count, ComplexMatrix::Zero(d, d));
    double peak = 0.0;
    for (int g = 0; g < nodes; ++g) {
      const Complex u = radius * unit_root(g, nodes);
      const ComplexMatrix f = evaluate(pd_sharp, p + u).partialPivLu().inverse();
      peak = std::max(peak, op_norm(f));
      const Complex inv = 1.0 / u;
      Complex uk = 1.0;
      for (int k = 0; k < count; ++k) {
        t[k] += uk * f;
        uk *= inv;
      }
    }
    for (ComplexMatrix& m : t) m /= static_cast<double>(nodes);
    return std::make_pair(t, peak);
  };
  int nodes = kInitialTaylorNodes;
  auto prev = run(nodes);
  while (true) {
    nodes *= 2;
    if (nodes > tol.max_contour_nodes)
      throw Error(ErrorKind::NearPoleDifferentiation, "Taylor contour integrals did not stabilize");
    auto next = run(nodes);
    double diff = 0.0, rk = 1.0;
    for (int k = 0; k < count; ++k) {
      diff = std::max(diff, op_norm(next.first[k] - prev.first[k]) * rk);
      rk *= radius;
    }
    if (diff <= tol.residue_agreement * std::max(1.0, next.second)) return next.first;
    prev = std::move(next);
  }
}

std::vector<MatrixList> theta_coefficients(const OuterInverseDecomposition& pd,
                                           const OuterInverseDecomposition& pd_sharp,
                                           const Tolerances& tol) {
  std::vector<MatrixList> out(pd.K() + 1);
  const Eigen::Index d = pd.d;
  if (pd.m0() >= 1) {
    const MatrixList t = sharp_taylor_at(pd_sharp, Complex(0.0), pd.m0(), tol);
    for (int j = 1; j <= pd.m0(); ++j) {
      ComplexMatrix acc = ComplexMatrix::Zero(d, d);
      for (int l = j; l <= pd.m0(); ++l) acc += t[l - j] * pd.rho0j[l - 1].adjoint();
      out[0].push_back(acc);
    }
  }
  for (int mu = 0; mu < pd.K(); ++mu) {
    const Complex p = pd.poles[mu].p;
    const int m = pd.poles[mu].multiplicity;
    const MatrixList t = sharp_taylor_at(pd_sharp, p, m, tol);
    for (int j = 1; j <= m; ++j) {
      ComplexMatrix acc = ComplexMatrix::Zero(d, d);
      for (int l = j; l <= m; ++l) {
        // Taylor coefficient (l-j) of z^l h_sharp(z) at p.
        ComplexMatrix coef = ComplexMatrix::Zero(d, d);
        for (int i = 0; i <= l - j; ++i) coef += (binomial(l, i) * ipow(p, l - i)) * t[l - j - i];
        acc += coef * pd.rho[mu][l - 1].adjoint();
      }
      out[mu + 1].push_back(acc);
    }
  }
  return out;
}

ComplexMatrix theta_matrix(const OuterInverseDecomposition& pd,
                           const std::vector<MatrixList>& theta_coef) {
  const Eigen::Index d = pd.d;
  const std::vector<int> off = offsets(pd);
  ComplexMatrix theta = ComplexMatrix::Zero(d * pd.M(), d * pd.M());
  for (int mu = 0; mu < pd.K(); ++mu) {
    const int m = pd.poles[mu].multiplicity;
    for (int a = 1; a <= m; ++a)
      for (int b = 1; a + b - 1 <= m; ++b)
        theta.block((off[mu] + a - 1) * d, (off[mu] + b - 1) * d, d, d) =
            theta_coef[mu + 1][a + b - 2];
  }
  return theta;
}

ComplexMatrix pi_matrix(const OuterInverseDecomposition& pd, long n) {
  const std::vector<int> off = offsets(pd);
  ComplexMatrix s = ComplexMatrix::Zero(pd.M(), pd.M());
  for (int mu = 0; mu < pd.K(); ++mu) {
    const int m = pd.poles[mu].multiplicity;
    for (int a = 1; a <= m; ++a)
      for (int b = a; b <= m; ++b) s(off[mu] + a - 1, off[mu] + b - 1) = p_function(pd.poles[mu].p, b - a + 1, n);
  }
  return kron_identity(s, pd.d);
}

std::pair<ComplexMatrix, ComplexMatrix> rho_stacks(const OuterInverseDecomposition& pd,
                                                   const OuterInverseDecomposition& pd_sharp) {
  const Eigen::Index d = pd.d;
  ComplexMatrix rho(d * pd.M(), d), rho_tilde(d * pd.M(), d);
  int row = 0;
  for (int mu = 0; mu < pd.K(); ++mu) {
    for (int j = 0; j < pd.poles[mu].multiplicity; ++j) {
      rho.block(row * d, 0, d, d) = pd.rho[mu][j];
      rho_tilde.block(row * d, 0, d, d) = pd_sharp.rho[mu][j].adjoint();
      ++row;
    }
  }
  return {rho, rho_tilde};
}

BuildingBlocks build_blocks(const OuterInverseDecomposition& pd,
                            const OuterInverseDecomposition& pd_sharp, const Tolerances& tol) {
  if (pd.K() < 1) throw Error(ErrorKind::InvalidArgument, "building blocks require K >= 1");
  if (pd_sharp.d != pd.d || pd_sharp.K() != pd.K() || pd_sharp.m0() != pd.m0())
    throw Error(ErrorKind::InsufficientSharpData, "h_sharp pole data does not match h");
  BuildingBlocks bb;
  bb.d = pd.d;
  bb.K = pd.K();
  bb.M = pd.M();
  bb.m0 = pd.m0();
  bb.pd = pd;
  bb.pd_sharp = pd_sharp;
  bb.lambda = lambda_matrix(pd);
  bb.theta_coef = theta_coefficients(pd, pd_sharp, tol);
  bb.theta = theta_matrix(pd, bb.theta_coef);
  bb.J = j_matrix(pd);
  bb.xi1 = xi_direct(pd, 1);
  std::tie(bb.rho, bb.rho_tilde) = rho_stacks(pd, pd_sharp);
  bb.c0 = -ar_coefficient(pd, 0).partialPivLu().inverse();
  bb.p0 = p_vec(pd, 0);
  return bb;
}

std::pair<ComplexMatrix, ComplexMatrix> v_vectors(const BuildingBlocks& bb, long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "v_n requires n >= 1");
  const ComplexMatrix xi = xi_direct(bb.pd, n);
  ComplexMatrix v = xi * bb.rho;
  ComplexMatrix vt = xi.conjugate() * bb.rho_tilde;
  for (long l = 0; l <= bb.m0 - n; ++l) {
    const ComplexMatrix p = p_vec(bb.pd, l);
    v += p * bb.pd.rho0j[n + l - 1];
    vt += p.conjugate() * bb.pd_sharp.rho0j[n + l - 1].adjoint();
  }
  return {v, vt};
}

}  // namespace armapred

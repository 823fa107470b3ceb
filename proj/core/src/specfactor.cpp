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

#include "armapred/specfactor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "armapred/fourier.hpp"

namespace armapred {

namespace {

constexpr int kMaxWilsonIterations = 100;
// Wilson stops early once the residual reaches rounding level.
constexpr double kWilsonFloor = 1e-14;

double relative_factor_residual(const MatrixList& sharp, const MatrixList& density) {
  double err = 0.0, scale = 0.0;
  for (size_t g = 0; g < sharp.size(); ++g) {
    err = std::max(err, op_norm(sharp[g].adjoint() * sharp[g] - density[g]));
    scale = std::max(scale, op_norm(density[g]));
  }
  return err / scale;
}

}  // namespace

ComplexMatrix SharpFactor::taylor_at(Complex z) const {
  ComplexMatrix acc = ComplexMatrix::Zero(taylor.front().rows(), taylor.front().cols());
  for (auto it = taylor.rbegin(); it != taylor.rend(); ++it) acc = acc * z + *it;
  return acc;
}

MatrixList spectral_density(const RationalMatrixFunction& h, long grid) {
  MatrixList w(grid);
  for (long g = 0; g < grid; ++g) {
    const ComplexMatrix v = h(unit_root(g, grid));
    w[g] = v * v.adjoint();
  }
  return w;
}

MatrixList wilson_factor(const MatrixList& density, double tol, int max_iterations,
                         int* iterations, double* residual) {
  const long n = static_cast<long>(density.size());
  const Eigen::Index d = density.front().rows();
  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& s : density) mean += s;
  mean /= static_cast<double>(n);
  Eigen::LLT<ComplexMatrix> llt(hermitian_part(mean));
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "mean spectral density is not positive definite");
  MatrixList psi(n, ComplexMatrix(llt.matrixL()));
  double scale = 0.0;
  for (const ComplexMatrix& s : density) scale = std::max(scale, op_norm(s));

  auto residual_of = [&](const MatrixList& f) {
    double err = 0.0;
    for (long g = 0; g < n; ++g) err = std::max(err, op_norm(f[g] * f[g].adjoint() - density[g]));
    return err / scale;
  };

  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  double res = residual_of(psi);
  double prev = std::numeric_limits<double>::infinity();
  int it = 0;
  MatrixList gsamples(n);
  while (it < max_iterations && res > kWilsonFloor && !(res <= tol && res > 0.5 * prev)) {
    for (long g = 0; g < n; ++g) {
      const ComplexMatrix inv = psi[g].partialPivLu().inverse();
      gsamples[g] = inv * density[g] * inv.adjoint() + eye;
    }
    MatrixList coef = fourier::forward(gsamples);
    for (long k = 0; k < n; ++k) {
      if (k == 0) {
        coef[k] *= 0.5;
      } else if (k >= n / 2) {
        coef[k].setZero();
      }
    }
    MatrixList plus = fourier::inverse(coef);
    for (long g = 0; g < n; ++g) psi[g] = psi[g] * plus[g];
    ++it;
    prev = res;
    res = residual_of(psi);
  }
  if (iterations) *iterations = it;
  if (residual) *residual = res;
  if (!(res <= tol))
    throw Error(ErrorKind::NoConvergence, "Wilson iteration did not reach the factorization tolerance");
  return psi;
}

namespace {

SharpFactor wilson_sharp(const RationalMatrixFunction& h, long grid, const Tolerances& tol) {
  const MatrixList w = spectral_density(h, grid);
  MatrixList reversed(grid);
  for (long g = 0; g < grid; ++g) reversed[g] = w[(grid - g) % grid];
  SharpFactor sf;
  sf.grid = grid;
  const MatrixList psi =
      wilson_factor(reversed, tol.factorization, kMaxWilsonIterations, &sf.iterations, nullptr);
  MatrixList coef = fourier::forward(psi);
  sf.taylor.resize(grid / 2);
  for (long k = 0; k < grid / 2; ++k) sf.taylor[k] = coef[k].adjoint() / static_cast<double>(grid);
  sf.samples.resize(grid);
  for (long g = 0; g < grid; ++g) sf.samples[g] = psi[(grid - g) % grid].adjoint();
  const ComplexMatrix u = polar_unitary(sf.taylor[0]);
  sf.gauge = u.adjoint();
  for (ComplexMatrix& m : sf.taylor) m = sf.gauge * m;
  for (ComplexMatrix& m : sf.samples) m = sf.gauge * m;
  sf.taylor[0] = hermitian_part(sf.taylor[0]);
  sf.residual = relative_factor_residual(sf.samples, w);
  return sf;
}

}  // namespace

SharpFactor factorize_sharp(const RationalMatrixFunction& h, long grid, const Tolerances& tol) {
  if (grid < 256 || (grid & (grid - 1)) != 0)
    throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two >= 256");
  const Eigen::Index d = h.dim();
  if (d == 1) {
    SharpFactor sf;
    sf.grid = grid;
    sf.samples.resize(grid);
    for (long g = 0; g < grid; ++g) sf.samples[g] = h(unit_root(g, grid));
    sf.taylor = taylor_coefficients(h, static_cast<int>(grid / 2) - 1);
    sf.gauge = ComplexMatrix::Identity(1, 1);
    return sf;
  }
  SharpFactor coarse = wilson_sharp(h, grid, tol);
  for (long n = 2 * grid; n <= tol.max_grid; n *= 2) {
    SharpFactor fine = wilson_sharp(h, n, tol);
    double diff = 0.0, scale = 0.0;
    for (long g = 0; g < coarse.grid; ++g) {
      diff = std::max(diff, op_norm(fine.samples[2 * g] - coarse.samples[g]));
      scale = std::max(scale, op_norm(coarse.samples[g]));
    }
    if (diff <= tol.grid_agreement * std::max(1.0, scale)) return fine;
    coarse = std::move(fine);
  }
  throw Error(ErrorKind::GridTooCoarse, "h_sharp samples did not stabilize under grid doubling");
}

ComplexMatrix sharp_at(const OuterInverseDecomposition& pd_sharp, Complex z) {
  return evaluate(pd_sharp, z).partialPivLu().inverse();
}

OuterInverseDecomposition extract_sharp_poledata(const SharpFactor& sf,
                                                 const OuterInverseDecomposition& pd,
                                                 const Tolerances& tol, double* fit_residual) {
  const Eigen::Index d = pd.d;
  if (d == 1) {
    if (fit_residual) *fit_residual = 0.0;
    return pd;
  }
  const long n = sf.grid;
  const int nb = 1 + pd.M() + pd.m0();
  ComplexMatrix basis(n, nb);
  ComplexMatrix rhs(n, d * d);
  for (long g = 0; g < n; ++g) {
    const Complex z = unit_root(g, n);
    int col = 0;
    basis(g, col++) = 1.0;
    for (const Pole& p : pd.poles) {
      const Complex base = 1.0 / (1.0 - std::conj(p.p) * z);
      Complex f = 1.0;
      for (int j = 0; j < p.multiplicity; ++j) basis(g, col++) = (f *= base);
    }
    Complex zj = 1.0;
    for (int j = 0; j < pd.m0(); ++j) basis(g, col++) = (zj *= z);
    const ComplexMatrix target = -sf.samples[g].partialPivLu().inverse();
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) rhs(g, r * d + c) = target(r, c);
  }
  Eigen::VectorXd colscale = basis.colwise().norm().transpose();
  for (int c = 0; c < nb; ++c) basis.col(c) /= colscale(c);
  Eigen::HouseholderQR<ComplexMatrix> qr(basis);
  const ComplexMatrix r = qr.matrixQR().topRows(nb).triangularView<Eigen::Upper>();
  const double cond = condition_number(r);
  if (!(cond * cond <= tol.max_normal_condition))
    throw Error(ErrorKind::IllConditionedBasis, "ansatz basis is ill-conditioned on the grid");
  ComplexMatrix x = qr.solve(rhs);
  const double resid = (basis * x - rhs).norm() / rhs.norm();
  if (fit_residual) *fit_residual = resid;
  if (!(resid <= tol.sharp_fit))
    throw Error(ErrorKind::ResidualTooLarge, "h_sharp^{-1} does not fit the partial fraction form");
  for (int c = 0; c < nb; ++c) x.row(c) /= colscale(c);

  auto block = [&](int row) {
    ComplexMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = x(row, i * d + j);
    return m;
  };
  OuterInverseDecomposition out;
  out.d = d;
  out.poles = pd.poles;
  int row = 0;
  out.rho0 = block(row++);
  for (const Pole& p : pd.poles) {
    MatrixList list;
    for (int j = 0; j < p.multiplicity; ++j) list.push_back(block(row++));
    out.rho.push_back(std::move(list));
  }
  for (int j = 0; j < pd.m0(); ++j) out.rho0j.push_back(block(row++));
  for (const MatrixList& l : out.rho)
    if (op_norm(l.back()) <= tol.zero)
      throw Error(ErrorKind::DegenerateLeadingResidue, "leading h_sharp residue vanishes");
  return out;
}

SharpFactor sharp_from_poledata(const RationalMatrixFunction& h,
                                const OuterInverseDecomposition& pd_sharp, long grid,
                                const Tolerances& tol) {
  pd_sharp.validate(tol);
  SharpFactor sf;
  sf.grid = grid;
  sf.gauge = ComplexMatrix::Identity(pd_sharp.d, pd_sharp.d);
  sf.samples.resize(grid);
  for (long g = 0; g < grid; ++g) sf.samples[g] = sharp_at(pd_sharp, unit_root(g, grid));
  // htilde = (-sum atilde_k z^k)^{-1}; h_sharp Taylor coefficients are ctilde_k^*.
  const long terms = grid / 2;
  MatrixList atilde(terms);
  for (long k = 0; k < terms; ++k) atilde[k] = ar_tilde_coefficient(pd_sharp, k);
  const ComplexMatrix inv0 = atilde[0].partialPivLu().inverse();
  MatrixList ctilde(terms);
  ctilde[0] = -inv0;
  for (long k = 1; k < terms; ++k) {
    ComplexMatrix acc = ComplexMatrix::Zero(pd_sharp.d, pd_sharp.d);
    for (long i = std::max(0L, k - terms); i < k; ++i) acc += ctilde[i] * atilde[k - i];
    ctilde[k] = -acc * inv0;
  }
  sf.taylor.resize(terms);
  for (long k = 0; k < terms; ++k) sf.taylor[k] = ctilde[k].adjoint();
  sf.residual = relative_factor_residual(sf.samples, spectral_density(h, grid));
  if (!(sf.residual <= tol.factorization))
    throw Error(ErrorKind::ResidualTooLarge, "supplied h_sharp does not factor the spectral density");
  sf.poledata = pd_sharp;
  return sf;
}

double CorrespondenceReport::max_residual() const {
  double m = 0.0;
  for (const CorrespondenceRow& r : rows) m = std::max(m, r.residual);
  return m;
}

CorrespondenceReport verify_pole_correspondence(const RationalMatrixFunction& h,
                                                const OuterInverseDecomposition& pd,
                                                const OuterInverseDecomposition& pd_sharp) {
  CorrespondenceReport report;
  auto check = [&](int mu, Complex p, const ComplexMatrix& rho, const ComplexMatrix& rho_sharp) {
    const ComplexMatrix lhs = rho * sharp_at(pd_sharp, p).adjoint();
    const ComplexMatrix rhs = h(p).adjoint() * rho_sharp;
    const double scale = std::max({op_norm(lhs), op_norm(rhs), std::numeric_limits<double>::min()});
    report.rows.push_back({mu, p, op_norm(lhs - rhs) / scale});
  };
  if (pd.m0() >= 1) check(0, Complex(0.0), pd.rho0j.back(), pd_sharp.rho0j.back());
  for (int mu = 0; mu < pd.K(); ++mu)
    check(mu + 1, pd.poles[mu].p, pd.rho[mu].back(), pd_sharp.rho[mu].back());
  return report;
}

OuterInverseDecomposition apply_gauge(const OuterInverseDecomposition& pd_sharp,
                                      const ComplexMatrix& unitary) {
  OuterInverseDecomposition out = pd_sharp;
  const ComplexMatrix ua = unitary.adjoint();
  out.rho0 = out.rho0 * ua;
  for (MatrixList& l : out.rho)
    for (ComplexMatrix& m : l) m = m * ua;
  for (ComplexMatrix& m : out.rho0j) m = m * ua;
  return out;
}

}  // namespace armapred

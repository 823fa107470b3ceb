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

#include "armapred/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>

#include "armapred/fourier.hpp"
#include "armapred/parallel.hpp"

namespace armapred {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string describe(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gj", z.real(), z.imag());
  return buf;
}

// Throws NotStable naming the first offending location.
void require_condition_C(const RationalMatrixFunction& h, const Tolerances& tol) {
  const ConditionReport c = check_condition_C(h, tol);
  if (!c.zeros_inside.empty())
    throw Error(ErrorKind::NotStable, "det h vanishes at " + describe(c.zeros_inside.front()) +
                                          " inside the closed unit disk");
  if (!c.poles_inside.empty())
    throw Error(ErrorKind::NotStable,
                "h has a pole at " + describe(c.poles_inside.front()) + " in the closed unit disk");
}

PredictorTable levinson_table(const PreparedModel& pm, long n) {
  const LevinsonResult r = durbin_levinson(covariances(pm, n), n);
  PredictorTable t;
  t.n = n;
  t.method = "oracle-fallback";
  t.phi = r.forward;
  t.phi_inf = infinite_predictor(pm.pd, n);
  return t;
}

std::pair<double, double> deviations(const MatrixList& closed, const MatrixList& oracle) {
  std::vector<double> dev(closed.size());
  for (std::size_t j = 0; j < closed.size(); ++j)
    dev[j] = op_norm(closed[j] - oracle[j]) / (1.0 + op_norm(oracle[j]));
  if (dev.empty()) return {0.0, 0.0};
  const double mx = *std::max_element(dev.begin(), dev.end());
  std::nth_element(dev.begin(), dev.begin() + dev.size() / 2, dev.end());
  return {mx, dev[dev.size() / 2]};
}

}  // namespace

PreparedModel prepare(const ModelSpec& spec, long grid, const Tolerances& tol) {
  PreparedModel pm;
  pm.tol = tol;
  pm.h = build_h(spec, tol, false);
  require_condition_C(pm.h, tol);
  pm.pd = spec.h_inverse_poledata ? *spec.h_inverse_poledata : decompose_inverse(pm.h, tol);
  if (spec.h_sharp_inverse_poledata) {
    pm.sharp_supplied = true;
    pm.pd_sharp = *spec.h_sharp_inverse_poledata;
    pm.sf = sharp_from_poledata(pm.h, pm.pd_sharp, grid, tol);
  } else {
    pm.sf = factorize_sharp(pm.h, grid, tol);
    pm.pd_sharp = extract_sharp_poledata(pm.sf, pm.pd, tol, &pm.sf.fit_residual);
    pm.sf.poledata = pm.pd_sharp;
  }
  if (pm.pd.K() > 0) pm.blocks = build_blocks(pm.pd, pm.pd_sharp, tol);
  return pm;
}

PredictorTable predict(const PreparedModel& pm, long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  if (n < pm.pd.m0()) return levinson_table(pm, n);
  if (!pm.blocks) return phi_ar_exact(pm.pd, n);
  return phi_all(*pm.blocks, n);
}

MatrixList covariances(const PreparedModel& pm, long n) {
  const SeriesCoefficients s = series_until(pm.h, pm.pd, pm.pd_sharp, pm.tol.series_tail);
  return autocovariances(s, n, 1e-14);
}

std::vector<ComparisonRow> compare(const PreparedModel& pm, const std::vector<long>& n_list,
                                   OracleKind oracle) {
  if (n_list.empty()) return {};
  for (long n : n_list)
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  const long n_max = *std::max_element(n_list.begin(), n_list.end());
  const MatrixList gamma = covariances(pm, n_max);

  std::vector<PredictorTable> closed(n_list.size());
  std::vector<double> closed_seconds(n_list.size());
  parallel_for(static_cast<long>(n_list.size()), [&](long i) {
    const auto t0 = Clock::now();
    closed[i] = predict(pm, n_list[i]);
    closed_seconds[i] = seconds_since(t0);
  });

  std::vector<ComparisonRow> rows;
  if (oracle != OracleKind::Dense) {
    std::map<long, std::pair<MatrixList, double>> orders;
    for (long n : n_list) orders[n];
    const auto t0 = Clock::now();
    durbin_levinson(gamma, n_max, [&](long m, const MatrixList& a) {
      auto it = orders.find(m);
      if (it != orders.end()) it->second = {a, seconds_since(t0)};
    });
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      const auto& [a, secs] = orders.at(n_list[i]);
      ComparisonRow r;
      r.n = n_list[i];
      r.oracle = "dl";
      r.method = closed[i].method;
      std::tie(r.max_deviation, r.median_deviation) = deviations(closed[i].phi, a);
      r.closed_seconds = closed_seconds[i];
      r.oracle_seconds = secs;
      rows.push_back(r);
    }
  }
  if (oracle != OracleKind::DurbinLevinson) {
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      const auto t0 = Clock::now();
      const MatrixList a = yule_walker_dense(gamma, n_list[i]);
      ComparisonRow r;
      r.n = n_list[i];
      r.oracle = "dense";
      r.method = closed[i].method;
      r.oracle_seconds = seconds_since(t0);
      std::tie(r.max_deviation, r.median_deviation) = deviations(closed[i].phi, a);
      r.closed_seconds = closed_seconds[i];
      rows.push_back(r);
    }
  }
  return rows;
}

Report validate_model(const ModelSpec& spec, long grid, const Tolerances& tol,
                      unsigned long long seed) {
  Report rep;
  rep.title = spec.name.empty() ? "validate" : "validate " + spec.name;
  const RationalMatrixFunction h = build_h(spec, tol, false);
  const ConditionReport cond = check_condition_C(h, tol);
  for (Complex z : cond.zeros_inside)
    rep.add(check_true("condition_C.zero_inside_at_" + describe(z), false, std::abs(z), 1.0));
  for (Complex z : cond.poles_inside)
    rep.add(check_true("condition_C.pole_inside_at_" + describe(z), false, std::abs(z), 1.0));
  if (!cond.pass()) return rep;
  rep.add(check_true("condition_C", true, 0.0, 0.0));

  const PreparedModel pm = prepare(spec, grid, tol);
  const Eigen::Index d = pm.pd.d;

  // Pole data reproduces h^{-1} off the unit circle.
  double recon = 0.0;
  for (int g = 0; g < 64; ++g) {
    const Complex z = 0.95 * unit_root(g, 64);
    const ComplexMatrix direct = h.inverse_at(z);
    recon = std::max(recon, op_norm(evaluate(pm.pd, z) - direct) / op_norm(direct));
  }
  rep.add(check_bound("poledata.reconstruction", recon, 1e-9));

  const ComplexMatrix c0 = -ar_coefficient(pm.pd, 0).inverse();
  rep.add(check_bound("c0_a0_plus_identity",
                      max_abs(c0 * ar_coefficient(pm.pd, 0) + ComplexMatrix::Identity(d, d)),
                      1e-12));

  // AR coefficients against the Fourier coefficients of -h^{-1} on the circle.
  {
    const long g = 1024;
    MatrixList samples(g);
    for (long i = 0; i < g; ++i) samples[i] = -h.inverse_at(unit_root(i, g));
    const MatrixList coef = fourier::forward(samples);
    double worst = 0.0;
    for (long k = 0; k <= 64; ++k)
      worst = std::max(worst, max_abs(coef[k] / static_cast<double>(g) - ar_coefficient(pm.pd, k)));
    rep.add(check_bound("ar_coefficients.vs_circle", worst, 1e-10));
  }

  // Autocovariances against quadrature of the spectral density.
  {
    const long g = 2048;
    const MatrixList w = spectral_density(h, g);
    const MatrixList wf = fourier::forward(w);
    const MatrixList gamma = covariances(pm, 20);
    double worst = 0.0;
    for (long k = 0; k <= 20; ++k)
      worst = std::max(worst, max_abs(wf[k] / static_cast<double>(g) - gamma[k]));
    rep.add(check_bound("autocovariance.vs_quadrature", worst, 1e-8));
  }

  if (d >= 2 && !pm.sharp_supplied)
    rep.add(check_bound("sharp.factorization_residual", pm.sf.residual, tol.factorization));
  rep.add(check_bound("sharp.fit_residual", pm.sf.fit_residual, tol.sharp_fit));
  rep.add(check_bound("sharp.pole_correspondence",
                      verify_pole_correspondence(h, pm.pd, pm.pd_sharp).max_residual(),
                      tol.correspondence));

  if (pm.blocks) {
    const BuildingBlocks& bb = *pm.blocks;
    const long n0 = std::max(bb.m0, 1);
    rep.add(check_bound("neumann.spectral_radius_minus_one",
                        neumann_diagnostics(bb, n0).spectral_radius - 1.0, 0.0));
    const PhaseCoefficients pc = beta_coefficients(h, pm.sf, bb, 30, 1024, tol);
    double beta = 0.0;
    for (long k = 1; k <= 30; ++k)
      beta = std::max(beta, max_abs(pc.by_quadrature.at(k) - pc.by_closed_form.at(k)));
    rep.add(check_bound("phase.quadrature_vs_closed_form", beta, 1e-8));
    // beta^*_{n+k+l+1} = p_l^T Pi_n Theta p_k for n >= m0.
    double product = 0.0;
    for (long n = std::max(bb.m0, 0); n <= bb.m0 + 2; ++n) {
      const ComplexMatrix pt = pi_matrix(bb.pd, n) * bb.theta;
      for (long k = 0; k <= 3; ++k)
        for (long l = 0; l <= 3; ++l)
          product = std::max(product, max_abs(beta_closed_form(bb, n + k + l + 1).adjoint() -
                                              p_vec(bb.pd, l).transpose() * pt * p_vec(bb.pd, k)));
    }
    rep.add(check_bound("phase.pi_theta_product", product, 1e-9));
  }

  rep.append(identity_suite(seed));
  return rep;
}

}  // namespace armapred

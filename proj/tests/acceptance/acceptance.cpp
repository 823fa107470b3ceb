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

// Acceptance gate: one PASS/FAIL line per criterion. `--expect-fail N` (may be
// repeated) marks a criterion whose failure is known and documented; the exit
// status is 0 exactly when the failing set equals the expected set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "armapred/oracle.hpp"
#include "armapred/pipeline.hpp"
#include "test_models.hpp"

namespace armapred {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<PreparedModel> prepare_battery(std::vector<std::string>* names) {
  std::vector<PreparedModel> out;
  for (const auto& bm : testing::battery()) {
    out.push_back(prepare(bm.spec));
    names->push_back(bm.name);
  }
  return out;
}

// Closed form against the Levinson recursion for n = 1..200 on every model.
Outcome oracle_equivalence(const std::vector<PreparedModel>& models) {
  const auto t0 = Clock::now();
  std::vector<long> ns(200);
  std::iota(ns.begin(), ns.end(), 1L);
  double worst = 0.0;
  for (const PreparedModel& pm : models)
    for (const ComparisonRow& r : compare(pm, ns, OracleKind::DurbinLevinson))
      worst = std::max(worst, r.max_deviation);
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && secs < 60.0,
          "max relative deviation " + fmt("%.3g", worst) + " (tol 1e-8), " + fmt("%.1f", secs) +
              " s (limit 60 s)"};
}

double best_time(const std::function<void()>& f, int repeats) {
  double best = INFINITY;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

// phi_all scales linearly and beats the quadratic recursion by a wide margin.
Outcome linear_time(const PreparedModel& pm) {
  const auto t0 = Clock::now();
  const BuildingBlocks& bb = *pm.blocks;
  volatile double sink = 0.0;
  const double t1000 = best_time([&] { sink = sink + phi_all(bb, 1000).phi.back().norm(); }, 7);
  const double t2000 = best_time([&] { sink = sink + phi_all(bb, 2000).phi.back().norm(); }, 7);
  const MatrixList gamma = covariances(pm, 2000);
  const double tdl =
      best_time([&] { sink = sink + durbin_levinson(gamma, 2000).forward.back().norm(); }, 1);
  const double growth = t2000 / t1000, share = t2000 / tdl;
  const double secs = seconds_since(t0);
  return {growth <= 2.5 && share <= 0.05 && secs < 30.0,
          "t(2000)/t(1000) = " + fmt("%.2f", growth) + " (limit 2.5), t(2000)/t_levinson(2000) = " +
              fmt("%.4f", share) + " (limit 0.05), " + fmt("%.1f", secs) + " s (limit 30 s)"};
}

// Row-side factor: ansatz fit and pole correspondence on every d >= 2 model.
Outcome sharp_factor(const std::vector<PreparedModel>& models) {
  double fit = 0.0, corr = 0.0;
  int count = 0;
  for (const PreparedModel& pm : models) {
    if (pm.pd.d < 2) continue;
    ++count;
    fit = std::max(fit, pm.sf.fit_residual);
    corr = std::max(corr, verify_pole_correspondence(pm.h, pm.pd, pm.pd_sharp).max_residual());
  }
  return {count > 0 && fit <= 1e-9 && corr <= 1e-8,
          std::to_string(count) + " models, fit residual " + fmt("%.3g", fit) +
              " (tol 1e-9), correspondence residual " + fmt("%.3g", corr) + " (tol 1e-8)"};
}

// Stated asymptotic ratios at the largest n with the stated right side >= 1e-12.
Outcome asymptotics(const std::vector<PreparedModel>& models,
                    const std::vector<std::string>& names) {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (names[i] != "ma1" && names[i] != "triangular") continue;
    const BuildingBlocks& bb = *models[i].blocks;
    const std::vector<long> window =
        asymptotic_window(baxter_asymptotics(bb, {}), 1e-12, INFINITY);
    const AsymptoticsReport rep = baxter_asymptotics(bb, {window.back()});
    const AsymptoticRow& r = rep.rows.back();
    const double thm = r.lhs_sum / r.theorem_rhs, cor = r.cor_ratio / rep.cor_limit;
    ok = ok && std::abs(thm - 1) <= 0.05 && std::abs(cor - 1) <= 0.05;
    detail += names[i] + " n=" + std::to_string(r.n) + ": lhs/rhs " + fmt("%.4f", thm) +
              ", ratio/limit " + fmt("%.4f", cor) + " (leading term check " +
              fmt("%.4f", r.lhs_sum / r.leading_term) + "); ";
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 20.0;
  return {ok, detail + "band [0.95, 1.05], " + fmt("%.1f", secs) + " s (limit 20 s)"};
}

// Algebraic identities plus the structural facts on the battery.
Outcome identities(const std::vector<PreparedModel>& models,
                   const std::vector<std::string>& names) {
  std::vector<std::string> failed;
  const Report suite = identity_suite(20260101);
  for (const CheckRow& row : suite.rows)
    if (!row.pass) failed.push_back(row.name);
  double beta = 0.0, brec = 0.0, radius = 0.0, min_eig = INFINITY;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const PreparedModel& pm = models[i];
    const BuildingBlocks& bb = *pm.blocks;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(bb.lambda));
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    // beta_{n+1}^* = p_0^T Pi_n Theta p_0 against the quadrature of the phase function.
    const long n0 = bb.m0 + 1;
    const PhaseCoefficients pc = beta_coefficients(pm.h, pm.sf, bb, n0 + 8);
    const ComplexMatrix p0 = p_vec(bb.pd, 0);
    for (long n = n0; n <= n0 + 7; ++n) {
      const ComplexMatrix prod = p0.transpose() * pi_matrix(bb.pd, n) * bb.theta * p0;
      beta = std::max(beta, max_abs(pc.by_quadrature.at(n + 1).adjoint() - prod));
    }
    const BSequences b = b_sequences(bb, std::max(2, bb.m0), 3, 3);
    for (int k = 0; k <= 3; ++k)
      for (long j = 0; j <= 3; ++j)
        brec = std::max({brec, max_abs(b.recursion[k][j] - b.closed_form[k][j]),
                         max_abs(b.recursion_tilde[k][j] - b.closed_form_tilde[k][j])});
    for (long n = std::max(1, bb.m0); n <= 200; ++n)
      radius = std::max(radius, neumann_diagnostics(bb, n).spectral_radius);
    (void)names;
  }
  const bool ok = failed.empty() && beta <= 1e-9 && brec <= 1e-9 && radius < 1.0 && min_eig > 0;
  std::string detail = std::to_string(suite.rows.size() - failed.size()) + "/" +
                       std::to_string(suite.rows.size()) + " identity rows pass";
  for (const std::string& f : failed) detail += " [" + f + "]";
  detail += ", beta product " + fmt("%.3g", beta) + " (tol 1e-9), b recursion " +
            fmt("%.3g", brec) + " (tol 1e-9), max Neumann radius " + fmt("%.4f", radius) +
            " (< 1), min eig Lambda " + fmt("%.3g", min_eig) + " (> 0)";
  return {ok, detail};
}

// Least-squares slope of log increments of the alternating series.
Outcome consistency_chain(const std::vector<PreparedModel>& models,
                          const std::vector<std::string>& names) {
  bool ok = true;
  double worst_slope = 0.0, worst_final = 0.0;
  std::string where;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const BuildingBlocks& bb = *models[i].blocks;
    const long n = std::max(1, bb.m0);
    const double rho = neumann_diagnostics(bb, n).spectral_radius;
    const PredictorTable t = phi_all(bb, n);
    std::vector<double> ks, logs;
    ComplexMatrix prev = phi_series(bb, n, 1, 0);
    ComplexMatrix cur = prev;
    for (int k = 1; k <= 60; ++k) {
      cur = phi_series(bb, n, 1, k);
      const double inc = max_abs(cur - prev);
      prev = cur;
      if (inc < 1e-13 * (1 + max_abs(cur))) break;
      ks.push_back(k);
      logs.push_back(std::log(inc));
    }
    worst_final = std::max(worst_final, max_abs(cur - t.phi[0]));
    if (ks.size() < 3) {
      ok = false;
      where += " " + names[i] + "(too few increments)";
      continue;
    }
    // Skip the first increment: the geometric regime starts once the
    // dominant eigenvalue of Gt G takes over.
    const std::size_t s = 1;
    const double m = static_cast<double>(ks.size() - s);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t q = s; q < ks.size(); ++q) {
      sx += ks[q];
      sy += logs[q];
      sxx += ks[q] * ks[q];
      sxy += ks[q] * logs[q];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double rel = std::abs(slope / std::log(rho) - 1);
    if (rel > worst_slope) {
      worst_slope = rel;
      where = " (worst " + names[i] + ")";
    }
  }
  ok = ok && worst_slope <= 0.10 && worst_final <= 1e-9;
  return {ok, "max |slope/log(radius) - 1| = " + fmt("%.4f", worst_slope) + where +
                  " (tol 0.10), final partial sum vs closed form " + fmt("%.3g", worst_final) +
                  " (tol 1e-9)"};
}

// Constant unitary changes of h_sharp leave every coefficient unchanged.
Outcome gauge_invariance(const std::vector<PreparedModel>& models) {
  double worst = 0.0;
  for (const PreparedModel& pm : models)
    for (std::uint64_t seed : {11u, 22u, 33u}) {
      const ComplexMatrix u = testing::random_unitary(seed, pm.pd.d);
      const BuildingBlocks moved = build_blocks(pm.pd, apply_gauge(pm.pd_sharp, u), pm.tol);
      for (long n : {std::max(1L, static_cast<long>(pm.blocks->m0)), 10L, 50L}) {
        const PredictorTable a = phi_all(*pm.blocks, n), b = phi_all(moved, n);
        for (long j = 0; j < n; ++j) worst = std::max(worst, max_abs(a.phi[j] - b.phi[j]));
      }
    }
  return {worst <= 1e-10, "max change " + fmt("%.3g", worst) + " over 3 unitaries (tol 1e-10)"};
}

}  // namespace
}  // namespace armapred

int main(int argc, char** argv) {
  using namespace armapred;
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "Criterion known to fail")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());

  std::vector<std::string> names;
  std::vector<PreparedModel> models;
  try {
    models = prepare_battery(&names);
  } catch (const std::exception& e) {
    std::printf("FAIL setup: %s\n", e.what());
    return 1;
  }
  std::size_t triangular = 0;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == "triangular") triangular = i;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", [&] { return oracle_equivalence(models); }},
      {"linear time", [&] { return linear_time(models[triangular]); }},
      {"row-side factor", [&] { return sharp_factor(models); }},
      {"stated asymptotics", [&] { return asymptotics(models, names); }},
      {"identity suites", [&] { return identities(models, names); }},
      {"consistency chain", [&] { return consistency_chain(models, names); }},
      {"gauge invariance", [&] { return gauge_invariance(models); }},
  };

  std::set<int> failed;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = static_cast<int>(c) + 1;
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    const char* note = "";
    if (!o.pass && expected.count(id)) note = " [expected failure]";
    if (o.pass && expected.count(id)) note = " [unexpected pass]";
    std::printf("%s %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[c].first.c_str(),
                o.detail.c_str(), note);
    std::fflush(stdout);
  }
  return failed == expected ? 0 : 1;
}

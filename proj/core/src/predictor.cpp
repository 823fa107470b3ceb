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

#include "armapred/predictor.hpp"

#include <chrono>

namespace armapred {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Smallest reciprocal condition accepted for I - Gt G.
constexpr double kMinRcond = 1e-14;

void require_horizon(const BuildingBlocks& bb, long n) {
  if (n < std::max<long>(bb.m0, 1))
    throw Error(ErrorKind::InvalidArgument, "closed form requires n >= max(m0, 1)");
}

// Correction terms phi_{n,j} - phi_j, j = 1..n.
MatrixList corrections(const BuildingBlocks& bb, long n, double* radius, PredictorTimings* timings) {
  require_horizon(bb, n);
  const auto t0 = Clock::now();
  const Eigen::Index dm = bb.d * bb.M;
  const ComplexMatrix pi_theta = pi_matrix(bb.pd, n) * bb.theta;
  const ComplexMatrix g = pi_theta * bb.lambda;
  const ComplexMatrix gt = pi_theta.adjoint() * bb.lambda.transpose();
  const ComplexMatrix gtg = gt * g;
  if (radius) *radius = spectral_radius(gtg);
  Eigen::PartialPivLU<ComplexMatrix> lu(ComplexMatrix::Identity(dm, dm) - gtg);
  if (!(lu.rcond() > kMinRcond))
    throw Error(ErrorKind::NeumannDiverged, "I - Gt G is numerically singular");
  const ComplexMatrix w = lu.solve(ComplexMatrix(pi_theta.adjoint()));
  const ComplexMatrix left = bb.c0 * bb.p0.transpose() * w;
  const ComplexMatrix right = left * bb.lambda.transpose() * pi_theta;
  const ComplexMatrix right_xi = right * bb.xi1;
  const ComplexMatrix left_xi = left * bb.xi1.conjugate();
  const ComplexMatrix j_conj = bb.J.conjugate();
  if (timings) timings->setup_seconds = seconds_since(t0);

  const auto t1 = Clock::now();
  // forward[j-1] = right v_j, backward[k-1] = left vtilde_k.
  MatrixList forward(n), backward(n);
  ComplexMatrix y = bb.rho, yt = bb.rho_tilde;
  for (long k = 1; k <= n; ++k) {
    forward[k - 1].noalias() = right_xi * y;
    backward[k - 1].noalias() = left_xi * yt;
    if (k < n) {
      y = bb.J * y;
      yt = j_conj * yt;
    }
  }
  for (long k = 1; k <= std::min<long>(bb.m0, n); ++k) {
    for (long l = 0; l <= bb.m0 - k; ++l) {
      const ComplexMatrix p = p_vec(bb.pd, l);
      forward[k - 1] += right * p * bb.pd.rho0j[k + l - 1];
      backward[k - 1] += left * p.conjugate() * bb.pd_sharp.rho0j[k + l - 1].adjoint();
    }
  }
  MatrixList out(n);
  for (long j = 1; j <= n; ++j) out[j - 1] = forward[j - 1] + backward[n - j];
  if (timings) timings->sweep_seconds = seconds_since(t1);
  return out;
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> g_matrices(const BuildingBlocks& bb, long n) {
  const ComplexMatrix pi_theta = pi_matrix(bb.pd, n) * bb.theta;
  return {pi_theta * bb.lambda, pi_theta.adjoint() * bb.lambda.transpose()};
}

MatrixList infinite_predictor(const OuterInverseDecomposition& pd, long n) {
  const ComplexMatrix c0 = -ar_coefficient(pd, 0).partialPivLu().inverse();
  MatrixList out(n);
  for (long j = 1; j <= n; ++j) out[j - 1] = c0 * ar_coefficient(pd, j);
  return out;
}

PredictorTable phi_all(const BuildingBlocks& bb, long n) {
  PredictorTable table;
  table.n = n;
  MatrixList corr = corrections(bb, n, &table.neumann_radius, &table.timings);
  const auto t0 = Clock::now();
  table.phi_inf = infinite_predictor(bb.pd, n);
  table.phi.resize(n);
  for (long j = 0; j < n; ++j) table.phi[j] = table.phi_inf[j] + corr[j];
  table.timings.sweep_seconds += seconds_since(t0);
  return table;
}

MatrixList phi_diff_all(const BuildingBlocks& bb, long n) { return corrections(bb, n, nullptr, nullptr); }

NeumannDiagnostics neumann_diagnostics(const BuildingBlocks& bb, long n) {
  require_horizon(bb, n);
  const auto [g, gt] = g_matrices(bb, n);
  const ComplexMatrix gtg = gt * g;
  const Eigen::Index dm = gtg.rows();
  const ComplexMatrix eye = ComplexMatrix::Identity(dm, dm);
  NeumannDiagnostics diag;
  diag.spectral_radius = spectral_radius(gtg);
  diag.condition = condition_number(eye - gtg);
  const ComplexMatrix inv = (eye - gtg).partialPivLu().inverse();
  ComplexMatrix sum = eye, term = eye;
  for (int k = 1; k < 30; ++k) {
    term = term * gtg;
    sum += term;
  }
  diag.partial_sum_error = op_norm(sum - inv);
  return diag;
}

PredictorTable phi_ar_exact(const OuterInverseDecomposition& pd, long n) {
  if (pd.K() != 0) throw Error(ErrorKind::InvalidArgument, "AR dispatch requires K = 0");
  if (n < std::max(pd.m0(), 1))
    throw Error(ErrorKind::InvalidArgument, "AR dispatch requires n >= max(m0, 1)");
  PredictorTable table;
  table.n = n;
  table.method = "ar-exact";
  table.phi_inf = infinite_predictor(pd, n);
  table.phi = table.phi_inf;
  return table;
}

}  // namespace armapred

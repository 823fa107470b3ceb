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

#include "armapred/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace armapred {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::SingularSigma: return "SingularSigma";
    case ErrorKind::PoleClusterAmbiguous: return "PoleClusterAmbiguous";
    case ErrorKind::DegenerateLeadingResidue: return "DegenerateLeadingResidue";
    case ErrorKind::NearPole: return "NearPole";
    case ErrorKind::InsufficientSharpData: return "InsufficientSharpData";
    case ErrorKind::TailNotConverged: return "TailNotConverged";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::IllConditionedBasis: return "IllConditionedBasis";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::NearPoleDifferentiation: return "NearPoleDifferentiation";
    case ErrorKind::NeumannDiverged: return "NeumannDiverged";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::AssumptionP1MaxViolated: return "AssumptionP1MaxViolated";
  }
  return "Unknown";
}

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.norm();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double binomial(long n, long k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (long i = 1; i <= k; ++i) {
    r *= static_cast<double>(n - k + i);
    r /= static_cast<double>(i);
  }
  return r;
}

Complex ipow(Complex z, long k) {
  Complex result(1.0, 0.0);
  Complex base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

double spectral_radius(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double condition_number(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  double smin = s(s.size() - 1);
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smin;
}

ComplexMatrix vstack(const MatrixList& blocks) {
  if (blocks.empty()) return ComplexMatrix();
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  ComplexMatrix out(rows, blocks.front().cols());
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

Complex unit_root(long k, long n) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

}  // namespace armapred

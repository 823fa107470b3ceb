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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "armapred/blocks.hpp"
#include "armapred/linalg.hpp"
#include "armapred/model.hpp"
#include "armapred/model_io.hpp"
#include "armapred/oracle.hpp"
#include "armapred/predictor.hpp"
#include "armapred/report.hpp"
#include "armapred/specfactor.hpp"

namespace armapred {

/// Everything derived from a model file that the commands share.
struct PreparedModel {
  RationalMatrixFunction h;
  OuterInverseDecomposition pd;
  OuterInverseDecomposition pd_sharp;
  SharpFactor sf;
  bool sharp_supplied = false;
  std::optional<BuildingBlocks> blocks;  // absent when K = 0
  Tolerances tol;
};

/// Builds h, checks condition (C), decomposes h^{-1}, factorizes the
/// spectral density (or validates supplied h_sharp data) and precomputes
/// the building blocks. Throws NotStable when condition (C) fails.
PreparedModel prepare(const ModelSpec& spec, long grid = 1024, const Tolerances& tol = {});

/// phi_{n,1..n}. Uses the closed form when n >= max(m0, 1) and K >= 1, the
/// truncated AR coefficients when K = 0, and the Levinson recursion otherwise.
PredictorTable predict(const PreparedModel& pm, long n);

/// gamma(0..n).
MatrixList covariances(const PreparedModel& pm, long n);

enum class OracleKind { DurbinLevinson, Dense, Both };

struct ComparisonRow {
  long n = 0;
  std::string oracle;  // "dl" or "dense"
  std::string method;  // predictor path used for the closed side
  // max_j ||phi_closed - phi_oracle|| / (1 + ||phi_oracle||), and its median.
  double max_deviation = 0.0;
  double median_deviation = 0.0;
  double closed_seconds = 0.0;
  double oracle_seconds = 0.0;
};

/// One row per (n, oracle). The Levinson side runs once up to max(n_list).
std::vector<ComparisonRow> compare(const PreparedModel& pm, const std::vector<long>& n_list,
                                   OracleKind oracle = OracleKind::DurbinLevinson);

/// Every structural check on a model, including the identity suite.
/// A failure of condition (C) is reported as failing rows rather than thrown.
Report validate_model(const ModelSpec& spec, long grid, const Tolerances& tol,
                      unsigned long long seed);

}  // namespace armapred

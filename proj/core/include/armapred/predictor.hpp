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

#include <string>
#include <utility>

#include "armapred/blocks.hpp"
#include "armapred/linalg.hpp"
#include "armapred/model.hpp"

namespace armapred {

struct PredictorTimings {
  double setup_seconds = 0.0;  // W_n and the fixed-size products
  double sweep_seconds = 0.0;  // the O(n) sweep over j
};

struct PredictorTable {
  long n = 0;
  MatrixList phi;      // phi_{n,1..n}
  MatrixList phi_inf;  // phi_1..phi_n
  double neumann_radius = 0.0;
  // "closed-form", "ar-exact" or "oracle-fallback".
  std::string method = "closed-form";
  PredictorTimings timings;
};

struct NeumannDiagnostics {
  double spectral_radius = 0.0;
  // ||sum_{k<30} (Gt G)^k - (I - Gt G)^{-1}||.
  double partial_sum_error = 0.0;
  double condition = 0.0;  // cond(I - Gt G)
};

/// (G_n, Gt_n) = (Pi_n Theta Lambda, (Pi_n Theta)^* Lambda^T).
std::pair<ComplexMatrix, ComplexMatrix> g_matrices(const BuildingBlocks& bb, long n);

/// phi_{n,1..n}; requires K >= 1 and n >= max(m0, 1).
PredictorTable phi_all(const BuildingBlocks& bb, long n);

/// phi_{n,j} - phi_j for j = 1..n, computed directly (no subtraction).
MatrixList phi_diff_all(const BuildingBlocks& bb, long n);

NeumannDiagnostics neumann_diagnostics(const BuildingBlocks& bb, long n);

/// phi_j = c_0 a_j for j = 1..n.
MatrixList infinite_predictor(const OuterInverseDecomposition& pd, long n);

/// Pure AR case (K = 0): phi_{n,j} = phi_j for j <= m0 and 0 beyond.
PredictorTable phi_ar_exact(const OuterInverseDecomposition& pd, long n);

}  // namespace armapred

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

#include <cstdint>
#include <string>
#include <vector>

#include "armapred/linalg.hpp"
#include "armapred/model_io.hpp"

namespace armapred::testing {

struct BatteryModel {
  std::string name;
  ModelSpec spec;
};

/// h(z) = 1 + b z.
ModelSpec ma1_spec(double b = 0.5);
/// h(z) = (1 + 0.5 z) / ((1 - 0.3 z)(1 - 0.2 z)); its h^{-1} has m0 = 1.
ModelSpec arma_m0_spec();
/// The bivariate model with h^{-1}(z) = I - (1 - p z)^{-1} [[0,0],[1,0]].
ModelSpec triangular_spec(double p = 0.4);
/// h(z) = 1 / (1 - 0.5 z).
ModelSpec ar1_spec();

/// Stable random model: Phi = I - z A, Psi = V diag(q_i) V^{-1} with each q_i
/// a product of (1 - conj(p) z) factors, Sigma^{1/2} lower triangular.
/// Entries are multiples of 1/64, poles satisfy |p| <= 0.8, K <= 3, m <= 2.
ModelSpec random_model_spec(std::uint64_t seed, int d);

/// The three named models followed by five random ones.
std::vector<BatteryModel> battery();

/// Path of a file under models/.
std::string model_path(const std::string& name);

/// Deterministic unitary from a seed (QR of a quantized random matrix).
ComplexMatrix random_unitary(std::uint64_t seed, Eigen::Index d);

}  // namespace armapred::testing

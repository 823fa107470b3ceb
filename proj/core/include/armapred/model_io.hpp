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
#include <string_view>

#include "armapred/linalg.hpp"
#include "armapred/model.hpp"
#include "armapred/polynomial.hpp"

namespace armapred {

/// Contents of a model file. Exactly one of the two forms of h is present:
/// the polynomial form (psi, with phi and sigma_half defaulting to I) or the
/// pole data of h^{-1}.
struct ModelSpec {
  std::string name;
  std::optional<PolynomialMatrix> phi;
  std::optional<PolynomialMatrix> psi;
  std::optional<ComplexMatrix> sigma_half;
  std::optional<OuterInverseDecomposition> h_inverse_poledata;
  std::optional<OuterInverseDecomposition> h_sharp_inverse_poledata;

  bool polynomial_form() const { return psi.has_value(); }
};

/// Parses model JSON. Complex scalars are [re, im] (a bare number is real);
/// polynomial matrices are [k][row][col]. Throws Error(Parse) on any
/// structural problem.
ModelSpec parse_model(std::string_view text);
/// Reads and parses a file; unreadable files are Parse errors too.
ModelSpec load_model(const std::string& path);
/// Inverse of parse_model; doubles are written with round-trip precision.
std::string serialize_model(const ModelSpec& spec, int indent = 2);

/// h for the spec. `check` asks the polynomial form to reject unstable
/// determinants up front.
RationalMatrixFunction build_h(const ModelSpec& spec, const Tolerances& tol = {},
                               bool check = true);

}  // namespace armapred

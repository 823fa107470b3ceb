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

#include <vector>

#include "armapred/linalg.hpp"

// Thin wrappers over Eigen's FFT module. Convention: forward(x)_k =
// sum_n x_n exp(-2 pi i k n / N); inverse includes the 1/N factor.
namespace armapred::fourier {

std::vector<Complex> forward(const std::vector<Complex>& x);
std::vector<Complex> inverse(const std::vector<Complex>& x);

/// Entrywise forward transform of a matrix-valued sequence.
MatrixList forward(const MatrixList& x);
MatrixList inverse(const MatrixList& x);

}  // namespace armapred::fourier

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

#include "armapred/fourier.hpp"

#include <unsupported/Eigen/FFT>

namespace armapred::fourier {

std::vector<Complex> forward(const std::vector<Complex>& x) {
  if (x.size() < 2) return x;  // kissfft does not handle length 1
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, x);
  return out;
}

std::vector<Complex> inverse(const std::vector<Complex>& x) {
  if (x.size() < 2) return x;
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.inv(out, x);
  return out;
}

namespace {

template <typename Fn>
MatrixList entrywise(const MatrixList& x, Fn transform) {
  if (x.empty()) return {};
  const Eigen::Index rows = x[0].rows(), cols = x[0].cols();
  MatrixList out(x.size(), ComplexMatrix(rows, cols));
  std::vector<Complex> buf(x.size());
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (size_t g = 0; g < x.size(); ++g) buf[g] = x[g](r, c);
      std::vector<Complex> t = transform(buf);
      for (size_t g = 0; g < x.size(); ++g) out[g](r, c) = t[g];
    }
  }
  return out;
}

}  // namespace

MatrixList forward(const MatrixList& x) {
  return entrywise(x, [](const std::vector<Complex>& v) { return forward(v); });
}

MatrixList inverse(const MatrixList& x) {
  return entrywise(x, [](const std::vector<Complex>& v) { return inverse(v); });
}

}  // namespace armapred::fourier

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

#include <functional>

namespace armapred {

/// Worker count: hardware concurrency, capped by ARMA_PREDICT_THREADS when
/// that variable holds a positive integer. Always at least 1.
int thread_count();

/// Runs body(i) for i in [0, count). Each index runs exactly once; results
/// written by index are therefore independent of scheduling. If any body
/// throws, one of the exceptions is rethrown after all workers finish.
void parallel_for(long count, const std::function<void(long)>& body);

}  // namespace armapred

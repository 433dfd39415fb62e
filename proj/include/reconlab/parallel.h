// Copyright 2026 The ReconLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef RECONLAB_PARALLEL_H_
#define RECONLAB_PARALLEL_H_

#include <cstddef>
#include <exception>
#include <vector>

#include "reconlab/common.h"

namespace reconlab {

// Runs body(i) for i in [0, n). Under kParallel the iterations are spread
// over OpenMP threads. An exception from any iteration is rethrown after the
// loop; when several fail, the lowest index wins so the error is the same as
// in a serial run.
template <typename Body>
void ParallelFor(std::size_t n, Execution execution, Body&& body) {
  if (execution == Execution::kSerial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Caps the OpenMP team size from RECONLAB_THREADS when set.
void ApplyThreadLimitFromEnv();

}  // namespace reconlab

#endif  // RECONLAB_PARALLEL_H_

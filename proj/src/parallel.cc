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
#include "reconlab/parallel.h"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace reconlab {

void ApplyThreadLimitFromEnv() {
  const char* value = std::getenv("RECONLAB_THREADS");
  if (value == nullptr || *value == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(value, &end, 10);
  Require(end != value && *end == '\0' && n >= 1,
          "RECONLAB_THREADS must be a positive integer, got '" +
              std::string(value) + "'");
  omp_set_num_threads(static_cast<int>(n));
}

}  // namespace reconlab

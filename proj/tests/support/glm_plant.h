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
#ifndef RECONLAB_TESTS_SUPPORT_GLM_PLANT_H_
#define RECONLAB_TESTS_SUPPORT_GLM_PLANT_H_

#include <cstdint>

#include "reconlab/glm/glm.h"
#include "reconlab/rng.h"

namespace reconlab::testing {

// A fixed set plus one planted target drawn from a well-conditioned model:
// standard-normal features behind an intercept column, labels from a random
// ground-truth parameter.
struct PlantedGlm {
  glm::GlmData fixed;     // with intercept column when requested
  Vector target_x;        // with intercept column when requested
  double target_y = 0.0;
  glm::GlmData full;      // fixed rows followed by the target row
};

inline PlantedGlm PlantGlm(glm::Family family, std::size_t d, std::size_t n,
                           bool intercept, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t cols = d;
  Vector truth(cols);
  for (double& t : truth) t = 0.5 * rng.Normal();
  auto draw_x = [&] {
    Vector x(cols);
    for (std::size_t j = 0; j < cols; ++j) x[j] = rng.Normal();
    if (intercept) x[0] = 1.0;
    return x;
  };
  auto draw_y = [&](const Vector& x) {
    double eta = 0.0;
    for (std::size_t j = 0; j < cols; ++j) eta += x[j] * truth[j];
    if (family == glm::Family::kLogistic) {
      return rng.Uniform() < glm::InverseLink(family, eta) ? 1.0 : 0.0;
    }
    return eta + rng.Normal();
  };
  PlantedGlm p;
  p.fixed.x = Matrix(n - 1, cols);
  p.full.x = Matrix(n, cols);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    const Vector x = draw_x();
    std::copy(x.begin(), x.end(), p.fixed.x.row(r).begin());
    std::copy(x.begin(), x.end(), p.full.x.row(r).begin());
    const double y = draw_y(x);
    p.fixed.y.push_back(y);
    p.full.y.push_back(y);
  }
  p.target_x = draw_x();
  p.target_y = draw_y(p.target_x);
  std::copy(p.target_x.begin(), p.target_x.end(),
            p.full.x.row(n - 1).begin());
  p.full.y.push_back(p.target_y);
  return p;
}

}  // namespace reconlab::testing

#endif  // RECONLAB_TESTS_SUPPORT_GLM_PLANT_H_

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
#include "reconlab/dp/accounting.h"

#include <cmath>
#include <string>

#include "reconlab/common.h"

namespace reconlab::dp {

std::string_view AdjacencyName(Adjacency a) {
  return a == Adjacency::kReplace ? "replace" : "add-remove";
}

Adjacency ParseAdjacency(std::string_view name) {
  if (name == "replace") return Adjacency::kReplace;
  if (name == "add-remove") return Adjacency::kAddRemove;
  throw ValidationError("unknown adjacency: " + std::string(name));
}

double AccountDpGd(std::size_t steps, double clip_norm, double noise_multiplier,
                   Adjacency adjacency) {
  Require(clip_norm > 0.0, "clip_norm must be positive");
  Require(noise_multiplier >= 0.0, "noise_multiplier must be nonnegative");
  if (noise_multiplier == 0.0) {
    throw ValidationError("noise_multiplier 0 gives unbounded zCDP");
  }
  const double sensitivity =
      adjacency == Adjacency::kReplace ? 2.0 * clip_norm : clip_norm;
  const double std = noise_multiplier * clip_norm;
  return static_cast<double>(steps) * sensitivity * sensitivity /
         (2.0 * std * std);
}

double ZcdpToRdp(double rho, double alpha) {
  Require(rho >= 0.0, "rho must be nonnegative");
  Require(alpha > 1.0, "alpha must exceed 1");
  return alpha * rho;
}

double ZcdpToApproxDp(double rho, double delta) {
  Require(rho >= 0.0, "rho must be nonnegative");
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

double CalibrateNoise(double target_epsilon, double delta, std::size_t steps,
                      double clip_norm, Adjacency adjacency) {
  Require(target_epsilon > 0.0 && std::isfinite(target_epsilon),
          "target epsilon must be positive and finite");
  Require(steps > 0, "steps must be positive");
  auto epsilon = [&](double sigma) {
    return ZcdpToApproxDp(AccountDpGd(steps, clip_norm, sigma, adjacency),
                          delta);
  };
  // epsilon(sigma) decreases strictly from +inf to 0, so a bracket exists for
  // every positive target; grow it geometrically.
  double lo = 1.0;
  double hi = 1.0;
  int guard = 0;
  while (epsilon(hi) > target_epsilon) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2000) throw NumericalError("cannot bracket noise multiplier");
  }
  while (epsilon(lo) <= target_epsilon) {
    hi = lo;
    lo /= 2.0;
    if (++guard > 2000 || lo == 0.0) {
      throw NumericalError("cannot bracket noise multiplier");
    }
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (epsilon(mid) <= target_epsilon) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace reconlab::dp

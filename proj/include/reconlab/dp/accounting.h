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
#ifndef RECONLAB_DP_ACCOUNTING_H_
#define RECONLAB_DP_ACCOUNTING_H_

#include <cstddef>
#include <string_view>

namespace reconlab::dp {

// Replace: neighbouring datasets of equal size differ in one record, so the
// summed clipped gradient moves by up to 2C. AddRemove: sensitivity C.
enum class Adjacency { kReplace, kAddRemove };

std::string_view AdjacencyName(Adjacency a);
Adjacency ParseAdjacency(std::string_view name);

// zCDP of `steps` full-batch DP-GD steps with per-step noise std
// noise_multiplier * clip_norm on the summed clipped gradients.
double AccountDpGd(std::size_t steps, double clip_norm, double noise_multiplier,
                   Adjacency adjacency);

// Every rho-zCDP mechanism is (alpha, alpha * rho)-RDP.
double ZcdpToRdp(double rho, double alpha);

// Standard conversion eps = rho + 2 sqrt(rho ln(1/delta)).
double ZcdpToApproxDp(double rho, double delta);

// Smallest noise multiplier whose (eps, delta) after `steps` steps is at most
// target_epsilon, found by bisection to 1e-9 relative width.
double CalibrateNoise(double target_epsilon, double delta, std::size_t steps,
                      double clip_norm, Adjacency adjacency);

}  // namespace reconlab::dp

#endif  // RECONLAB_DP_ACCOUNTING_H_

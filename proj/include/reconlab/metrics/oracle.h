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
#ifndef RECONLAB_METRICS_ORACLE_H_
#define RECONLAB_METRICS_ORACLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "reconlab/common.h"
#include "reconlab/nn/mlp.h"

namespace reconlab::metrics {

double Mse(std::span<const double> a, std::span<const double> b);

struct NearestNeighbor {
  std::size_t index = 0;
  double distance = 0.0;
};

// Pool point with the smallest MSE to target; lowest index on ties.
NearestNeighbor NnOracle(std::span<const double> target, const Matrix& pool);

// NnOracle for every row of targets.
std::vector<NearestNeighbor> NnOracleAll(
    const Matrix& targets, const Matrix& pool,
    Execution execution = Execution::kParallel);

struct Histogram {
  double lower = 0.0;
  double upper = 0.0;
  // Mass per bin, averaged over targets.
  Vector counts;
};

struct OracleReport {
  std::vector<NearestNeighbor> nearest;
  Histogram histogram;
  // Per-target percentiles of the distances to the whole pool, averaged.
  double p1 = 0.0;
  double p10 = 0.0;
  double p50 = 0.0;
  double mean_nn_distance = 0.0;
};

inline constexpr std::size_t kHistogramBins = 100;

OracleReport MakeOracleReport(const Matrix& targets, const Matrix& pool,
                              Execution execution = Execution::kParallel);

// Linear-interpolation percentile (q in [0, 100]) of unsorted values.
double Percentile(Vector values, double q);

// KL(softmax(f(z)) || softmax(f(z_hat))) in nats.
double KlProbe(const ModelParams& probe, std::span<const double> z,
               std::span<const double> z_hat);

// Rank correlation with average ranks for ties.
double Spearman(std::span<const double> a, std::span<const double> b);

// Success means strictly below the threshold.
inline bool JudgeSuccess(double attack_mse, double threshold) {
  return attack_mse < threshold;
}

}  // namespace reconlab::metrics

#endif  // RECONLAB_METRICS_ORACLE_H_

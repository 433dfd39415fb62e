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
#ifndef RECONLAB_EXPERIMENT_PIPELINE_H_
#define RECONLAB_EXPERIMENT_PIPELINE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "reconlab/data/dataset.h"
#include "reconlab/experiment/config.h"
#include "reconlab/metrics/oracle.h"
#include "reconlab/nn/mlp.h"
#include "reconlab/nn/train.h"
#include "reconlab/shadow/reconn.h"
#include "reconlab/shadow/shadow.h"

namespace reconlab::experiment {

// The adversary's view of the data plus the hidden targets.
struct ExperimentData {
  LabeledDataset fixed;
  // Shadow targets, k of them.
  LabeledDataset shadow_targets;
  // Black-box query inputs, drawn from the same pool as the shadow targets.
  Matrix probes;
  LabeledDataset targets;
  // Everything the adversary holds: fixed set, shadow targets and probes.
  Matrix oracle_pool;
};

ExperimentData PrepareData(const ExperimentConfig& config);

// One model per target on fixed + {target}, secret seeds re-derived per
// target under the "release" stream.
std::vector<ModelParams> TrainReleasedModels(
    const LabeledDataset& fixed, const LabeledDataset& targets,
    const MlpArchitecture& arch, const TrainConfig& train, SecretSeeds secret,
    Execution execution = Execution::kParallel);

std::vector<ModelParams> TrainReleased(
    const ExperimentConfig& config, const ExperimentData& data,
    Execution execution = Execution::kParallel);

// Featurizer named by attack.featurizer; black-box gets the data's probes.
shadow::Featurizer MakeFeaturizer(const std::string& description,
                                  const ExperimentData& data);

shadow::ShadowSet GenerateShadows(const ExperimentConfig& config,
                                  const ExperimentData& data,
                                  Execution execution = Execution::kParallel);

// Classifier used for the KL metric; trained on the fixed set only, so it
// never sees a target.
ModelParams TrainProbeClassifier(const ExperimentConfig& config,
                                 const ExperimentData& data);

struct TargetResult {
  std::size_t index = 0;
  double mse = 0.0;
  double kl = 0.0;
  double nn_distance = 0.0;
  // Reconstruction closer to the target than the nearest known point.
  bool success = false;
};

struct AttackReport {
  std::vector<TargetResult> rows;
  double mean_mse = 0.0;
  double se_mse = 0.0;
  double mean_kl = 0.0;
  // Mean nearest-neighbour distance over targets.
  double threshold = 0.0;
  double p1 = 0.0;
  double p10 = 0.0;
  double p50 = 0.0;
  double probe_accuracy = 0.0;
  // NaN when either column is constant.
  double spearman_mse_kl = 0.0;
  bool success() const { return metrics::JudgeSuccess(mean_mse, threshold); }
};

AttackReport EvaluateAttack(const shadow::RecoNN& reconn,
                            const std::vector<ModelParams>& released,
                            const ExperimentData& data,
                            const metrics::OracleReport& oracle,
                            const ModelParams& probe,
                            Execution execution = Execution::kParallel);

struct DpSweepRow {
  double epsilon = 0.0;
  double sigma = 0.0;
  std::size_t repeat = 0;
  double mean_mse = 0.0;
  double threshold = 0.0;
  double accuracy = 0.0;
};

struct DpSweepLevel {
  double epsilon = 0.0;
  double sigma = 0.0;
  double mean_mse = 0.0;
  // Standard error over repeats.
  double se_mse = 0.0;
  double accuracy = 0.0;
};

// Noise multiplier for one sweep level; 0 for epsilon = inf.
double SweepSigma(const ExperimentConfig& config, double epsilon);

// Release configuration of one sweep level. Infinity keeps the non-private
// release configuration unchanged.
TrainConfig SweepTrainConfig(const ExperimentConfig& config, double epsilon);

// One row per (epsilon, repeat), in dp.epsilons order. Uses the first
// dp.shadows shadow targets.
std::vector<DpSweepRow> RunDpSweep(const ExperimentConfig& config,
                                   const ExperimentData& data,
                                   Execution execution = Execution::kParallel);

std::vector<DpSweepLevel> SummarizeDpSweep(const std::vector<DpSweepRow>& rows);

// m_i <= m_{i+1} + tolerance_se * sqrt(se_i^2 + se_{i+1}^2) for every
// consecutive pair.
bool NonDecreasingWithin(const std::vector<DpSweepLevel>& levels,
                         double tolerance_se);

}  // namespace reconlab::experiment

#endif  // RECONLAB_EXPERIMENT_PIPELINE_H_

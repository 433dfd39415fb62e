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
#include "reconlab/experiment/pipeline.h"

#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "reconlab/dp/accounting.h"
#include "reconlab/io/serialize.h"
#include "reconlab/parallel.h"
#include "reconlab/rng.h"

namespace reconlab::experiment {
namespace {

LabeledDataset Concatenate(const std::vector<LabeledDataset>& parts) {
  LabeledDataset out(parts.front().dim(), parts.front().num_classes());
  for (const LabeledDataset& part : parts) {
    Require(part.dim() == out.dim(), "IDX files disagree on image size");
    for (const DataPoint& p : part) out.Add(p);
  }
  return out;
}

LabeledDataset LoadImages(const std::vector<std::string>& images,
                          const std::vector<std::string>& labels,
                          std::size_t downsample) {
  std::vector<LabeledDataset> parts;
  for (std::size_t i = 0; i < images.size(); ++i) {
    parts.push_back(LoadIdx(images[i], labels[i]));
  }
  LabeledDataset all = Concatenate(parts);
  Require(all.dim() == 28 * 28, "image profiles expect 28x28 IDX images");
  if (downsample > 1) all = DownsampleImages(all, 28, 28, downsample);
  return all;
}

Matrix StackRows(const std::vector<const Matrix*>& parts) {
  Matrix out(0, parts.front()->cols);
  for (const Matrix* m : parts) {
    out.data.insert(out.data.end(), m->data.begin(), m->data.end());
    out.rows += m->rows;
  }
  return out;
}

double MeanOf(const Vector& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

// Sample standard error of the mean; 0 for a single value.
double StandardError(const Vector& v) {
  if (v.size() < 2) return 0.0;
  const double m = MeanOf(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1) / n);
}

}  // namespace

ExperimentData PrepareData(const ExperimentConfig& config) {
  config.Validate();
  const std::size_t pool_size = config.split.probes + config.split.shadows;
  const bool image = config.profile != Profile::kDeskSynthetic;
  LabeledDataset all;
  if (image) {
    all = LoadImages(config.data.images, config.data.labels,
                     config.data.downsample);
    Require(all.num_classes() == config.data.num_classes,
            "label files disagree with data.num_classes");
  } else {
    all = SynthClassification({config.data.dim, config.data.num_classes,
                               config.split.fixed + pool_size +
                                   config.split.targets,
                               config.data.cluster_std, config.data.seed});
  }
  // The in-distribution pool is carved out even when an OOD pool replaces
  // it, so fixed set and targets do not depend on data.ood.
  DatasetSplit split = Split(all, {config.split.fixed, pool_size,
                                   config.split.targets, config.split.seed});
  LabeledDataset pool = std::move(split.shadow);
  if (config.data.ood) {
    LabeledDataset ood;
    if (image) {
      ood = LoadImages(config.data.ood_images, config.data.ood_labels,
                       config.data.downsample);
    } else {
      ood = SynthClassification({config.data.dim, config.data.num_classes,
                                 pool_size, config.data.cluster_std,
                                 config.data.ood_seed});
    }
    Require(ood.dim() == all.dim(), "OOD pool dimension mismatch");
    pool = Split(ood, {0, pool_size, 0, config.split.seed}).shadow;
    pool = RelabelUniform(pool, config.data.num_classes,
                          DeriveSeed(config.data.ood_seed, 0));
  }
  ExperimentData data;
  data.fixed = std::move(split.fixed);
  data.targets = std::move(split.targets);
  auto [probes, shadow_targets] =
      shadow::SplitProbes(pool, config.split.probes);
  data.probes = std::move(probes);
  data.shadow_targets = std::move(shadow_targets);
  const Matrix fixed = data.fixed.FeatureMatrix();
  const Matrix pool_x = pool.FeatureMatrix();
  data.oracle_pool = StackRows({&fixed, &pool_x});
  return data;
}

std::vector<ModelParams> TrainReleasedModels(
    const LabeledDataset& fixed, const LabeledDataset& targets,
    const MlpArchitecture& arch, const TrainConfig& train, SecretSeeds secret,
    Execution execution) {
  std::vector<ModelParams> models(targets.size());
  ParallelFor(targets.size(), execution, [&](std::size_t t) {
    try {
      models[t] = Train(fixed.With(targets[t]), arch,
                        WithDerivedSeeds(train, secret, "release", t));
    } catch (const NumericalError& e) {
      throw NumericalError("target " + std::to_string(t) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("target " + std::to_string(t) + ": " + e.what());
    }
  });
  return models;
}

std::vector<ModelParams> TrainReleased(const ExperimentConfig& config,
                                       const ExperimentData& data,
                                       Execution execution) {
  return TrainReleasedModels(data.fixed, data.targets,
                             config.ReleasedArchitecture(),
                             config.released.train, config.Secret(), execution);
}

shadow::Featurizer MakeFeaturizer(const std::string& description,
                                  const ExperimentData& data) {
  shadow::Featurizer f = io::ParseFeaturizer(description);
  if (f.mode != shadow::Featurizer::Mode::kBlackBox) return f;
  const auto colon = description.find(':');
  Matrix probes = data.probes;
  if (colon != std::string::npos) {
    std::size_t count = 0;
    try {
      count = std::stoul(description.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("bad probe count in '" + description + "'");
    }
    Require(count > 0 && count <= probes.rows,
            "black-box probe count must lie in [1, split.probes]");
    probes.rows = count;
    probes.data.resize(count * probes.cols);
  }
  Require(probes.rows > 0, "the black-box featurizer needs probes");
  return shadow::Featurizer::BlackBox(std::move(probes));
}

shadow::ShadowSet GenerateShadows(const ExperimentConfig& config,
                                  const ExperimentData& data,
                                  Execution execution) {
  shadow::ShadowOptions options;
  options.secret = config.Secret();
  options.execution = execution;
  return shadow::GenShadows(data.fixed, data.shadow_targets,
                            config.ReleasedArchitecture(),
                            config.released.train,
                            MakeFeaturizer(config.attack.featurizer, data),
                            options);
}

ModelParams TrainProbeClassifier(const ExperimentConfig& config,
                                 const ExperimentData& data) {
  MlpArchitecture arch{{config.InputDim(), 32, config.data.num_classes},
                       Activation::kElu};
  TrainConfig train;
  train.optimizer = Optimizer::kGdMomentum;
  train.learning_rate = 0.2;
  train.momentum = 0.9;
  train.epochs = 200;
  train.init_seed = DeriveSeed(HashBytes("probe-classifier"), config.data.seed);
  return Train(data.fixed, arch, train);
}

AttackReport EvaluateAttack(const shadow::RecoNN& reconn,
                            const std::vector<ModelParams>& released,
                            const ExperimentData& data,
                            const metrics::OracleReport& oracle,
                            const ModelParams& probe, Execution execution) {
  Require(released.size() == data.targets.size(),
          "one released model per target is required");
  Require(oracle.nearest.size() == data.targets.size(),
          "oracle report does not match the targets");
  AttackReport report;
  report.rows.resize(released.size());
  ParallelFor(released.size(), execution, [&](std::size_t t) {
    const Vector z_hat = reconn.Attack(released[t]);
    const Vector& z = data.targets[t].x;
    TargetResult& row = report.rows[t];
    row.index = t;
    row.mse = metrics::Mse(z, z_hat);
    row.kl = metrics::KlProbe(probe, z, z_hat);
    row.nn_distance = oracle.nearest[t].distance;
    row.success = metrics::JudgeSuccess(row.mse, row.nn_distance);
  });
  Vector mse, kl;
  for (const TargetResult& r : report.rows) {
    mse.push_back(r.mse);
    kl.push_back(r.kl);
  }
  report.mean_mse = MeanOf(mse);
  report.se_mse = StandardError(mse);
  report.mean_kl = MeanOf(kl);
  report.threshold = oracle.mean_nn_distance;
  report.p1 = oracle.p1;
  report.p10 = oracle.p10;
  report.p50 = oracle.p50;
  report.probe_accuracy = Accuracy(probe, data.targets);
  try {
    report.spearman_mse_kl = metrics::Spearman(mse, kl);
  } catch (const NumericalError&) {
    report.spearman_mse_kl = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

double SweepSigma(const ExperimentConfig& config, double epsilon) {
  if (std::isinf(epsilon)) return 0.0;
  const std::size_t n = config.split.fixed + 1;
  TrainConfig dp = config.released.train;
  dp.optimizer = Optimizer::kDpGd;
  return dp::CalibrateNoise(epsilon, config.dp.delta, dp.Steps(n),
                            config.dp.clip_norm, config.dp.adjacency);
}

TrainConfig SweepTrainConfig(const ExperimentConfig& config, double epsilon) {
  TrainConfig train = config.released.train;
  if (std::isinf(epsilon)) return train;
  train.optimizer = Optimizer::kDpGd;
  train.batch_size = 0;
  train.clip_norm = config.dp.clip_norm;
  train.noise_multiplier = SweepSigma(config, epsilon);
  return train;
}

std::vector<DpSweepRow> RunDpSweep(const ExperimentConfig& config,
                                   const ExperimentData& data,
                                   Execution execution) {
  Require(!config.dp.epsilons.empty(), "dp.epsilons is empty");
  Require(config.dp.shadows <= data.shadow_targets.size(),
          "dp.shadows exceeds the shadow targets available");
  std::vector<std::size_t> head(config.dp.shadows);
  std::iota(head.begin(), head.end(), 0);
  const LabeledDataset shadow_targets = data.shadow_targets.Subset(head);
  const MlpArchitecture arch = config.ReleasedArchitecture();
  const metrics::OracleReport oracle = metrics::MakeOracleReport(
      data.targets.FeatureMatrix(), data.oracle_pool, execution);
  const ModelParams probe = TrainProbeClassifier(config, data);
  const shadow::Featurizer featurizer =
      MakeFeaturizer(config.attack.featurizer, data);

  std::vector<DpSweepRow> rows;
  for (double epsilon : config.dp.epsilons) {
    const TrainConfig base = SweepTrainConfig(config, epsilon);
    for (std::size_t r = 0; r < config.dp.repeats; ++r) {
      // Fresh hidden randomness and a fresh reconstructor per repeat.
      TrainConfig train = base;
      train.noise_seed = DeriveSeed(base.noise_seed, r);
      if (config.released.secret_init) {
        train.init_seed = DeriveSeed(base.init_seed, r);
      }
      const std::vector<ModelParams> released = TrainReleasedModels(
          data.fixed, data.targets, arch, train, config.Secret(), execution);
      shadow::ShadowOptions options;
      options.secret = config.Secret();
      options.execution = execution;
      const shadow::ShadowSet set = shadow::GenShadows(
          data.fixed, shadow_targets, arch, train, featurizer, options);
      shadow::RecoNNConfig reconn_config = config.attack.reconn;
      reconn_config.seed = DeriveSeed(config.attack.reconn.seed, r);
      const shadow::RecoNN reconn = shadow::TrainRecoNN(set, reconn_config);
      const AttackReport report =
          EvaluateAttack(reconn, released, data, oracle, probe, execution);
      Vector acc;
      for (const ModelParams& m : released) {
        acc.push_back(Accuracy(m, data.targets));
      }
      rows.push_back({epsilon, train.noise_multiplier, r, report.mean_mse,
                      report.threshold, MeanOf(acc)});
    }
  }
  return rows;
}

std::vector<DpSweepLevel> SummarizeDpSweep(
    const std::vector<DpSweepRow>& rows) {
  std::vector<DpSweepLevel> levels;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    Vector mse, acc;
    while (j < rows.size() && (rows[j].epsilon == rows[i].epsilon)) {
      mse.push_back(rows[j].mean_mse);
      acc.push_back(rows[j].accuracy);
      ++j;
    }
    levels.push_back({rows[i].epsilon, rows[i].sigma, MeanOf(mse),
                      StandardError(mse), MeanOf(acc)});
    i = j;
  }
  return levels;
}

bool NonDecreasingWithin(const std::vector<DpSweepLevel>& levels,
                         double tolerance_se) {
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double slack =
        tolerance_se * std::hypot(levels[i].se_mse, levels[i + 1].se_mse);
    if (levels[i].mean_mse > levels[i + 1].mean_mse + slack) return false;
  }
  return true;
}

}  // namespace reconlab::experiment

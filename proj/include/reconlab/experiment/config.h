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
#ifndef RECONLAB_EXPERIMENT_CONFIG_H_
#define RECONLAB_EXPERIMENT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reconlab/dp/accounting.h"
#include "reconlab/nn/mlp.h"
#include "reconlab/nn/train.h"
#include "reconlab/shadow/reconn.h"

namespace reconlab::experiment {

enum class Profile { kDeskSynthetic, kDeskMnist14, kFullMnist };

std::string_view ProfileName(Profile p);
Profile ParseProfile(std::string_view name);

struct DataConfig {
  // Synthetic blobs.
  std::size_t dim = 64;
  std::size_t num_classes = 10;
  double cluster_std = 0.1;
  std::uint64_t seed = 1;
  // IDX files; several comma-separated files are concatenated in order.
  std::vector<std::string> images;
  std::vector<std::string> labels;
  std::size_t downsample = 1;
  // Out-of-distribution shadow pool. Synthetic profiles draw it from blobs
  // with `ood_seed`; image profiles read `ood_images`/`ood_labels`.
  bool ood = false;
  std::uint64_t ood_seed = 7;
  std::vector<std::string> ood_images;
  std::vector<std::string> ood_labels;
};

struct SplitConfig {
  std::size_t fixed = 500;
  // Shadow targets k; the pool additionally holds `probes` points.
  std::size_t shadows = 2000;
  std::size_t probes = 200;
  std::size_t targets = 100;
  std::uint64_t seed = 2;
};

struct ReleasedConfig {
  std::vector<std::size_t> hidden = {10};
  Activation activation = Activation::kElu;
  TrainConfig train;
  bool secret_init = false;
  bool secret_shuffle = false;
};

struct AttackConfig {
  // "white-box", "layers=<i,j>" or "black-box" (uses split.probes).
  std::string featurizer = "white-box";
  shadow::RecoNNConfig reconn;
};

struct DpConfig {
  double clip_norm = 1.0;
  double delta = 1e-5;
  dp::Adjacency adjacency = dp::Adjacency::kReplace;
  // Infinity stands for the non-private release.
  std::vector<double> epsilons;
  std::size_t repeats = 3;
  std::size_t shadows = 1000;
};

struct ExperimentConfig {
  Profile profile = Profile::kDeskSynthetic;
  std::string output_dir = "out";
  DataConfig data;
  SplitConfig split;
  ReleasedConfig released;
  AttackConfig attack;
  DpConfig dp;

  // Structural checks plus existence of referenced files.
  void Validate() const;
  std::size_t InputDim() const;
  MlpArchitecture ReleasedArchitecture() const;
  SecretSeeds Secret() const;
};

ExperimentConfig DefaultConfig(Profile profile);

// Parses "[section]" headers and "key = value" lines; '#' starts a comment.
// Keys are looked up as "section.key"; keys before any header belong to
// [experiment]. `experiment.profile` selects the defaults that the remaining
// keys override, wherever it appears. Unknown and repeated keys are errors.
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::string& path);

// Applies one "section.key=value" override.
void SetValue(ExperimentConfig& config, std::string_view assignment);

// Every key in canonical order; parsing this reproduces the config.
std::string ToText(const ExperimentConfig& config);

// Hex digest of ToText(), ignoring output_dir.
std::string ConfigHash(const ExperimentConfig& config);

}  // namespace reconlab::experiment

#endif  // RECONLAB_EXPERIMENT_CONFIG_H_

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
#ifndef RECONLAB_TOOLS_COMMANDS_H_
#define RECONLAB_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reconlab/experiment/config.h"

namespace reconlab::cli {

// Options shared by every config-driven command.
struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  bool serial = false;
};

experiment::ExperimentConfig ResolveConfig(const CommonOptions& common);

struct TrainReleasedOptions {
  CommonOptions common;
  std::optional<std::size_t> targets;
};
int TrainReleasedCommand(const TrainReleasedOptions& options);

struct GenShadowsOptions {
  CommonOptions common;
  // Prefix of the configured shadow pool; all of it when unset.
  std::optional<std::size_t> k;
  std::optional<std::size_t> probe_size;
  std::string featurizer;
  std::string layers;
};
int GenShadowsCommand(const GenShadowsOptions& options);

struct AttackOptions {
  CommonOptions common;
};
int AttackCommand(const AttackOptions& options);

struct GlmAttackOptions {
  std::string fixed_path;
  std::string theta_path;
  std::string target_path;
  std::string family = "linear";
  double lambda = 0.0;
  bool no_intercept = false;
  std::optional<double> label;
};
int GlmAttackCommand(const GlmAttackOptions& options);

struct MiaOptions {
  CommonOptions common;
  std::size_t trials = 100;
  std::string attack = "trivial";
  std::uint64_t seed = 0;
  std::size_t loss_models = 0;
  bool vary_init = false;
};
int MiaCommand(const MiaOptions& options);

struct DpSweepOptions {
  CommonOptions common;
};
int DpSweepCommand(const DpSweepOptions& options);

struct ReroBoundOptions {
  bool thm2 = false, cor1 = false, cor2 = false, thm3 = false, prop1 = false,
       prop2 = false;
  std::optional<double> kappa;
  std::string prior;
  std::optional<std::size_t> d;
  std::optional<double> eta;
  std::optional<double> sigma;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::vector<double> eps;
  std::vector<double> rho;
  std::string table_path;
};
int ReroBoundCommand(const ReroBoundOptions& options);

struct ReroCheckOptions {
  std::size_t trials = 2000;
  std::uint64_t seed = 2024;
  std::string csv_path;
  bool serial = false;
};
// Returns 1 when any cell violates its bound.
int ReroCheckCommand(const ReroCheckOptions& options);

}  // namespace reconlab::cli

#endif  // RECONLAB_TOOLS_COMMANDS_H_

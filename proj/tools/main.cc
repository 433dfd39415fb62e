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
// reconlab: reconstruction attacks, membership inference, DP mitigation and
// reconstruction-robustness bounds from the command line.

#include <exception>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.h"
#include "reconlab/common.h"
#include "reconlab/parallel.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void AddCommon(CLI::App* sub, reconlab::cli::CommonOptions& c) {
  sub->add_option("--config", c.config_path, "Experiment config file")
      ->check(CLI::ExistingFile);
  sub->add_option("--set", c.overrides,
                  "Override one config key, e.g. --set split.shadows=500")
      ->take_all();
  sub->add_option("--out", c.output_dir, "Output directory");
  sub->add_flag("--serial", c.serial, "Use the serial reference path");
}

// A flag that appends a fixed override when present.
void AddOverrideFlag(CLI::App* sub, const std::string& name,
                     const std::string& assignment, const std::string& help,
                     reconlab::cli::CommonOptions& c) {
  sub->add_flag_callback(
      name, [&c, assignment] { c.overrides.push_back(assignment); }, help);
}

template <typename T>
void AddOverrideOption(CLI::App* sub, const std::string& name,
                       const std::string& key, const std::string& help,
                       reconlab::cli::CommonOptions& c) {
  sub->add_option_function<T>(
      name,
      [&c, key](const T& v) {
        std::ostringstream s;
        s << key << '=' << v;
        c.overrides.push_back(s.str());
      },
      help);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace reconlab::cli;
  CLI::App app{"Training-data reconstruction and privacy toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "reconlab 1.0.0");

  TrainReleasedOptions train;
  auto* train_cmd = app.add_subcommand(
      "train-released", "Train one released model per test target");
  AddCommon(train_cmd, train.common);
  train_cmd->add_option("--targets", train.targets,
                        "Train only the first N targets");
  AddOverrideFlag(train_cmd, "--random-init", "released.secret_init=true",
                  "Draw a hidden init seed per model", train.common);

  GenShadowsOptions shadows;
  auto* shadows_cmd =
      app.add_subcommand("gen-shadows", "Train shadow models and featurize");
  AddCommon(shadows_cmd, shadows.common);
  shadows_cmd->add_option("--k", shadows.k,
                          "Number of shadow models (prefix of the pool)");
  AddOverrideFlag(shadows_cmd, "--ood-pool", "data.ood=true",
                  "Draw shadow targets out of distribution, random labels",
                  shadows.common);
  AddOverrideFlag(shadows_cmd, "--random-init", "released.secret_init=true",
                  "Draw a hidden init seed per model", shadows.common);
  shadows_cmd->add_option("--featurizer", shadows.featurizer,
                          "white-box, layers=I[,J..] or black-box[:N]");
  shadows_cmd->add_option("--layers", shadows.layers,
                          "Comma-separated layer indices to release");
  shadows_cmd->add_option("--probe-size", shadows.probe_size,
                          "Black-box probe count");

  AttackOptions attack;
  auto* attack_cmd = app.add_subcommand(
      "attack", "Train the reconstructor and attack every released model");
  AddCommon(attack_cmd, attack.common);

  GlmAttackOptions glm;
  auto* glm_cmd = app.add_subcommand(
      "glm-attack", "Closed-form reconstruction against a released GLM");
  glm_cmd->add_option("--fixed", glm.fixed_path,
                      "CSV of the fixed set, label in the last column")
      ->required();
  glm_cmd->add_option("--theta", glm.theta_path,
                      "CSV with one row of released parameters");
  glm_cmd->add_option("--target", glm.target_path,
                      "CSV with the target row; the model is fitted here");
  glm_cmd->add_option("--family", glm.family, "linear, ridge or logistic");
  glm_cmd->add_option("--lambda", glm.lambda, "Penalty strength");
  glm_cmd->add_flag("--no-intercept", glm.no_intercept,
                    "Linear regression without intercept, label known");
  glm_cmd->add_option("--label", glm.label, "Known target label");

  MiaOptions mia;
  auto* mia_cmd =
      app.add_subcommand("mia", "Informed membership inference trials");
  AddCommon(mia_cmd, mia.common);
  mia_cmd->add_option("--trials", mia.trials, "Number of trials");
  mia_cmd->add_option("--attack", mia.attack, "trivial or random");
  mia_cmd->add_option("--seed", mia.seed, "Trial seed");
  mia_cmd->add_option("--loss-models", mia.loss_models,
                      "Also sample N in/out models for loss histograms");
  mia_cmd->add_flag("--vary-init", mia.vary_init,
                    "Loss histograms with a fresh init per model");

  DpSweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand(
      "dp-sweep", "Attack MSE and accuracy across DP noise levels");
  AddCommon(sweep_cmd, sweep.common);
  AddOverrideOption<std::string>(sweep_cmd, "--epsilons", "dp.epsilons",
                                 "Comma-separated epsilons, inf allowed",
                                 sweep.common);
  AddOverrideOption<std::size_t>(sweep_cmd, "--repeats", "dp.repeats",
                                 "Repeats per level", sweep.common);
  AddOverrideOption<std::size_t>(sweep_cmd, "--shadows", "dp.shadows",
                                 "Shadow models per level", sweep.common);

  ReroBoundOptions bound;
  auto* bound_cmd = app.add_subcommand(
      "rero-bound", "Evaluate a reconstruction-robustness bound");
  bound_cmd->add_flag("--thm2", bound.thm2, "RDP to ReRo");
  bound_cmd->add_flag("--cor1", bound.cor1, "Pure DP to ReRo");
  bound_cmd->add_flag("--cor2", bound.cor2, "zCDP to ReRo");
  bound_cmd->add_flag("--thm3", bound.thm3, "ReRo to DP delta");
  bound_cmd->add_flag("--prop1", bound.prop1, "Uniform ball prior");
  bound_cmd->add_flag("--prop2", bound.prop2, "Gaussian prior");
  bound_cmd->add_option("--kappa", bound.kappa, "Baseline error");
  bound_cmd->add_option("--prior", bound.prior,
                        "uniform-ball or gaussian; computes kappa");
  bound_cmd->add_option("--d", bound.d, "Dimension");
  bound_cmd->add_option("--eta", bound.eta, "Error threshold");
  bound_cmd->add_option("--sigma", bound.sigma, "Gaussian prior scale");
  bound_cmd->add_option("--alpha", bound.alpha, "Renyi order");
  bound_cmd->add_option("--gamma", bound.gamma, "ReRo success probability");
  bound_cmd->add_option("--eps", bound.eps, "Epsilon values")
      ->delimiter(',');
  bound_cmd->add_option("--rho", bound.rho, "zCDP rho values")
      ->delimiter(',');
  bound_cmd->add_option("--table", bound.table_path, "Write a CSV table");

  ReroCheckOptions check;
  auto* check_cmd = app.add_subcommand(
      "rero-check", "Empirical soundness check of the zCDP bound");
  check_cmd->add_option("--trials", check.trials, "Trials per cell");
  check_cmd->add_option("--seed", check.seed, "Seed");
  check_cmd->add_option("--csv", check.csv_path, "Write the grid as CSV");
  check_cmd->add_flag("--serial", check.serial,
                      "Use the serial reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  reconlab::ApplyThreadLimitFromEnv();
  try {
    if (*train_cmd) return TrainReleasedCommand(train);
    if (*shadows_cmd) return GenShadowsCommand(shadows);
    if (*attack_cmd) return AttackCommand(attack);
    if (*glm_cmd) return GlmAttackCommand(glm);
    if (*mia_cmd) return MiaCommand(mia);
    if (*sweep_cmd) return DpSweepCommand(sweep);
    if (*bound_cmd) return ReroBoundCommand(bound);
    if (*check_cmd) return ReroCheckCommand(check);
  } catch (const reconlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const reconlab::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

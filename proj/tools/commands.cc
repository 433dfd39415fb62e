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
#include "commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "reconlab/data/dataset.h"
#include "reconlab/experiment/pipeline.h"
#include "reconlab/glm/glm.h"
#include "reconlab/io/serialize.h"
#include "reconlab/metrics/oracle.h"
#include "reconlab/mia/mia.h"
#include "reconlab/rero/rero.h"
#include "reconlab/rero/soundness.h"
#include "reconlab/rng.h"

namespace reconlab::cli {
namespace {

namespace fs = std::filesystem;
using experiment::ExperimentConfig;
using experiment::ExperimentData;

std::string Fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string Join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += Fmt(values[i]);
  }
  return out;
}

Execution Exec(const CommonOptions& c) {
  return c.serial ? Execution::kSerial : Execution::kParallel;
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(out.good(), "cannot write '" + path.string() + "'");
  return out;
}

void Close(std::ofstream& out, const fs::path& path) {
  out.close();
  Require(!out.fail(), "write failed for '" + path.string() + "'");
}

std::string HexHash(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(HashBytes(text)));
  return buf;
}

std::string HashLine(const std::string& hash) {
  return "# config_hash=" + hash + "\n";
}

fs::path ReleasedPath(const fs::path& dir, std::size_t t) {
  char name[32];
  std::snprintf(name, sizeof(name), "target_%04zu.params", t);
  return dir / name;
}

LabeledDataset Prefix(const LabeledDataset& d, std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return d.Subset(idx);
}

}  // namespace

ExperimentConfig ResolveConfig(const CommonOptions& common) {
  ExperimentConfig config =
      common.config_path.empty()
          ? experiment::DefaultConfig(experiment::Profile::kDeskSynthetic)
          : experiment::LoadConfig(common.config_path);
  for (const std::string& o : common.overrides) experiment::SetValue(config, o);
  if (!common.output_dir.empty()) config.output_dir = common.output_dir;
  config.Validate();
  return config;
}

int TrainReleasedCommand(const TrainReleasedOptions& options) {
  const ExperimentConfig config = ResolveConfig(options.common);
  const ExperimentData data = experiment::PrepareData(config);
  std::size_t n = data.targets.size();
  if (options.targets) {
    Require(*options.targets > 0 && *options.targets <= n,
            "--targets must lie in [1, split.targets]");
    n = *options.targets;
  }
  const LabeledDataset targets = Prefix(data.targets, n);
  const MlpArchitecture arch = config.ReleasedArchitecture();
  const std::vector<ModelParams> models = experiment::TrainReleasedModels(
      data.fixed, targets, arch, config.released.train, config.Secret(),
      Exec(options.common));

  const fs::path dir = fs::path(config.output_dir) / "released";
  fs::create_directories(dir);
  const fs::path manifest_path = dir / "manifest.csv";
  std::ofstream manifest = OpenOutput(manifest_path);
  manifest << HashLine(experiment::ConfigHash(config));
  manifest << "target,file,train_accuracy\n";
  for (std::size_t t = 0; t < n; ++t) {
    const fs::path path = ReleasedPath(dir, t);
    io::SaveParams(path, models[t],
                   WithDerivedSeeds(config.released.train, config.Secret(),
                                    "release", t));
    manifest << t << ',' << path.filename().string() << ','
             << Fmt(Accuracy(models[t], data.fixed.With(targets[t]))) << '\n';
  }
  Close(manifest, manifest_path);
  std::cout << "released_models=" << n << " dir=" << dir.string() << '\n';
  return 0;
}

int GenShadowsCommand(const GenShadowsOptions& options) {
  CommonOptions common = options.common;
  Require(options.featurizer.empty() || options.layers.empty(),
          "--featurizer and --layers are mutually exclusive");
  if (!options.featurizer.empty()) {
    common.overrides.push_back("attack.featurizer=" + options.featurizer);
  }
  if (!options.layers.empty()) {
    common.overrides.push_back("attack.featurizer=layers=" + options.layers);
  }
  ExperimentConfig config = ResolveConfig(common);
  if (options.probe_size) {
    Require(io::ParseFeaturizer(config.attack.featurizer).mode ==
                shadow::Featurizer::Mode::kBlackBox,
            "--probe-size applies to the black-box featurizer only");
    Require(*options.probe_size > 0, "--probe-size must be positive");
    config.attack.featurizer =
        "black-box:" + std::to_string(*options.probe_size);
  }
  if (options.k) {
    Require(*options.k > 0, "--k must be positive");
    Require(*options.k <= config.split.shadows, "--k exceeds split.shadows");
  }
  const ExperimentData data = experiment::PrepareData(config);
  const std::size_t k = options.k.value_or(data.shadow_targets.size());
  const LabeledDataset shadow_targets = Prefix(data.shadow_targets, k);
  shadow::ShadowOptions shadow_options;
  shadow_options.secret = config.Secret();
  shadow_options.execution = Exec(common);
  const shadow::ShadowSet set = shadow::GenShadows(
      data.fixed, shadow_targets, config.ReleasedArchitecture(),
      config.released.train,
      experiment::MakeFeaturizer(config.attack.featurizer, data),
      shadow_options);

  const fs::path out(config.output_dir);
  fs::create_directories(out);
  io::SaveShadowSet((out / "shadows").string(), set);
  WriteCsv(shadow_targets, (out / "shadow_targets.csv").string());
  const fs::path manifest_path = out / "shadows.manifest";
  std::ofstream manifest = OpenOutput(manifest_path);
  manifest << HashLine(experiment::ConfigHash(config));
  manifest << "k=" << k << "\nfeaturizer=" << set.featurizer.Describe()
           << "\nfeature_len=" << set.features.cols << "\nood="
           << (config.data.ood ? "true" : "false") << '\n';
  Close(manifest, manifest_path);
  std::cout << "shadows=" << k << " featurizer=" << set.featurizer.Describe()
            << " feature_len=" << set.features.cols << '\n';
  return 0;
}

int AttackCommand(const AttackOptions& options) {
  const ExperimentConfig config = ResolveConfig(options.common);
  ExperimentData data = experiment::PrepareData(config);
  const fs::path out(config.output_dir);
  const fs::path dir = out / "released";
  std::vector<ModelParams> released;
  while (released.size() < data.targets.size() &&
         fs::exists(ReleasedPath(dir, released.size()))) {
    released.push_back(io::LoadParams(ReleasedPath(dir, released.size())));
  }
  Require(!released.empty(),
          "no released models in '" + dir.string() + "'; run train-released");
  Require(released.front().arch() == config.ReleasedArchitecture(),
          "released models do not match the configured architecture");
  data.targets = Prefix(data.targets, released.size());

  const shadow::ShadowSet set = io::LoadShadowSet((out / "shadows").string());
  const shadow::RecoNN reconn = shadow::TrainRecoNN(set, config.attack.reconn);
  const Execution exec = Exec(options.common);
  const metrics::OracleReport oracle = metrics::MakeOracleReport(
      data.targets.FeatureMatrix(), data.oracle_pool, exec);
  const ModelParams probe = experiment::TrainProbeClassifier(config, data);
  const experiment::AttackReport report =
      experiment::EvaluateAttack(reconn, released, data, oracle, probe, exec);

  const std::string hash = HashLine(experiment::ConfigHash(config));
  const fs::path csv_path = out / "attack.csv";
  std::ofstream csv = OpenOutput(csv_path);
  csv << hash << "target,mse,kl,nn_distance,success\n";
  for (const experiment::TargetResult& r : report.rows) {
    csv << r.index << ',' << Fmt(r.mse) << ',' << Fmt(r.kl) << ','
        << Fmt(r.nn_distance) << ',' << (r.success ? 1 : 0) << '\n';
  }
  Close(csv, csv_path);

  std::ostringstream summary;
  summary << "targets=" << report.rows.size()
          << "\nfeaturizer=" << set.featurizer.Describe()
          << "\nshadows=" << set.size() << "\nmean_mse=" << Fmt(report.mean_mse)
          << "\nse_mse=" << Fmt(report.se_mse)
          << "\nmean_kl=" << Fmt(report.mean_kl)
          << "\noracle_threshold=" << Fmt(report.threshold)
          << "\noracle_p1=" << Fmt(report.p1)
          << "\noracle_p10=" << Fmt(report.p10)
          << "\noracle_p50=" << Fmt(report.p50)
          << "\nprobe_accuracy=" << Fmt(report.probe_accuracy)
          << "\nspearman_mse_kl=" << Fmt(report.spearman_mse_kl)
          << "\nsuccess=" << (report.success() ? "true" : "false") << '\n';
  const fs::path summary_path = out / "attack_summary.txt";
  std::ofstream summary_file = OpenOutput(summary_path);
  summary_file << hash << summary.str();
  Close(summary_file, summary_path);
  std::cout << summary.str();
  return 0;
}

int GlmAttackCommand(const GlmAttackOptions& options) {
  const glm::Family family = glm::ParseFamily(options.family);
  const glm::GlmSpec spec{family, options.lambda, !options.no_intercept};
  Require(options.lambda >= 0, "--lambda must be non-negative");
  if (options.no_intercept) {
    Require(options.label.has_value(),
            "--no-intercept needs the target label via --label");
    Require(family == glm::Family::kLinear && options.lambda == 0,
            "--no-intercept supports unpenalized linear regression only");
  }
  Require(options.theta_path.empty() != options.target_path.empty(),
          "give exactly one of --theta and --target");

  const NumericTable table = ReadNumericCsv(options.fixed_path);
  Require(table.values.cols >= 2 && table.values.rows > 0,
          "--fixed needs feature columns plus a label column");
  const std::size_t d = table.values.cols - 1;
  glm::GlmData fixed{Matrix(table.values.rows, d), {}};
  for (std::size_t r = 0; r < table.values.rows; ++r) {
    for (std::size_t j = 0; j < d; ++j) fixed.x(r, j) = table.values(r, j);
    fixed.y.push_back(table.values(r, d));
  }

  Vector theta;
  Vector target_x;
  double target_y = 0.0;
  const bool have_target = !options.target_path.empty();
  if (have_target) {
    const NumericTable t = ReadNumericCsv(options.target_path);
    Require(t.values.rows == 1 && t.values.cols == d + 1,
            "--target needs one row with the same columns as --fixed");
    target_x.assign(t.values.data.begin(), t.values.data.begin() + d);
    target_y = t.values(0, d);
    glm::GlmData full = fixed;
    full.x.data.insert(full.x.data.end(), target_x.begin(), target_x.end());
    ++full.x.rows;
    full.y.push_back(target_y);
    theta = glm::FitGlm(full, spec).theta;
  } else {
    const NumericTable t = ReadNumericCsv(options.theta_path);
    Require(t.values.rows == 1, "--theta needs exactly one row");
    theta = t.values.data;
  }

  std::cout << "family=" << glm::FamilyName(family)
            << " lambda=" << Fmt(options.lambda)
            << " intercept=" << (spec.intercept ? "true" : "false") << '\n';
  if (options.no_intercept) {
    const auto roots =
        glm::ReconstructLinregNoIntercept(theta, fixed, *options.label);
    for (std::size_t i = 0; i < 2; ++i) {
      std::cout << "root" << i << '=' << Join(roots[i]) << '\n';
    }
    if (have_target) {
      for (std::size_t i = 0; i < 2; ++i) {
        double err = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          err = std::max(err, std::abs(roots[i][j] - target_x[j]));
        }
        std::cout << "root" << i << "_max_abs_error=" << Fmt(err) << '\n';
      }
    }
    return 0;
  }
  const glm::GlmReconstruction rec = glm::ReconstructGlm(theta, fixed, spec);
  const std::span<const double> x(rec.x.data() + 1, rec.x.size() - 1);
  std::cout << "x=" << Join(x) << "\ny=" << Fmt(rec.y)
            << "\noptimality_residual=" << Fmt(rec.optimality_residual)
            << '\n';
  if (have_target) {
    double err = std::abs(rec.y - target_y);
    for (std::size_t j = 0; j < d; ++j) {
      err = std::max(err, std::abs(x[j] - target_x[j]));
    }
    std::cout << "max_abs_error=" << Fmt(err)
              << "\nexact=" << (err <= 1e-6 ? "true" : "false") << '\n';
  }
  return 0;
}

int MiaCommand(const MiaOptions& options) {
  const ExperimentConfig config = ResolveConfig(options.common);
  const ExperimentData data = experiment::PrepareData(config);
  Require(options.trials > 0, "--trials must be positive");
  Require(data.targets.size() >= 2, "MIA needs at least two targets");
  mia::MiaAttack attack;
  if (options.attack == "trivial") {
    attack = [](const ModelParams& released, const LabeledDataset& fixed,
                const MlpArchitecture& arch, const TrainConfig& train,
                const DataPoint& z0, const DataPoint& z1) {
      return mia::TrivialDeterministicMia(released, fixed, arch, train, z0,
                                          z1);
    };
  } else if (options.attack == "random") {
    attack = mia::RandomGuesser(options.seed);
  } else {
    throw ValidationError("unknown MIA attack '" + options.attack +
                          "' (trivial, random)");
  }
  const std::size_t n = data.targets.size();
  std::vector<std::pair<DataPoint, DataPoint>> pairs;
  for (std::size_t t = 0; t < options.trials; ++t) {
    pairs.emplace_back(data.targets[t % n], data.targets[(t + 1) % n]);
  }
  const MlpArchitecture arch = config.ReleasedArchitecture();
  const Execution exec = Exec(options.common);
  const std::vector<mia::MiaTrial> trials =
      mia::RunMiaTrials(data.fixed, arch, config.released.train,
                        config.Secret(), attack, pairs, options.seed, exec);

  const std::string hash = HashLine(experiment::ConfigHash(config));
  const fs::path out(config.output_dir);
  const fs::path csv_path = out / "mia.csv";
  std::ofstream csv = OpenOutput(csv_path);
  csv << hash << "trial,b,guess,correct\n";
  std::size_t correct = 0;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    csv << t << ',' << trials[t].b << ',' << trials[t].guess << ','
        << (trials[t].correct ? 1 : 0) << '\n';
    correct += trials[t].correct;
  }
  Close(csv, csv_path);
  const rero::RateEstimate acc = rero::WilsonInterval(correct, trials.size());
  std::cout << "attack=" << options.attack << " trials=" << trials.size()
            << " accuracy=" << Fmt(acc.rate) << " ci99=[" << Fmt(acc.lower)
            << ',' << Fmt(acc.upper) << "]\n";

  if (options.loss_models > 0) {
    const mia::LossDistributions losses =
        mia::LossHistogram(data.targets[0], data.fixed, arch,
                           config.released.train, options.loss_models,
                           options.vary_init, exec);
    const fs::path loss_path = out / "mia_losses.csv";
    std::ofstream loss_csv = OpenOutput(loss_path);
    loss_csv << hash << "side,loss\n";
    for (double v : losses.in) loss_csv << "in," << Fmt(v) << '\n';
    for (double v : losses.out) loss_csv << "out," << Fmt(v) << '\n';
    Close(loss_csv, loss_path);
    std::cout << "loss_models=" << options.loss_models
              << " vary_init=" << (options.vary_init ? "true" : "false")
              << " overlap=" << Fmt(mia::OverlapCoefficient(losses.in,
                                                             losses.out))
              << '\n';
  }
  return 0;
}

int DpSweepCommand(const DpSweepOptions& options) {
  const ExperimentConfig config = ResolveConfig(options.common);
  const ExperimentData data = experiment::PrepareData(config);
  const std::vector<experiment::DpSweepRow> rows =
      experiment::RunDpSweep(config, data, Exec(options.common));
  const std::vector<experiment::DpSweepLevel> levels =
      experiment::SummarizeDpSweep(rows);

  const std::string hash = HashLine(experiment::ConfigHash(config));
  const fs::path out(config.output_dir);
  const fs::path rows_path = out / "dp_sweep.csv";
  std::ofstream csv = OpenOutput(rows_path);
  csv << hash << "epsilon,delta,sigma,repeat,mean_mse,oracle_threshold,"
                 "test_accuracy\n";
  for (const experiment::DpSweepRow& r : rows) {
    csv << Fmt(r.epsilon) << ',' << Fmt(config.dp.delta) << ','
        << Fmt(r.sigma) << ',' << r.repeat << ',' << Fmt(r.mean_mse) << ','
        << Fmt(r.threshold) << ',' << Fmt(r.accuracy) << '\n';
  }
  Close(csv, rows_path);
  const fs::path levels_path = out / "dp_sweep_levels.csv";
  std::ofstream lcsv = OpenOutput(levels_path);
  lcsv << hash << "epsilon,delta,sigma,mean_mse,se_mse,test_accuracy\n";
  std::cout << "epsilon,sigma,mean_mse,se_mse,test_accuracy\n";
  for (const experiment::DpSweepLevel& l : levels) {
    const std::string line = Fmt(l.epsilon) + ',' + Fmt(l.sigma) + ',' +
                             Fmt(l.mean_mse) + ',' + Fmt(l.se_mse) + ',' +
                             Fmt(l.accuracy);
    lcsv << Fmt(l.epsilon) << ',' << Fmt(config.dp.delta) << ','
         << Fmt(l.sigma) << ',' << Fmt(l.mean_mse) << ',' << Fmt(l.se_mse)
         << ',' << Fmt(l.accuracy) << '\n';
    std::cout << line << '\n';
  }
  Close(lcsv, levels_path);
  std::cout << "oracle_threshold=" << Fmt(rows.front().threshold)
            << "\nnon_decreasing_within_2se="
            << (experiment::NonDecreasingWithin(levels, 2.0) ? "true"
                                                            : "false")
            << '\n';
  return 0;
}

namespace {

struct BoundRow {
  std::string d;
  std::string eta;
  std::string prior = "-";
  std::string variant;
  std::string value;
  std::string kappa;
  std::string gamma;
  std::string source;
  std::string delta;
};

std::string OptFmt(const std::optional<double>& v) {
  return v ? Fmt(*v) : "";
}

double ResolveKappa(const ReroBoundOptions& o, std::string* prior) {
  if (o.kappa) {
    Require(o.prior.empty(), "give --kappa or --prior, not both");
    Require(*o.kappa >= 0 && *o.kappa <= 1, "--kappa must lie in [0, 1]");
    *prior = "-";
    return *o.kappa;
  }
  Require(!o.prior.empty(), "this bound needs --kappa or --prior");
  Require(o.d && o.eta, "--prior needs --d and --eta");
  *prior = o.prior;
  if (o.prior == "uniform-ball") return rero::KappaUniformBall(*o.eta, *o.d);
  if (o.prior == "gaussian") {
    Require(o.sigma.has_value(), "--prior gaussian needs --sigma");
    return rero::KappaGaussianCenter(*o.eta, *o.sigma, *o.d);
  }
  throw ValidationError("unknown prior '" + o.prior +
                        "' (uniform-ball, gaussian)");
}

rero::Privacy::Kind PropPrivacy(const ReroBoundOptions& o,
                                std::vector<double>* values) {
  Require(o.eps.empty() != o.rho.empty(),
          "give exactly one of --eps (pure DP) and --rho (zCDP)");
  *values = o.eps.empty() ? o.rho : o.eps;
  return o.eps.empty() ? rero::Privacy::Kind::kZcdp
                       : rero::Privacy::Kind::kPureDp;
}

}  // namespace

int ReroBoundCommand(const ReroBoundOptions& o) {
  const int modes = o.thm2 + o.cor1 + o.cor2 + o.thm3 + o.prop1 + o.prop2;
  Require(modes == 1,
          "choose exactly one of --thm2 --cor1 --cor2 --thm3 --prop1 --prop2");
  std::vector<BoundRow> rows;
  auto from_bound = [&](const rero::ReRoBound& b, const std::string& prior,
                        const std::string& variant) {
    BoundRow r;
    r.d = o.d ? std::to_string(*o.d) : "";
    r.eta = OptFmt(o.eta);
    r.prior = prior;
    r.variant = variant;
    r.value = Fmt(b.privacy);
    r.kappa = Fmt(b.kappa);
    r.gamma = Fmt(b.gamma);
    r.source = std::string(rero::BoundSourceName(b.source));
    rows.push_back(r);
  };
  const double eta = o.eta.value_or(0.0);
  if (o.thm2 || o.cor1) {
    Require(!o.eps.empty(), "this bound needs --eps");
    std::string prior;
    const double kappa = ResolveKappa(o, &prior);
    for (double e : o.eps) {
      if (o.thm2) {
        Require(o.alpha.has_value(), "--thm2 needs --alpha");
        from_bound(rero::RdpToRero(*o.alpha, e, kappa, eta), prior,
                   "rdp-alpha=" + Fmt(*o.alpha));
      } else {
        from_bound(rero::PureDpToRero(e, kappa, eta), prior, "dp");
      }
    }
  } else if (o.cor2) {
    Require(!o.rho.empty(), "--cor2 needs --rho");
    std::string prior;
    const double kappa = ResolveKappa(o, &prior);
    for (double r : o.rho) {
      from_bound(rero::ZcdpToRero(r, kappa, eta), prior, "zcdp");
    }
  } else if (o.thm3) {
    Require(!o.eps.empty() && o.gamma.has_value(),
            "--thm3 needs --eps and --gamma");
    for (double e : o.eps) {
      BoundRow r;
      r.variant = "dp";
      r.value = Fmt(e);
      r.gamma = Fmt(*o.gamma);
      r.source = "thm3";
      r.delta = Fmt(rero::ReroToDp(e, *o.gamma));
      rows.push_back(r);
    }
  } else {
    Require(o.d && o.eta, "this bound needs --d and --eta");
    std::vector<double> values;
    const rero::Privacy::Kind kind = PropPrivacy(o, &values);
    const std::string variant =
        kind == rero::Privacy::Kind::kPureDp ? "dp" : "zcdp";
    for (double v : values) {
      if (o.prop1) {
        from_bound(rero::Prop1Gamma(*o.d, *o.eta, {kind, v}), "uniform-ball",
                   variant);
      } else {
        Require(o.sigma.has_value(), "--prop2 needs --sigma");
        from_bound(rero::Prop2Gamma(*o.d, *o.eta, *o.sigma, {kind, v}),
                   "gaussian", variant);
      }
    }
  }

  for (const BoundRow& r : rows) {
    std::cout << "source=" << r.source;
    if (!r.d.empty()) std::cout << " d=" << r.d;
    if (!r.eta.empty()) std::cout << " eta=" << r.eta;
    if (r.prior != "-") std::cout << " prior=" << r.prior;
    if (!r.kappa.empty()) std::cout << " kappa=" << r.kappa;
    std::cout << ' ' << r.variant << '=' << r.value << " gamma=" << r.gamma;
    if (!r.delta.empty()) std::cout << " delta=" << r.delta;
    std::cout << '\n';
  }
  if (!o.table_path.empty()) {
    std::ostringstream body;
    body << "d,eta,prior,privacy_variant,privacy_value,kappa,gamma,source,"
            "delta\n";
    for (const BoundRow& r : rows) {
      body << r.d << ',' << r.eta << ',' << r.prior << ',' << r.variant << ','
           << r.value << ',' << r.kappa << ',' << r.gamma << ',' << r.source
           << ',' << r.delta << '\n';
    }
    std::ostringstream inputs;
    inputs << "rero-bound" << o.thm2 << o.cor1 << o.cor2 << o.thm3 << o.prop1
           << o.prop2 << " kappa=" << OptFmt(o.kappa) << " prior=" << o.prior
           << " d=" << (o.d ? std::to_string(*o.d) : "")
           << " eta=" << OptFmt(o.eta) << " sigma=" << OptFmt(o.sigma)
           << " alpha=" << OptFmt(o.alpha) << " gamma=" << OptFmt(o.gamma)
           << " eps=" << Join(o.eps) << " rho=" << Join(o.rho);
    std::ofstream out = OpenOutput(o.table_path);
    out << HashLine(HexHash(inputs.str())) << body.str();
    Close(out, o.table_path);
  }
  return 0;
}

int ReroCheckCommand(const ReroCheckOptions& options) {
  rero::SoundnessGrid grid;
  Require(options.trials > 0, "--trials must be positive");
  grid.trials = options.trials;
  grid.seed = options.seed;
  const std::vector<rero::SoundnessCell> cells = rero::RunSoundnessGrid(
      grid, options.serial ? Execution::kSerial : Execution::kParallel);
  std::ostringstream body;
  body << "noise_std,eta,prior,kappa,rho,gamma,successes,trials,rate,lower,"
          "upper,sound\n";
  std::size_t violations = 0;
  for (const rero::SoundnessCell& c : cells) {
    body << Fmt(c.noise_std) << ',' << Fmt(c.eta) << ',' << c.prior << ','
         << Fmt(c.kappa) << ',' << Fmt(c.rho) << ',' << Fmt(c.gamma) << ','
         << c.rate.successes << ',' << c.rate.trials << ','
         << Fmt(c.rate.rate) << ',' << Fmt(c.rate.lower) << ','
         << Fmt(c.rate.upper) << ',' << (c.sound ? 1 : 0) << '\n';
    violations += !c.sound;
  }
  std::cout << body.str() << "cells=" << cells.size()
            << " violations=" << violations << '\n';
  if (!options.csv_path.empty()) {
    std::ostringstream inputs;
    inputs << "rero-check trials=" << grid.trials << " seed=" << grid.seed
           << " dim=" << grid.dim << " fixed=" << grid.fixed_size
           << " noise=" << Join(grid.noise_stds) << " eta=" << Join(grid.etas)
           << " slack=" << Fmt(grid.slack);
    std::ofstream out = OpenOutput(options.csv_path);
    out << HashLine(HexHash(inputs.str())) << body.str();
    Close(out, options.csv_path);
  }
  return violations == 0 ? 0 : 1;
}

}  // namespace reconlab::cli

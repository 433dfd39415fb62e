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
#include "reconlab/experiment/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "reconlab/io/serialize.h"
#include "reconlab/rng.h"

namespace reconlab::experiment {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  if (Trim(s).empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(Trim(item));
  return out;
}

std::string JoinList(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += items[i];
  }
  return out;
}

std::string FormatDouble(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDouble(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  Require(res.ec == std::errc() && res.ptr == s.data() + s.size() &&
              std::isfinite(v),
          "expected a number, got '" + s + "'");
  return v;
}

std::uint64_t ParseU64(const std::string& s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  Require(res.ec == std::errc() && res.ptr == s.data() + s.size(),
          "expected a non-negative integer, got '" + s + "'");
  return v;
}

bool ParseBool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ValidationError("expected true or false, got '" + s + "'");
}

std::string FormatBool(bool b) { return b ? "true" : "false"; }

template <typename T>
std::string FormatSizes(const std::vector<T>& v) {
  std::vector<std::string> items;
  for (T x : v) items.push_back(std::to_string(x));
  return JoinList(items);
}

std::vector<std::size_t> ParseSizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const std::string& item : SplitList(s)) out.push_back(ParseU64(item));
  return out;
}

struct Field {
  std::string key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

#define RECONLAB_FIELD(key, member, fmt, parse)                        \
  Field {                                                              \
    key, [](const ExperimentConfig& c) { return fmt(c.member); },      \
        [](ExperimentConfig& c, const std::string& v) { c.member = parse(v); } \
  }

std::string Id(const std::string& s) { return s; }
std::string FormatSize(std::size_t v) { return std::to_string(v); }
std::string FormatU64(std::uint64_t v) { return std::to_string(v); }
std::string FormatProfile(Profile p) { return std::string(ProfileName(p)); }
Profile ParseProfileString(const std::string& s) { return ParseProfile(s); }
std::string FormatActivation(Activation a) {
  return std::string(ActivationName(a));
}
Activation ParseActivationString(const std::string& s) {
  return ParseActivation(s);
}
std::string FormatOptimizer(Optimizer o) {
  return std::string(OptimizerName(o));
}
Optimizer ParseOptimizerString(const std::string& s) {
  return ParseOptimizer(s);
}
std::string FormatAdjacency(dp::Adjacency a) {
  return std::string(dp::AdjacencyName(a));
}
dp::Adjacency ParseAdjacencyString(const std::string& s) {
  return dp::ParseAdjacency(s);
}
std::string FormatDoubles(const std::vector<double>& v) {
  std::vector<std::string> items;
  for (double x : v) items.push_back(FormatDouble(x));
  return JoinList(items);
}
std::vector<double> ParseDoubles(const std::string& s) {
  std::vector<double> out;
  for (const std::string& item : SplitList(s)) out.push_back(ParseDouble(item));
  return out;
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      RECONLAB_FIELD("experiment.profile", profile, FormatProfile,
                     ParseProfileString),
      RECONLAB_FIELD("experiment.output_dir", output_dir, Id, Id),
      RECONLAB_FIELD("data.dim", data.dim, FormatSize, ParseU64),
      RECONLAB_FIELD("data.num_classes", data.num_classes, FormatSize,
                     ParseU64),
      RECONLAB_FIELD("data.cluster_std", data.cluster_std, FormatDouble,
                     ParseDouble),
      RECONLAB_FIELD("data.seed", data.seed, FormatU64, ParseU64),
      RECONLAB_FIELD("data.images", data.images, JoinList, SplitList),
      RECONLAB_FIELD("data.labels", data.labels, JoinList, SplitList),
      RECONLAB_FIELD("data.downsample", data.downsample, FormatSize,
                     ParseU64),
      RECONLAB_FIELD("data.ood", data.ood, FormatBool, ParseBool),
      RECONLAB_FIELD("data.ood_seed", data.ood_seed, FormatU64, ParseU64),
      RECONLAB_FIELD("data.ood_images", data.ood_images, JoinList, SplitList),
      RECONLAB_FIELD("data.ood_labels", data.ood_labels, JoinList, SplitList),
      RECONLAB_FIELD("split.fixed", split.fixed, FormatSize, ParseU64),
      RECONLAB_FIELD("split.shadows", split.shadows, FormatSize, ParseU64),
      RECONLAB_FIELD("split.probes", split.probes, FormatSize, ParseU64),
      RECONLAB_FIELD("split.targets", split.targets, FormatSize, ParseU64),
      RECONLAB_FIELD("split.seed", split.seed, FormatU64, ParseU64),
      RECONLAB_FIELD("released.hidden", released.hidden, FormatSizes,
                     ParseSizes),
      RECONLAB_FIELD("released.activation", released.activation,
                     FormatActivation, ParseActivationString),
      RECONLAB_FIELD("released.optimizer", released.train.optimizer,
                     FormatOptimizer, ParseOptimizerString),
      RECONLAB_FIELD("released.learning_rate", released.train.learning_rate,
                     FormatDouble, ParseDouble),
      RECONLAB_FIELD("released.momentum", released.train.momentum,
                     FormatDouble, ParseDouble),
      RECONLAB_FIELD("released.epochs", released.train.epochs, FormatSize,
                     ParseU64),
      RECONLAB_FIELD("released.batch_size", released.train.batch_size,
                     FormatSize, ParseU64),
      RECONLAB_FIELD("released.clip_norm", released.train.clip_norm,
                     FormatDouble, ParseDouble),
      RECONLAB_FIELD("released.noise_multiplier",
                     released.train.noise_multiplier, FormatDouble,
                     ParseDouble),
      RECONLAB_FIELD("released.init_seed", released.train.init_seed,
                     FormatU64, ParseU64),
      RECONLAB_FIELD("released.shuffle_seed", released.train.shuffle_seed,
                     FormatU64, ParseU64),
      RECONLAB_FIELD("released.noise_seed", released.train.noise_seed,
                     FormatU64, ParseU64),
      RECONLAB_FIELD("released.secret_init", released.secret_init, FormatBool,
                     ParseBool),
      RECONLAB_FIELD("released.secret_shuffle", released.secret_shuffle,
                     FormatBool, ParseBool),
      RECONLAB_FIELD("attack.featurizer", attack.featurizer, Id, Id),
      RECONLAB_FIELD("attack.hidden", attack.reconn.hidden_widths, FormatSizes,
                     ParseSizes),
      RECONLAB_FIELD("attack.activation", attack.reconn.activation,
                     FormatActivation, ParseActivationString),
      RECONLAB_FIELD("attack.learning_rate", attack.reconn.learning_rate,
                     FormatDouble, ParseDouble),
      RECONLAB_FIELD("attack.decay", attack.reconn.decay, FormatDouble,
                     ParseDouble),
      RECONLAB_FIELD("attack.epsilon", attack.reconn.epsilon, FormatDouble,
                     ParseDouble),
      RECONLAB_FIELD("attack.batch_size", attack.reconn.batch_size,
                     FormatSize, ParseU64),
      RECONLAB_FIELD("attack.epochs", attack.reconn.epochs, FormatSize,
                     ParseU64),
      RECONLAB_FIELD("attack.seed", attack.reconn.seed, FormatU64, ParseU64),
      RECONLAB_FIELD("dp.clip_norm", dp.clip_norm, FormatDouble, ParseDouble),
      RECONLAB_FIELD("dp.delta", dp.delta, FormatDouble, ParseDouble),
      RECONLAB_FIELD("dp.adjacency", dp.adjacency, FormatAdjacency,
                     ParseAdjacencyString),
      RECONLAB_FIELD("dp.epsilons", dp.epsilons, FormatDoubles, ParseDoubles),
      RECONLAB_FIELD("dp.repeats", dp.repeats, FormatSize, ParseU64),
      RECONLAB_FIELD("dp.shadows", dp.shadows, FormatSize, ParseU64),
  };
  return fields;
}

#undef RECONLAB_FIELD

const Field& FindField(const std::string& key) {
  for (const Field& f : Fields()) {
    if (f.key == key) return f;
  }
  throw ValidationError("unknown config key '" + key + "'");
}

void SetField(ExperimentConfig& config, const std::string& key,
              const std::string& value) {
  const Field& field = FindField(key);
  try {
    field.set(config, value);
  } catch (const ValidationError& e) {
    throw ValidationError(key + ": " + e.what());
  }
}

std::pair<std::string, std::string> SplitAssignment(std::string_view line) {
  const auto eq = line.find('=');
  Require(eq != std::string_view::npos,
          "expected key = value, got '" + std::string(line) + "'");
  return {Trim(line.substr(0, eq)), Trim(line.substr(eq + 1))};
}

void RequireFiles(const std::vector<std::string>& paths,
                  const std::string& what) {
  for (const std::string& p : paths) {
    Require(std::filesystem::is_regular_file(p),
            what + " file '" + p + "' does not exist");
  }
}

}  // namespace

std::string_view ProfileName(Profile p) {
  switch (p) {
    case Profile::kDeskSynthetic: return "desk-synthetic";
    case Profile::kDeskMnist14: return "desk-mnist14";
    case Profile::kFullMnist: return "full-mnist";
  }
  return "unknown";
}

Profile ParseProfile(std::string_view name) {
  for (Profile p : {Profile::kDeskSynthetic, Profile::kDeskMnist14,
                    Profile::kFullMnist}) {
    if (ProfileName(p) == name) return p;
  }
  throw ValidationError("unknown profile '" + std::string(name) + "'");
}

ExperimentConfig DefaultConfig(Profile profile) {
  ExperimentConfig c;
  c.profile = profile;
  c.released.train.optimizer = Optimizer::kGdMomentum;
  c.released.train.learning_rate = 0.2;
  c.released.train.momentum = 0.9;
  c.released.train.epochs = 50;
  c.released.train.init_seed = 5;
  c.dp.epsilons = {std::numeric_limits<double>::infinity(), 1000, 100, 10};
  switch (profile) {
    case Profile::kDeskSynthetic:
      break;
    case Profile::kDeskMnist14:
      c.data.downsample = 2;
      break;
    case Profile::kFullMnist:
      c.data.downsample = 1;
      c.split.fixed = 10000;
      c.split.shadows = 58800;
      c.split.probes = 200;
      c.split.targets = 1000;
      c.released.train.epochs = 100;
      c.attack.reconn.hidden_widths = {1000, 1000};
      c.dp.shadows = 10000;
      break;
  }
  return c;
}

bool IsImageProfile(Profile p) { return p != Profile::kDeskSynthetic; }

std::size_t ExperimentConfig::InputDim() const {
  if (!IsImageProfile(profile)) return data.dim;
  Require(data.downsample > 0 && 28 % data.downsample == 0,
          "data.downsample must divide 28");
  const std::size_t side = 28 / data.downsample;
  return side * side;
}

MlpArchitecture ExperimentConfig::ReleasedArchitecture() const {
  MlpArchitecture arch;
  arch.layer_widths.push_back(InputDim());
  for (std::size_t w : released.hidden) arch.layer_widths.push_back(w);
  arch.layer_widths.push_back(data.num_classes);
  arch.activation = released.activation;
  return arch;
}

SecretSeeds ExperimentConfig::Secret() const {
  SecretSeeds s;
  s.init = released.secret_init;
  s.shuffle = released.secret_shuffle;
  // The noise of a private release is never handed to the adversary.
  s.noise = true;
  return s;
}

void ExperimentConfig::Validate() const {
  Require(data.num_classes >= 2, "data.num_classes must be at least 2");
  Require(split.fixed > 0, "split.fixed must be positive");
  Require(split.shadows > 0, "split.shadows (k) must be positive");
  Require(split.targets > 0, "split.targets must be positive");
  if (IsImageProfile(profile)) {
    Require(!data.images.empty() && data.images.size() == data.labels.size(),
            "image profiles need data.images and data.labels of equal count");
    RequireFiles(data.images, "image");
    RequireFiles(data.labels, "label");
    if (data.ood) {
      Require(!data.ood_images.empty() &&
                  data.ood_images.size() == data.ood_labels.size(),
              "data.ood needs data.ood_images and data.ood_labels");
      RequireFiles(data.ood_images, "image");
      RequireFiles(data.ood_labels, "label");
    }
  } else {
    Require(data.dim > 0, "data.dim must be positive");
  }
  const MlpArchitecture arch = ReleasedArchitecture();
  arch.Validate();
  released.train.Validate();
  const shadow::Featurizer f = io::ParseFeaturizer(attack.featurizer);
  if (f.mode == shadow::Featurizer::Mode::kBlackBox) {
    Require(split.probes > 0, "the black-box featurizer needs split.probes");
  } else {
    f.Validate(arch);
  }
  attack.reconn.Validate();
  Require(dp.clip_norm > 0, "dp.clip_norm must be positive");
  Require(dp.delta > 0 && dp.delta < 1, "dp.delta must lie in (0, 1)");
  Require(dp.repeats > 0, "dp.repeats must be positive");
  Require(dp.shadows > 0, "dp.shadows must be positive");
  for (double e : dp.epsilons) Require(e > 0, "dp.epsilons must be positive");
}

ExperimentConfig ParseConfig(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::map<std::string, std::size_t> seen;
  std::string section = "experiment";
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::string line = raw.substr(0, raw.find('#'));
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      Require(line.back() == ']' && line.size() > 2,
              where + "malformed section header");
      section = Trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    std::pair<std::string, std::string> kv;
    try {
      kv = SplitAssignment(line);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
    const std::string key = section + "." + kv.first;
    Require(!seen.contains(key), where + "repeated key '" + key + "'");
    seen[key] = line_no;
    entries.emplace_back(key, kv.second);
  }
  ExperimentConfig config = DefaultConfig(Profile::kDeskSynthetic);
  for (const auto& [key, value] : entries) {
    if (key != "experiment.profile") continue;
    try {
      config = DefaultConfig(ParseProfile(value));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(seen.at(key)) + ": " +
                            e.what());
    }
  }
  for (const auto& [key, value] : entries) {
    try {
      SetField(config, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(seen.at(key)) + ": " +
                            e.what());
    }
  }
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

void SetValue(ExperimentConfig& config, std::string_view assignment) {
  const auto [key, value] = SplitAssignment(assignment);
  if (key == "experiment.profile") {
    config = DefaultConfig(ParseProfile(value));
    return;
  }
  SetField(config, key, value);
}

std::string ToText(const ExperimentConfig& config) {
  std::string out;
  std::string section;
  for (const Field& f : Fields()) {
    const auto dot = f.key.find('.');
    const std::string s = f.key.substr(0, dot);
    if (s != section) {
      if (!section.empty()) out += '\n';
      out += "[" + s + "]\n";
      section = s;
    }
    out += f.key.substr(dot + 1) + " = " + f.get(config) + "\n";
  }
  return out;
}

std::string ConfigHash(const ExperimentConfig& config) {
  ExperimentConfig located = config;
  located.output_dir.clear();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(HashBytes(ToText(located))));
  return buf;
}

}  // namespace reconlab::experiment

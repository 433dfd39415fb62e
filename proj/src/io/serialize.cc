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
#include "reconlab/io/serialize.h"

#include <bit>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace reconlab::io {
namespace {

constexpr char kParamsMagic[] = "reconlab-params";
constexpr char kShadowMagic[] = "reconlab-shadowset";

std::uint64_t ToLe(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xff);
    return r;
  }
}

std::ofstream OpenOut(const std::string& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  Require(out.good(), "cannot open '" + path + "' for writing");
  return out;
}

std::ifstream OpenIn(const std::string& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  Require(in.good(), "cannot open '" + path + "'");
  return in;
}

std::string JoinSizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::size_t ParseSize(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  Require(pos == s.size() && !s.empty() && s[0] != '-',
          "bad " + what + ": '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> ParseSizes(const std::string& s,
                                    const std::string& what) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ParseSize(item, what));
  return out;
}

// key=value tokens after the magic word.
std::map<std::string, std::string> ParseHeaderLine(const std::string& line,
                                                   const std::string& magic,
                                                   const std::string& path) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  Require(word == magic, "'" + path + "' is not a " + magic + " file");
  std::map<std::string, std::string> fields;
  while (in >> word) {
    const auto eq = word.find('=');
    Require(eq != std::string::npos, "malformed header token '" + word + "'");
    fields[word.substr(0, eq)] = word.substr(eq + 1);
  }
  return fields;
}

const std::string& Field(const std::map<std::string, std::string>& fields,
                         const std::string& key) {
  const auto it = fields.find(key);
  Require(it != fields.end(), "header is missing '" + key + "'");
  return it->second;
}

void WriteNumbers(std::ostream& out, const std::string& label,
                  std::span<const double> values) {
  out << label;
  for (double v : values) out << ' ' << v;
  out << '\n';
}

Vector ReadNumbers(std::istream& in, const std::string& label,
                   std::size_t count) {
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)),
          "shadow header truncated before '" + label + "'");
  std::istringstream ls(line);
  std::string word;
  ls >> word;
  Require(word == label, "expected '" + label + "' line, got '" + word + "'");
  Vector values(count);
  for (double& v : values) {
    Require(static_cast<bool>(ls >> v), "too few values on '" + label + "' line");
  }
  Require(!(ls >> word), "too many values on '" + label + "' line");
  return values;
}

}  // namespace

void WriteDoublesLe(std::ostream& out, std::span<const double> values) {
  std::vector<std::uint64_t> raw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    raw[i] = ToLe(std::bit_cast<std::uint64_t>(values[i]));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  Require(out.good(), "write failed");
}

void ReadDoublesLe(std::istream& in, std::span<double> values) {
  std::vector<std::uint64_t> raw(values.size());
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  Require(in.gcount() ==
              static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)),
          "binary payload truncated");
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::bit_cast<double>(ToLe(raw[i]));
  }
}

void SaveParams(const std::string& path, const ModelParams& params,
                const TrainConfig& config) {
  std::ofstream out = OpenOut(path, std::ios::binary | std::ios::trunc);
  const MlpArchitecture& arch = params.arch();
  out << kParamsMagic << " version=1 layers=" << JoinSizes(arch.layer_widths)
      << " activation=" << ActivationName(arch.activation)
      << " output=" << ActivationName(arch.output_activation)
      << " optimizer=" << OptimizerName(config.optimizer)
      << " init_seed=" << config.init_seed
      << " shuffle_seed=" << config.shuffle_seed
      << " noise_seed=" << config.noise_seed
      << " count=" << params.parameter_count() << '\n';
  WriteDoublesLe(out, params.flat());
}

ModelParams LoadParams(const std::string& path) {
  std::ifstream in = OpenIn(path, std::ios::binary);
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), "'" + path + "' is empty");
  const auto fields = ParseHeaderLine(line, kParamsMagic, path);
  MlpArchitecture arch;
  arch.layer_widths = ParseSizes(Field(fields, "layers"), "layer widths");
  arch.activation = ParseActivation(Field(fields, "activation"));
  arch.output_activation = ParseActivation(Field(fields, "output"));
  arch.Validate();
  const std::size_t count = ParseSize(Field(fields, "count"), "count");
  Require(count == arch.ParameterCount(),
          "parameter count does not match the architecture in '" + path + "'");
  Vector flat(count);
  ReadDoublesLe(in, flat);
  Require(in.peek() == std::char_traits<char>::eof(),
          "trailing bytes in '" + path + "'");
  ModelParams params(arch, std::move(flat));
  if (!params.AllFinite()) throw NumericalError("non-finite parameters");
  return params;
}

shadow::Featurizer ParseFeaturizer(const std::string& description) {
  if (description == "white-box") return shadow::Featurizer::WhiteBox();
  if (description.rfind("layers=", 0) == 0) {
    return shadow::Featurizer::LayerSubset(
        ParseSizes(description.substr(7), "layer index"));
  }
  if (description == "black-box" || description.rfind("black-box:", 0) == 0) {
    shadow::Featurizer f;
    f.mode = shadow::Featurizer::Mode::kBlackBox;
    return f;
  }
  throw ValidationError("unknown featurizer '" + description +
                        "' (white-box, layers=I[,J..], black-box)");
}

void SaveShadowSet(const std::string& prefix, const shadow::ShadowSet& set) {
  Require(set.size() > 0, "refusing to save an empty shadow set");
  {
    std::ofstream out = OpenOut(prefix + ".hdr", std::ios::trunc);
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << kShadowMagic << " version=1 featurizer=" << set.featurizer.Describe()
        << " pairs=" << set.size() << " feature_len=" << set.features.cols
        << " target_dim=" << set.targets.cols
        << " probe_rows=" << set.featurizer.probes.rows
        << " probe_cols=" << set.featurizer.probes.cols << '\n';
    WriteNumbers(out, "mean", set.stats.mean);
    WriteNumbers(out, "std", set.stats.std);
    for (std::size_t r = 0; r < set.featurizer.probes.rows; ++r) {
      WriteNumbers(out, "probe", set.featurizer.probes.row(r));
    }
    Require(out.good(), "write failed for '" + prefix + ".hdr'");
  }
  std::ofstream bin = OpenOut(prefix + ".bin", std::ios::binary | std::ios::trunc);
  for (std::size_t r = 0; r < set.size(); ++r) {
    WriteDoublesLe(bin, set.features.row(r));
    WriteDoublesLe(bin, set.targets.row(r));
  }
}

shadow::ShadowSet LoadShadowSet(const std::string& prefix) {
  std::ifstream hdr = OpenIn(prefix + ".hdr", std::ios::in);
  std::string line;
  Require(static_cast<bool>(std::getline(hdr, line)),
          "'" + prefix + ".hdr' is empty");
  const auto fields = ParseHeaderLine(line, kShadowMagic, prefix + ".hdr");
  shadow::ShadowSet set;
  set.featurizer = ParseFeaturizer(Field(fields, "featurizer"));
  const std::size_t pairs = ParseSize(Field(fields, "pairs"), "pairs");
  const std::size_t flen = ParseSize(Field(fields, "feature_len"), "feature_len");
  const std::size_t tdim = ParseSize(Field(fields, "target_dim"), "target_dim");
  const std::size_t prow = ParseSize(Field(fields, "probe_rows"), "probe_rows");
  const std::size_t pcol = ParseSize(Field(fields, "probe_cols"), "probe_cols");
  set.stats.mean = ReadNumbers(hdr, "mean", flen);
  set.stats.std = ReadNumbers(hdr, "std", flen);
  set.featurizer.probes = Matrix(prow, pcol);
  for (std::size_t r = 0; r < prow; ++r) {
    const Vector row = ReadNumbers(hdr, "probe", pcol);
    std::copy(row.begin(), row.end(), set.featurizer.probes.row(r).begin());
  }
  std::ifstream bin = OpenIn(prefix + ".bin", std::ios::binary);
  set.features = Matrix(pairs, flen);
  set.targets = Matrix(pairs, tdim);
  for (std::size_t r = 0; r < pairs; ++r) {
    ReadDoublesLe(bin, set.features.row(r));
    ReadDoublesLe(bin, set.targets.row(r));
  }
  Require(bin.peek() == std::char_traits<char>::eof(),
          "trailing bytes in '" + prefix + ".bin'");
  return set;
}

}  // namespace reconlab::io

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
#ifndef RECONLAB_IO_SERIALIZE_H_
#define RECONLAB_IO_SERIALIZE_H_

#include <iosfwd>
#include <span>
#include <string>

#include "reconlab/common.h"
#include "reconlab/nn/mlp.h"
#include "reconlab/nn/train.h"
#include "reconlab/shadow/shadow.h"

namespace reconlab::io {

// Little-endian IEEE-754 doubles regardless of host byte order.
void WriteDoublesLe(std::ostream& out, std::span<const double> values);
void ReadDoublesLe(std::istream& in, std::span<double> values);

// One text header line (architecture, seeds, count) followed by the flat
// parameters as little-endian doubles.
void SaveParams(const std::string& path, const ModelParams& params,
                const TrainConfig& config);
ModelParams LoadParams(const std::string& path);

// `<prefix>.hdr`: featurizer, dimensions, normalization statistics and
// black-box probes as text. `<prefix>.bin`: one row per pair, feature
// columns then target columns, little-endian doubles.
void SaveShadowSet(const std::string& prefix, const shadow::ShadowSet& set);
shadow::ShadowSet LoadShadowSet(const std::string& prefix);

// Parses the text produced by Featurizer::Describe (probes attached later).
shadow::Featurizer ParseFeaturizer(const std::string& description);

}  // namespace reconlab::io

#endif  // RECONLAB_IO_SERIALIZE_H_

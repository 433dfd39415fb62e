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
#ifndef RECONLAB_DATA_DATASET_H_
#define RECONLAB_DATA_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reconlab/common.h"

namespace reconlab {

struct DataPoint {
  Vector x;
  std::size_t y = 0;

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

// Ordered collection of points with a common feature dimension and class
// count. Insertion order is the canonical order used by every determinism
// contract in the library.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::size_t dim, std::size_t num_classes);

  void Add(DataPoint point);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dim() const { return dim_; }
  std::size_t num_classes() const { return num_classes_; }

  const DataPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<DataPoint>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  LabeledDataset Subset(std::span<const std::size_t> indices) const;
  // Copy of this dataset with `extra` appended last.
  LabeledDataset With(const DataPoint& extra) const;
  // Features stacked as rows.
  Matrix FeatureMatrix() const;

  friend bool operator==(const LabeledDataset&,
                         const LabeledDataset&) = default;

 private:
  std::size_t dim_ = 0;
  std::size_t num_classes_ = 0;
  std::vector<DataPoint> points_;
};

struct SplitSpec {
  std::size_t fixed_size = 0;
  std::size_t shadow_size = 0;
  std::size_t test_target_size = 0;
  std::uint64_t split_seed = 0;
};

struct DatasetSplit {
  LabeledDataset fixed;
  LabeledDataset shadow;
  LabeledDataset targets;
};

// Disjoint subsets chosen by a seeded permutation of `dataset`. Throws
// ValidationError when the sizes do not fit.
DatasetSplit Split(const LabeledDataset& dataset, const SplitSpec& spec);

struct SynthSpec {
  std::size_t dim = 64;
  std::size_t num_classes = 10;
  std::size_t n = 0;
  double cluster_std = 0.05;
  std::uint64_t seed = 0;
};

// K Gaussian blobs with centers uniform in [0.2, 0.8]^d, labels assigned
// round-robin, features clipped to [0, 1].
LabeledDataset SynthClassification(const SynthSpec& spec);

// MNIST-style IDX pair: images (magic 0x00000803, uint8 pixels scaled by
// 1/255) and labels (magic 0x00000801). The class count is max label + 1.
LabeledDataset LoadIdx(const std::string& images_path,
                       const std::string& labels_path);

// Block-mean pooling of H x W row-major images by `factor`.
LabeledDataset DownsampleImages(const LabeledDataset& dataset, std::size_t height,
                                std::size_t width, std::size_t factor);

// Replaces every label by a seeded uniform draw over {0..num_classes-1}.
// Used for out-of-distribution shadow pools.
LabeledDataset RelabelUniform(const LabeledDataset& dataset,
                              std::size_t num_classes, std::uint64_t seed);

struct NumericTable {
  std::vector<std::string> header;
  Matrix values;
};

// Rectangular numeric CSV with exactly one header row.
NumericTable ReadNumericCsv(const std::string& path);

// Dataset from CSV; `label_column` is coerced to a non-negative integer class,
// every other column is a feature.
LabeledDataset LoadCsv(const std::string& path, std::size_t label_column);

// Writes features as x0..x{d-1} followed by a trailing `label` column, with
// round-trip precision.
void WriteCsv(const LabeledDataset& dataset, const std::string& path);

}  // namespace reconlab

#endif  // RECONLAB_DATA_DATASET_H_

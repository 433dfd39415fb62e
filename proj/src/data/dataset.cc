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
#include "reconlab/data/dataset.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "reconlab/rng.h"

namespace reconlab {

LabeledDataset::LabeledDataset(std::size_t dim, std::size_t num_classes)
    : dim_(dim), num_classes_(num_classes) {}

void LabeledDataset::Add(DataPoint point) {
  Require(point.x.size() == dim_, "data point has dimension " +
                                      std::to_string(point.x.size()) +
                                      ", dataset expects " +
                                      std::to_string(dim_));
  Require(point.y < num_classes_, "label " + std::to_string(point.y) +
                                      " out of range for " +
                                      std::to_string(num_classes_) + " classes");
  for (double v : point.x) {
    Require(std::isfinite(v), "non-finite feature value");
  }
  points_.push_back(std::move(point));
}

LabeledDataset LabeledDataset::Subset(
    std::span<const std::size_t> indices) const {
  LabeledDataset out(dim_, num_classes_);
  out.points_.reserve(indices.size());
  for (std::size_t i : indices) {
    Require(i < points_.size(), "subset index out of range");
    out.points_.push_back(points_[i]);
  }
  return out;
}

LabeledDataset LabeledDataset::With(const DataPoint& extra) const {
  LabeledDataset out = *this;
  out.Add(extra);
  return out;
}

Matrix LabeledDataset::FeatureMatrix() const {
  Matrix m(points_.size(), dim_);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    std::copy(points_[i].x.begin(), points_[i].x.end(), m.row(i).begin());
  }
  return m;
}

DatasetSplit Split(const LabeledDataset& dataset, const SplitSpec& spec) {
  const std::size_t total =
      spec.fixed_size + spec.shadow_size + spec.test_target_size;
  if (total > dataset.size()) {
    throw ValidationError("split sizes sum to " + std::to_string(total) +
                          " but dataset has " +
                          std::to_string(dataset.size()) + " points");
  }
  Rng rng = Rng(spec.split_seed).Split("split");
  const std::vector<std::size_t> perm = RandomPermutation(dataset.size(), rng);
  auto take = [&](std::size_t begin, std::size_t count) {
    return dataset.Subset(std::span(perm).subspan(begin, count));
  };
  return {take(0, spec.fixed_size), take(spec.fixed_size, spec.shadow_size),
          take(spec.fixed_size + spec.shadow_size, spec.test_target_size)};
}

LabeledDataset SynthClassification(const SynthSpec& spec) {
  Require(spec.dim > 0 && spec.num_classes > 0,
          "synthetic data needs positive dim and class count");
  Require(spec.cluster_std >= 0, "cluster_std must be non-negative");
  Rng root(spec.seed);
  Rng center_rng = root.Split("centers");
  Matrix centers(spec.num_classes, spec.dim);
  for (double& c : centers.data) c = 0.2 + 0.6 * center_rng.Uniform();

  Rng point_rng = root.Split("points");
  LabeledDataset out(spec.dim, spec.num_classes);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const std::size_t label = i % spec.num_classes;
    Vector x(spec.dim);
    for (std::size_t j = 0; j < spec.dim; ++j) {
      const double v = centers(label, j) + spec.cluster_std * point_rng.Normal();
      x[j] = std::clamp(v, 0.0, 1.0);
    }
    out.Add({std::move(x), label});
  }
  return out;
}

namespace {

std::uint32_t ReadBigEndian32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw ValidationError("truncated IDX header in " + path);
  }
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

std::ifstream OpenBinary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  return in;
}

}  // namespace

LabeledDataset LoadIdx(const std::string& images_path,
                       const std::string& labels_path) {
  std::ifstream images = OpenBinary(images_path);
  if (ReadBigEndian32(images, images_path) != 0x00000803) {
    throw ValidationError("bad IDX image magic in " + images_path);
  }
  const std::uint32_t n = ReadBigEndian32(images, images_path);
  const std::uint32_t rows = ReadBigEndian32(images, images_path);
  const std::uint32_t cols = ReadBigEndian32(images, images_path);

  std::ifstream labels = OpenBinary(labels_path);
  if (ReadBigEndian32(labels, labels_path) != 0x00000801) {
    throw ValidationError("bad IDX label magic in " + labels_path);
  }
  if (ReadBigEndian32(labels, labels_path) != n) {
    throw ValidationError("IDX image and label counts differ");
  }

  const std::size_t dim = std::size_t{rows} * cols;
  std::vector<unsigned char> pixels(dim * n);
  std::vector<unsigned char> ys(n);
  if (!images.read(reinterpret_cast<char*>(pixels.data()),
                   static_cast<std::streamsize>(pixels.size()))) {
    throw ValidationError("truncated IDX image data in " + images_path);
  }
  if (!labels.read(reinterpret_cast<char*>(ys.data()),
                   static_cast<std::streamsize>(ys.size()))) {
    throw ValidationError("truncated IDX label data in " + labels_path);
  }
  const std::size_t num_classes =
      n == 0 ? 0 : std::size_t{*std::max_element(ys.begin(), ys.end())} + 1;
  LabeledDataset out(dim, num_classes);
  for (std::size_t i = 0; i < n; ++i) {
    Vector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = pixels[i * dim + j] / 255.0;
    out.Add({std::move(x), ys[i]});
  }
  return out;
}

LabeledDataset DownsampleImages(const LabeledDataset& dataset,
                                std::size_t height, std::size_t width,
                                std::size_t factor) {
  Require(factor > 0 && height % factor == 0 && width % factor == 0,
          "downsample factor must divide both image sides");
  Require(dataset.dim() == height * width,
          "image dimension does not match height x width");
  const std::size_t out_h = height / factor;
  const std::size_t out_w = width / factor;
  const double inv_area = 1.0 / static_cast<double>(factor * factor);
  LabeledDataset out(out_h * out_w, dataset.num_classes());
  for (const DataPoint& p : dataset) {
    Vector x(out_h * out_w, 0.0);
    for (std::size_t r = 0; r < height; ++r) {
      for (std::size_t c = 0; c < width; ++c) {
        x[(r / factor) * out_w + c / factor] += p.x[r * width + c];
      }
    }
    for (double& v : x) v *= inv_area;
    out.Add({std::move(x), p.y});
  }
  return out;
}

LabeledDataset RelabelUniform(const LabeledDataset& dataset,
                              std::size_t num_classes, std::uint64_t seed) {
  Require(num_classes > 0, "relabeling needs at least one class");
  Rng rng = Rng(seed).Split("relabel");
  LabeledDataset out(dataset.dim(), num_classes);
  for (const DataPoint& p : dataset) {
    out.Add({p.x, static_cast<std::size_t>(rng.UniformInt(num_classes))});
  }
  return out;
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double ParseCell(const std::string& cell, std::size_t line_no) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ValidationError("non-numeric CSV cell '" + cell + "' on line " +
                          std::to_string(line_no));
  }
  return v;
}

}  // namespace

NumericTable ReadNumericCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty CSV file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  NumericTable table;
  table.header = SplitCsvLine(line);
  const std::size_t cols = table.header.size();
  table.values.cols = cols;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != cols) {
      throw ValidationError("ragged CSV row on line " + std::to_string(line_no) +
                            ": expected " + std::to_string(cols) +
                            " cells, got " + std::to_string(cells.size()));
    }
    for (const auto& c : cells) table.values.data.push_back(ParseCell(c, line_no));
    ++table.values.rows;
  }
  return table;
}

LabeledDataset LoadCsv(const std::string& path, std::size_t label_column) {
  const NumericTable table = ReadNumericCsv(path);
  if (table.values.rows == 0) {
    throw ValidationError("CSV file " + path + " has no data rows");
  }
  Require(label_column < table.values.cols, "label column out of range");
  std::size_t num_classes = 0;
  std::vector<std::size_t> labels(table.values.rows);
  for (std::size_t r = 0; r < table.values.rows; ++r) {
    const double v = table.values(r, label_column);
    if (v < 0 || v != std::floor(v)) {
      throw ValidationError("label on data row " + std::to_string(r + 1) +
                            " is not a non-negative integer");
    }
    labels[r] = static_cast<std::size_t>(v);
    num_classes = std::max(num_classes, labels[r] + 1);
  }
  LabeledDataset out(table.values.cols - 1, num_classes);
  for (std::size_t r = 0; r < table.values.rows; ++r) {
    Vector x;
    x.reserve(table.values.cols - 1);
    for (std::size_t c = 0; c < table.values.cols; ++c) {
      if (c != label_column) x.push_back(table.values(r, c));
    }
    out.Add({std::move(x), labels[r]});
  }
  return out;
}

void WriteCsv(const LabeledDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  for (std::size_t j = 0; j < dataset.dim(); ++j) out << 'x' << j << ',';
  out << "label\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const DataPoint& p : dataset) {
    for (double v : p.x) out << v << ',';
    out << p.y << '\n';
  }
}

}  // namespace reconlab

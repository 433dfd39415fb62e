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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "gtest/gtest.h"

namespace reconlab {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("reconlab_dataset_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string File(const std::string& name) const { return path_ / name; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

void PutBigEndian32(std::ofstream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void WriteIdx(const std::string& images, const std::string& labels,
              std::uint32_t n, std::uint32_t rows, std::uint32_t cols,
              std::uint32_t classes) {
  std::ofstream img(images, std::ios::binary);
  PutBigEndian32(img, 0x00000803);
  PutBigEndian32(img, n);
  PutBigEndian32(img, rows);
  PutBigEndian32(img, cols);
  std::vector<unsigned char> pixels(std::size_t{n} * rows * cols);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = static_cast<unsigned char>((i * 37) % 256);
  }
  pixels[0] = 255;
  img.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  std::ofstream lab(labels, std::ios::binary);
  PutBigEndian32(lab, 0x00000801);
  PutBigEndian32(lab, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const unsigned char y = static_cast<unsigned char>(i % classes);
    lab.write(reinterpret_cast<const char*>(&y), 1);
  }
}

TEST(LoadIdxTest, MnistShapedFiles) {
  TempDir dir;
  WriteIdx(dir.File("img"), dir.File("lab"), 60000, 28, 28, 10);
  const LabeledDataset d = LoadIdx(dir.File("img"), dir.File("lab"));
  EXPECT_EQ(d.size(), 60000u);
  EXPECT_EQ(d.dim(), 784u);
  EXPECT_EQ(d.num_classes(), 10u);
  // Pixel 255 maps to exactly 1.0.
  EXPECT_EQ(d[0].x[0], 1.0);
  EXPECT_DOUBLE_EQ(d[0].x[1], 37.0 / 255.0);
  for (double v : d[123].x) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(LoadIdxTest, EmptyFileIsFormatError) {
  TempDir dir;
  std::ofstream(dir.File("img")).close();
  std::ofstream(dir.File("lab")).close();
  EXPECT_THROW(LoadIdx(dir.File("img"), dir.File("lab")), ValidationError);
}

TEST(LoadIdxTest, BadMagicAndTruncation) {
  TempDir dir;
  WriteIdx(dir.File("img"), dir.File("lab"), 4, 2, 2, 2);
  // Swapped files: wrong magic.
  EXPECT_THROW(LoadIdx(dir.File("lab"), dir.File("img")), ValidationError);
  // Chop the image payload.
  fs::resize_file(dir.File("img"), 16 + 10);
  EXPECT_THROW(LoadIdx(dir.File("img"), dir.File("lab")), ValidationError);
}

TEST(CsvTest, ThreeRowsTwoFeatures) {
  TempDir dir;
  std::ofstream(dir.File("d.csv")) << "a,b,label\n0.1,0.2,0\n0.3,0.4,1\n"
                                      "0.5,0.6,2\n";
  const LabeledDataset d = LoadCsv(dir.File("d.csv"), 2);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.dim(), 2u);
  EXPECT_EQ(d.num_classes(), 3u);
  EXPECT_EQ(d[1].x, (Vector{0.3, 0.4}));
  EXPECT_EQ(d[2].y, 2u);
}

TEST(CsvTest, LabelColumnMayBeFirst) {
  TempDir dir;
  std::ofstream(dir.File("d.csv")) << "label,a\n1,0.5\n0,0.25\n";
  const LabeledDataset d = LoadCsv(dir.File("d.csv"), 0);
  EXPECT_EQ(d[0].y, 1u);
  EXPECT_EQ(d[1].x, (Vector{0.25}));
}

TEST(CsvTest, HeaderOnlyIsError) {
  TempDir dir;
  std::ofstream(dir.File("d.csv")) << "a,b,label\n";
  EXPECT_THROW(LoadCsv(dir.File("d.csv"), 2), ValidationError);
}

TEST(CsvTest, RaggedAndNonNumericRowsRejected) {
  TempDir dir;
  std::ofstream(dir.File("r.csv")) << "a,b,label\n0.1,0.2,0\n0.3,1\n";
  EXPECT_THROW(LoadCsv(dir.File("r.csv"), 2), ValidationError);
  std::ofstream(dir.File("n.csv")) << "a,b,label\n0.1,abc,0\n";
  EXPECT_THROW(LoadCsv(dir.File("n.csv"), 2), ValidationError);
  std::ofstream(dir.File("l.csv")) << "a,label\n0.1,0.5\n";
  EXPECT_THROW(LoadCsv(dir.File("l.csv"), 1), ValidationError);
}

TEST(CsvTest, WriteReadRoundTrip) {
  TempDir dir;
  const LabeledDataset d =
      SynthClassification({.dim = 5, .num_classes = 3, .n = 30,
                           .cluster_std = 0.1, .seed = 4});
  WriteCsv(d, dir.File("rt.csv"));
  EXPECT_EQ(LoadCsv(dir.File("rt.csv"), 5), d);
}

TEST(SplitTest, DisjointDeterministicAndSized) {
  const LabeledDataset d =
      SynthClassification({.dim = 3, .num_classes = 4, .n = 200,
                           .cluster_std = 0.1, .seed = 1});
  const SplitSpec spec{.fixed_size = 50, .shadow_size = 100,
                       .test_target_size = 30, .split_seed = 9};
  const DatasetSplit a = Split(d, spec);
  const DatasetSplit b = Split(d, spec);
  EXPECT_EQ(a.fixed, b.fixed);
  EXPECT_EQ(a.shadow, b.shadow);
  EXPECT_EQ(a.targets, b.targets);
  EXPECT_EQ(a.fixed.size(), 50u);
  EXPECT_EQ(a.shadow.size(), 100u);
  EXPECT_EQ(a.targets.size(), 30u);

  // Synthetic features are continuous, so feature vectors identify points.
  std::set<Vector> seen;
  for (const auto* part : {&a.fixed, &a.shadow, &a.targets}) {
    for (const DataPoint& p : *part) EXPECT_TRUE(seen.insert(p.x).second);
  }
  EXPECT_EQ(seen.size(), 180u);
}

TEST(SplitTest, MnistSizedPool) {
  LabeledDataset pool(1, 10);
  for (std::size_t i = 0; i < 70000; ++i) {
    pool.Add({{static_cast<double>(i)}, i % 10});
  }
  const DatasetSplit s =
      Split(pool, {.fixed_size = 10000, .shadow_size = 59000,
                   .test_target_size = 1000, .split_seed = 0});
  EXPECT_EQ(s.fixed.size(), 10000u);
  EXPECT_EQ(s.shadow.size(), 59000u);
  EXPECT_EQ(s.targets.size(), 1000u);
  std::set<double> ids;
  for (const auto* part : {&s.fixed, &s.shadow, &s.targets}) {
    for (const DataPoint& p : *part) ids.insert(p.x[0]);
  }
  EXPECT_EQ(ids.size(), 70000u);
}

TEST(SplitTest, EmptyFixedSetAndInfeasibleSizes) {
  const LabeledDataset d =
      SynthClassification({.dim = 2, .num_classes = 2, .n = 10, .seed = 3});
  const DatasetSplit s = Split(d, {.fixed_size = 0, .shadow_size = 4,
                                   .test_target_size = 2, .split_seed = 1});
  EXPECT_TRUE(s.fixed.empty());
  EXPECT_EQ(s.fixed.dim(), 2u);
  EXPECT_THROW(Split(d, {.fixed_size = 5, .shadow_size = 5,
                         .test_target_size = 1, .split_seed = 1}),
               ValidationError);
}

TEST(SynthTest, EmptyAndDeterministic) {
  EXPECT_TRUE(SynthClassification({.n = 0}).empty());
  const SynthSpec spec{.dim = 8, .num_classes = 3, .n = 40,
                       .cluster_std = 0.2, .seed = 77};
  EXPECT_EQ(SynthClassification(spec), SynthClassification(spec));
  SynthSpec other = spec;
  other.seed = 78;
  EXPECT_NE(SynthClassification(spec), SynthClassification(other));
}

TEST(SynthTest, FeaturesInUnitBox) {
  const LabeledDataset d = SynthClassification(
      {.dim = 16, .num_classes = 4, .n = 400, .cluster_std = 0.5, .seed = 2});
  for (const DataPoint& p : d) {
    for (double v : p.x) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    ASSERT_LT(p.y, 4u);
  }
}

TEST(DownsampleTest, FactorOneIsIdentity) {
  const LabeledDataset d = SynthClassification(
      {.dim = 16, .num_classes = 2, .n = 5, .cluster_std = 0.1, .seed = 2});
  EXPECT_EQ(DownsampleImages(d, 4, 4, 1), d);
}

TEST(DownsampleTest, ConstantAndCheckerboard) {
  LabeledDataset d(16, 2);
  d.Add({Vector(16, 0.3), 0});
  Vector checker(16);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) checker[r * 4 + c] = (r + c) % 2;
  }
  d.Add({checker, 1});
  const LabeledDataset out = DownsampleImages(d, 4, 4, 2);
  ASSERT_EQ(out.dim(), 4u);
  for (double v : out[0].x) EXPECT_DOUBLE_EQ(v, 0.3);
  for (double v : out[1].x) EXPECT_DOUBLE_EQ(v, 0.5);
  EXPECT_THROW(DownsampleImages(d, 4, 4, 3), ValidationError);
}

TEST(RelabelTest, DeterministicUniformLabels) {
  const LabeledDataset d = SynthClassification(
      {.dim = 2, .num_classes = 2, .n = 2000, .cluster_std = 0.1, .seed = 2});
  const LabeledDataset a = RelabelUniform(d, 10, 5);
  EXPECT_EQ(a, RelabelUniform(d, 10, 5));
  EXPECT_EQ(a.num_classes(), 10u);
  std::vector<int> counts(10, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, d[i].x);
    ++counts[a[i].y];
  }
  for (int c : counts) EXPECT_GT(c, 120);
}

}  // namespace
}  // namespace reconlab

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
#ifndef RECONLAB_RNG_H_
#define RECONLAB_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace reconlab {

// Counter-based pseudorandom stream. Output i is a SplitMix64 finalization of
// (key, i), so a stream is fully described by its key and position. Child
// streams are derived from the parent key and a label, never from the parent
// position, so splitting is reproducible regardless of how many values the
// parent has produced.
//
// Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  Rng Split(std::uint64_t label) const;
  Rng Split(std::string_view label) const;

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Normal();
  // Uniform integer in [0, n).
  std::uint64_t UniformInt(std::uint64_t n);

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_;
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Seed for the index-th member of a family rooted at base, e.g. the init seed
// of shadow model i under the random-init ablation.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index);

// FNV-1a over bytes; used for labels and config provenance hashes.
std::uint64_t HashBytes(std::string_view bytes);

// 0..n-1 in Fisher-Yates order drawn from rng.
std::vector<std::size_t> RandomPermutation(std::size_t n, Rng& rng);

}  // namespace reconlab

#endif  // RECONLAB_RNG_H_

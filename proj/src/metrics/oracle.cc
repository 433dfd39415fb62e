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
#include "reconlab/metrics/oracle.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reconlab/parallel.h"

namespace reconlab::metrics {
namespace {

Vector LogSoftmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double v : logits) sum += std::exp(v - top);
  const double log_z = top + std::log(sum);
  Vector out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - log_z;
  return out;
}

Vector Ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  Vector ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double Mse(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), "mse operands differ in length");
  Require(!a.empty(), "mse of empty vectors");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

NearestNeighbor NnOracle(std::span<const double> target, const Matrix& pool) {
  Require(pool.rows > 0, "nearest-neighbour pool is empty");
  Require(pool.cols == target.size(), "pool and target differ in dimension");
  NearestNeighbor best{0, Mse(target, pool.row(0))};
  for (std::size_t r = 1; r < pool.rows; ++r) {
    const double d = Mse(target, pool.row(r));
    if (d < best.distance) best = {r, d};
  }
  return best;
}

std::vector<NearestNeighbor> NnOracleAll(const Matrix& targets,
                                         const Matrix& pool,
                                         Execution execution) {
  Require(pool.rows > 0, "nearest-neighbour pool is empty");
  std::vector<NearestNeighbor> out(targets.rows);
  ParallelFor(targets.rows, execution,
              [&](std::size_t t) { out[t] = NnOracle(targets.row(t), pool); });
  return out;
}

double Percentile(Vector values, double q) {
  Require(!values.empty(), "percentile of empty sample");
  Require(q >= 0.0 && q <= 100.0, "percentile must lie in [0, 100]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q / 100.0;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

OracleReport MakeOracleReport(const Matrix& targets, const Matrix& pool,
                              Execution execution) {
  Require(targets.rows > 0, "oracle report needs targets");
  Require(pool.rows > 0, "nearest-neighbour pool is empty");
  Require(pool.cols == targets.cols, "pool and targets differ in dimension");
  std::vector<Vector> distances(targets.rows, Vector(pool.rows));
  std::vector<NearestNeighbor> nearest(targets.rows);
  ParallelFor(targets.rows, execution, [&](std::size_t t) {
    Vector& row = distances[t];
    for (std::size_t p = 0; p < pool.rows; ++p) {
      row[p] = Mse(targets.row(t), pool.row(p));
    }
    // Same scan order and comparison as NnOracle.
    NearestNeighbor best{0, row[0]};
    for (std::size_t p = 1; p < pool.rows; ++p) {
      if (row[p] < best.distance) best = {p, row[p]};
    }
    nearest[t] = best;
  });

  OracleReport report;
  report.nearest = std::move(nearest);
  double max_distance = 0.0;
  for (const Vector& row : distances) {
    max_distance = std::max(max_distance,
                            *std::max_element(row.begin(), row.end()));
  }
  report.histogram = {0.0, max_distance, Vector(kHistogramBins, 0.0)};
  const double inv_targets = 1.0 / static_cast<double>(targets.rows);
  for (const Vector& row : distances) {
    for (double d : row) {
      std::size_t bin = 0;
      if (max_distance > 0.0) {
        bin = std::min<std::size_t>(
            kHistogramBins - 1,
            static_cast<std::size_t>(d / max_distance * kHistogramBins));
      }
      report.histogram.counts[bin] += inv_targets;
    }
    report.p1 += Percentile(row, 1.0) * inv_targets;
    report.p10 += Percentile(row, 10.0) * inv_targets;
    report.p50 += Percentile(row, 50.0) * inv_targets;
  }
  for (const NearestNeighbor& nn : report.nearest) {
    report.mean_nn_distance += nn.distance * inv_targets;
  }
  return report;
}

double KlProbe(const ModelParams& probe, std::span<const double> z,
               std::span<const double> z_hat) {
  const Vector log_p = LogSoftmax(Forward(probe, z));
  const Vector log_q = LogSoftmax(Forward(probe, z_hat));
  double kl = 0.0;
  for (std::size_t i = 0; i < log_p.size(); ++i) {
    kl += std::exp(log_p[i]) * (log_p[i] - log_q[i]);
  }
  return std::max(0.0, kl);
}

double Spearman(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), "spearman operands differ in length");
  Require(a.size() >= 2, "spearman needs at least two points");
  const Vector ra = Ranks(a);
  const Vector rb = Ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n - 1.0) / 2.0;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (va == 0.0 || vb == 0.0) throw NumericalError("spearman of constant data");
  return cov / std::sqrt(va * vb);
}

}  // namespace reconlab::metrics

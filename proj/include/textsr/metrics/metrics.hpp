// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "textsr/core/image.hpp"
#include "textsr/core/record.hpp"

namespace textsr::metrics {

/// 10 log10(1 / MSE) over all channels jointly; +infinity when the images are identical.
double psnr(const Image& a, const Image& b);

/// Mean SSIM over all valid 11x11 Gaussian (sigma 1.5) window positions,
/// K1 = 0.01, K2 = 0.03, dynamic range 1. RGB inputs are converted to
/// grayscale first; single-channel inputs are used as they are.
double ssim(const Image& a, const Image& b);

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimC1 = 0.01 * 0.01;
inline constexpr double kSsimC2 = 0.03 * 0.03;

struct SubsetMetrics {
  double psnr_db = 0.0;  // +infinity if any member pair was identical
  double ssim = 0.0;
  std::size_t n = 0;
  std::optional<double> accuracy;

  bool psnr_infinite() const;
};

struct MetricsReport {
  std::map<Subset, SubsetMetrics> per_subset;
  /// Count-weighted mean over the reported subsets.
  SubsetMetrics average;

  std::string to_text() const;
  std::string to_json() const;
};

/// Streams (sr, hr, subset) triples into per-subset means.
class MetricsAccumulator {
 public:
  void add(const Image& sr, const Image& hr, Subset subset);
  /// For scores computed elsewhere.
  void add_scores(Subset subset, double psnr_db, double ssim_value);
  void set_accuracy(Subset subset, double accuracy);

  bool empty() const { return sums_.empty(); }
  /// Subsets without samples are omitted.
  MetricsReport report() const;

 private:
  struct Sums {
    double psnr = 0.0;
    double ssim = 0.0;
    std::size_t n = 0;
    std::optional<double> accuracy;
  };
  std::map<Subset, Sums> sums_;
};

struct ScoredPair {
  Image sr;
  Image hr;
  Subset subset;
};

/// Throws std::invalid_argument on an empty input.
MetricsReport aggregate_report(const std::vector<ScoredPair>& pairs);

}  // namespace textsr::metrics

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "textsr/core/image.hpp"
#include "textsr/core/record.hpp"
#include "textsr/eval/recognizer.hpp"

namespace textsr::eval {

struct SubsetAccuracy {
  std::size_t correct = 0;
  std::size_t total = 0;

  double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

struct AccuracyResult {
  std::map<Subset, SubsetAccuracy> per_subset;

  /// Pooled over subsets, i.e. the count-weighted average of subset accuracies.
  SubsetAccuracy overall() const;
};

struct EvalSample {
  Image image;
  std::string text;
  Subset subset = Subset::train;
};

/// A sample is correct when the normalised prediction equals the normalised
/// label. Recognizer exceptions count as misses and are logged. Thread-safe
/// recognizers are called from up to `workers` threads.
/// Throws std::invalid_argument on an empty sample list.
AccuracyResult accuracy(Recognizer& recognizer, const std::vector<EvalSample>& samples, int workers = 1);

}  // namespace textsr::eval

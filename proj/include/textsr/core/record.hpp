// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "textsr/core/image.hpp"

namespace textsr {

enum class Subset { easy, medium, hard, train };
enum class Source { realsr, srraw, synthetic };
enum class Direction { horizontal, vertical_plus, vertical_minus, top_down, curve, ignored };

std::string_view to_string(Subset s);
std::string_view to_string(Source s);
std::string_view to_string(Direction d);

// Parsers accept the spellings produced by to_string; they throw DataError otherwise.
// Source also accepts "RealSR", "SR-RAW" and "SRRAW".
Subset parse_subset(std::string_view s);
Source parse_source(std::string_view s);
Direction parse_direction(std::string_view s);

/// One LR/HR pair with its annotation.
struct TextPairRecord {
  Image lr;  // 3 x 16 x 64 once normalised
  Image hr;  // 3 x 32 x 128 once normalised
  std::string text;
  Subset subset = Subset::train;
  Source source = Source::synthetic;
  double focal_lr_mm = 1.0;
  double focal_hr_mm = 1.0;
  Direction direction = Direction::horizontal;

  /// Throws DataError when the HR image is not exactly twice the LR size or
  /// focal lengths are inconsistent.
  void validate() const;
};

}  // namespace textsr

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/core/record.hpp"

#include "textsr/core/error.hpp"

namespace textsr {

std::string_view to_string(Subset s) {
  switch (s) {
    case Subset::easy: return "easy";
    case Subset::medium: return "medium";
    case Subset::hard: return "hard";
    case Subset::train: return "train";
  }
  return "?";
}

std::string_view to_string(Source s) {
  switch (s) {
    case Source::realsr: return "RealSR";
    case Source::srraw: return "SR-RAW";
    case Source::synthetic: return "synthetic";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::horizontal: return "horizontal";
    case Direction::vertical_plus: return "vertical_plus";
    case Direction::vertical_minus: return "vertical_minus";
    case Direction::top_down: return "top_down";
    case Direction::curve: return "curve";
    case Direction::ignored: return "ignored";
  }
  return "?";
}

Subset parse_subset(std::string_view s) {
  for (Subset v : {Subset::easy, Subset::medium, Subset::hard, Subset::train})
    if (s == to_string(v)) return v;
  throw DataError("unknown subset '" + std::string(s) + "'");
}

Source parse_source(std::string_view s) {
  if (s == "RealSR" || s == "realsr") return Source::realsr;
  if (s == "SR-RAW" || s == "SRRAW" || s == "srraw") return Source::srraw;
  if (s == "synthetic") return Source::synthetic;
  throw DataError("unknown source '" + std::string(s) + "'");
}

Direction parse_direction(std::string_view s) {
  for (Direction v : {Direction::horizontal, Direction::vertical_plus, Direction::vertical_minus, Direction::top_down,
                      Direction::curve, Direction::ignored})
    if (s == to_string(v)) return v;
  throw DataError("unknown direction '" + std::string(s) + "'");
}

void TextPairRecord::validate() const {
  if (hr.height() != 2 * lr.height() || hr.width() != 2 * lr.width())
    throw DataError("HR must be exactly twice the LR size in both axes");
  if (!(focal_lr_mm > 0.0) || focal_hr_mm < focal_lr_mm) throw DataError("focal lengths must satisfy 0 < lr <= hr");
}

}  // namespace textsr

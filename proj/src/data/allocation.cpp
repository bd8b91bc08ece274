// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/data/allocation.hpp"

#include <string>

#include "textsr/core/error.hpp"

namespace textsr::data {

Subset allocate_subset(Source source, double focal_lr_mm) {
  if (!(focal_lr_mm > 0.0)) throw DataError("focal length must be positive, got " + std::to_string(focal_lr_mm));
  switch (source) {
    case Source::realsr: return Subset::easy;
    case Source::srraw: return focal_lr_mm > 50.0 ? Subset::medium : Subset::hard;
    case Source::synthetic: break;
  }
  throw DataError("cannot allocate a difficulty subset for source '" + std::string(to_string(source)) + "'");
}

std::string_view to_string(HeightBucket b) {
  switch (b) {
    case HeightBucket::discard: return "discard";
    case HeightBucket::lr_group: return "lr_group";
    case HeightBucket::hr_group: return "hr_group";
    case HeightBucket::oversize: return "oversize";
  }
  return "?";
}

HeightBucket bucket_by_height(int height_px) {
  if (height_px < 8) return HeightBucket::discard;
  if (height_px < 16) return HeightBucket::lr_group;
  if (height_px <= 32) return HeightBucket::hr_group;
  return HeightBucket::oversize;
}

int bucket_target_height(HeightBucket b) {
  switch (b) {
    case HeightBucket::lr_group: return 16;
    case HeightBucket::hr_group: return 32;
    default: return 0;
  }
}

}  // namespace textsr::data

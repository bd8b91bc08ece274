// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "textsr/core/record.hpp"

namespace textsr::data {

/// Difficulty subset of a test pair from its camera source and LR focal length.
/// Throws DataError for synthetic sources or a non-positive focal length.
Subset allocate_subset(Source source, double focal_lr_mm);

enum class HeightBucket { discard, lr_group, hr_group, oversize };

std::string_view to_string(HeightBucket b);

/// [1,8) discard, [8,16) lr_group, [16,32] hr_group, above 32 oversize.
/// Heights below 1 are treated as discard.
HeightBucket bucket_by_height(int height_px);

/// Target height a crop in the given bucket is resized to, 0 when unused.
int bucket_target_height(HeightBucket b);

}  // namespace textsr::data

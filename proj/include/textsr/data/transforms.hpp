// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "textsr/core/image.hpp"
#include "textsr/core/record.hpp"
#include "textsr/core/rng.hpp"

namespace textsr::data {

/// Separable bicubic resampling (a = -0.5) with pixel-centre alignment. When
/// shrinking, the kernel is widened by the scale factor so it also low-passes.
/// Output is clamped to [0,1]. Throws DataError on a zero-sized input.
Image resize_bicubic(const Image& img, int out_height, int out_width);

Image rotate90_cw(const Image& img);
Image rotate90_ccw(const Image& img);
Image rotate180(const Image& img);

/// Rotates a crop so its text reads left to right.
Image orient_horizontal(const Image& img, Direction direction);

/// Resizes to 3x16x64 and 3x32x128.
std::pair<Image, Image> normalize_pair(const Image& lr_raw, const Image& hr_raw);

/// Thresholds gray at its mean and marks the less populated side with 1; on
/// an exact population tie the brighter side wins. Constant input gives zeros.
Image make_binary_mask(const Image& rgb);

/// Bicubic x0.5 downsample. Both dimensions must be even.
Image make_synthetic_lr(const Image& hr);

/// Side lengths of the misalignment window: round(0.9 * extent).
std::pair<int, int> misalign_window(int height, int width);

/// Crops the misalignment window at (top, left) and resizes it back.
Image misalign_crop(const Image& lr, int top, int left);

/// misalign_crop at a uniformly random offset.
Image misalign_augment(const Image& lr, Rng& rng);

}  // namespace textsr::data

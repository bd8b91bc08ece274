// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "textsr/core/image.hpp"

namespace textsr::data {

/// Decodes an 8-bit PNG keeping its channel layout (1 = gray, 2 = gray+alpha,
/// 3 = RGB, 4 = RGBA); values are scaled to [0,1]. Throws DataError.
Image read_png(const std::filesystem::path& path);

/// Reads an RGB image. Gray files are expanded to three channels; files with
/// an alpha channel are rejected since the mask channel is generated internally.
Image read_rgb(const std::filesystem::path& path);

/// Writes a 1- or 3-channel image as 8-bit PNG, rounding to the nearest level.
void write_png(const std::filesystem::path& path, const Image& img);

}  // namespace textsr::data

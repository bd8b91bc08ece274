// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "textsr/core/record.hpp"
#include "textsr/data/manifest.hpp"

namespace textsr::data {

/// Fixed 5x7 bitmap font drawn at 3x into a 32x128 canvas, characters on an
/// 18 px pitch, centred. Used for self-contained datasets and recognition.
struct ToyFont {
  static constexpr int kGlyphWidth = 5;
  static constexpr int kGlyphHeight = 7;
  static constexpr int kScale = 3;
  static constexpr int kPitch = 18;
  static constexpr int kCanvasHeight = 32;
  static constexpr int kCanvasWidth = 128;
  static constexpr int kMaxLength = 6;

  /// Characters the font can draw.
  static std::string_view glyphs();
  /// Characters used by the generator. Look-alike pairs (0/O, 1/I) are left out.
  static std::string_view alphabet();
  /// Row bitmaps, bit 4 is the leftmost column. Throws DataError for unknown characters.
  static const std::array<std::uint8_t, kGlyphHeight>& rows(char c);

  /// Top-left corner of character `slot` in a string of `length` characters.
  static int slot_left(int length, int slot);
  static int text_top();
};

/// 1 where ink falls for `text` in the canonical layout, else 0.
Image render_text_mask(std::string_view text);

/// Draws `text` in `fg` over `bg` (RGB triples in [0,1]).
Image render_text(std::string_view text, const std::array<float, 3>& fg, const std::array<float, 3>& bg);

/// Random toy pairs: HR is the rendering, LR its bicubic half-size
/// downsample. With `mixed_subsets` the records cycle through easy, medium
/// and hard with matching source and focal length; otherwise they are train.
std::vector<TextPairRecord> make_toy_records(std::size_t n, std::uint64_t seed, bool mixed_subsets = false);

/// Writes lr/ and hr/ PNGs under the manifest's directory plus the manifest
/// itself; returns the manifest.
DatasetManifest write_toy_dataset(const std::vector<TextPairRecord>& records, const std::filesystem::path& manifest_path);

}  // namespace textsr::data

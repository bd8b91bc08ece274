// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/data/toy.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "textsr/core/error.hpp"
#include "textsr/core/rng.hpp"
#include "textsr/data/image_io.hpp"
#include "textsr/data/transforms.hpp"

namespace textsr::data {
namespace {

using Rows = std::array<std::uint8_t, ToyFont::kGlyphHeight>;

constexpr std::string_view kGlyphs = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

constexpr std::array<Rows, 36> kFont = {{
    {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},  // 0
    {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},
    {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},
    {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},
    {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},
    {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},
    {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},
    {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},
    {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},  // 9
    {0x0E, 0x11, 0x11, 0x11, 0x1F, 0x11, 0x11},  // A
    {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E},
    {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E},
    {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C},
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F},
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10},
    {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F},
    {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},
    {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E},
    {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C},
    {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11},
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F},
    {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11},
    {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11},
    {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},
    {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10},
    {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D},
    {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11},
    {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E},
    {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04},
    {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A},
    {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11},
    {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04},
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F},  // Z
}};

float luma(const std::array<float, 3>& c) { return 0.299f * c[0] + 0.587f * c[1] + 0.114f * c[2]; }

std::array<float, 3> random_colour(Rng& rng) {
  return {static_cast<float>(uniform_real(rng, 0, 1)), static_cast<float>(uniform_real(rng, 0, 1)),
          static_cast<float>(uniform_real(rng, 0, 1))};
}

}  // namespace

std::string_view ToyFont::glyphs() { return kGlyphs; }

std::string_view ToyFont::alphabet() { return "023456789ABCDEFGHJKLMNPQRSTUVWXYZ"; }

const Rows& ToyFont::rows(char c) {
  const auto pos = kGlyphs.find(c);
  if (pos == std::string_view::npos) throw DataError(std::string("toy font has no glyph for '") + c + "'");
  return kFont[pos];
}

int ToyFont::slot_left(int length, int slot) {
  const int total = length * kPitch - (kPitch - kGlyphWidth * kScale);
  return (kCanvasWidth - total) / 2 + slot * kPitch;
}

int ToyFont::text_top() { return (kCanvasHeight - kGlyphHeight * kScale) / 2; }

Image render_text_mask(std::string_view text) {
  const int len = static_cast<int>(text.size());
  if (len > ToyFont::kMaxLength) throw DataError("toy text longer than " + std::to_string(ToyFont::kMaxLength));
  Image mask(1, ToyFont::kCanvasHeight, ToyFont::kCanvasWidth);
  const int top = ToyFont::text_top();
  for (int i = 0; i < len; ++i) {
    const Rows& rows = ToyFont::rows(text[i]);
    const int left = ToyFont::slot_left(len, i);
    for (int gy = 0; gy < ToyFont::kGlyphHeight; ++gy)
      for (int gx = 0; gx < ToyFont::kGlyphWidth; ++gx) {
        if (!(rows[gy] >> (ToyFont::kGlyphWidth - 1 - gx) & 1)) continue;
        for (int sy = 0; sy < ToyFont::kScale; ++sy)
          for (int sx = 0; sx < ToyFont::kScale; ++sx)
            mask.at(0, top + gy * ToyFont::kScale + sy, left + gx * ToyFont::kScale + sx) = 1.0f;
      }
  }
  return mask;
}

Image render_text(std::string_view text, const std::array<float, 3>& fg, const std::array<float, 3>& bg) {
  const Image mask = render_text_mask(text);
  Image img(3, mask.height(), mask.width());
  for (int c = 0; c < 3; ++c) {
    auto dst = img.plane(c);
    auto m = mask.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = m[i] > 0.5f ? fg[c] : bg[c];
  }
  return img;
}

std::vector<TextPairRecord> make_toy_records(std::size_t n, std::uint64_t seed, bool mixed_subsets) {
  Rng rng = make_rng(seed, 0x746f79);
  const std::string_view alphabet = ToyFont::alphabet();
  std::vector<TextPairRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int len = uniform_int(rng, 3, ToyFont::kMaxLength);
    std::string text;
    for (int k = 0; k < len; ++k) text.push_back(alphabet[uniform_int(rng, 0, static_cast<int>(alphabet.size()) - 1)]);

    std::array<float, 3> fg, bg;
    do {
      fg = random_colour(rng);
      bg = random_colour(rng);
    } while (std::abs(luma(fg) - luma(bg)) < 0.35f);

    TextPairRecord rec;
    rec.hr = render_text(text, fg, bg);
    rec.lr = make_synthetic_lr(rec.hr);
    rec.text = text;
    if (mixed_subsets) {
      switch (i % 3) {
        case 0: rec.subset = Subset::easy, rec.source = Source::realsr, rec.focal_lr_mm = 50; break;
        case 1: rec.subset = Subset::medium, rec.source = Source::srraw, rec.focal_lr_mm = 100; break;
        default: rec.subset = Subset::hard, rec.source = Source::srraw, rec.focal_lr_mm = 35; break;
      }
      rec.focal_hr_mm = 2 * rec.focal_lr_mm;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

DatasetManifest write_toy_dataset(const std::vector<TextPairRecord>& records,
                                  const std::filesystem::path& manifest_path) {
  const auto dir = manifest_path.parent_path();
  DatasetManifest m;
  m.root = dir;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    char name[32];
    std::snprintf(name, sizeof(name), "%06zu.png", i);
    ManifestRow row{"lr/" + std::string(name), "hr/" + std::string(name), r.text, r.source, r.focal_lr_mm,
                    r.focal_hr_mm, r.direction, r.subset};
    write_png(dir / row.lr_path, r.lr);
    write_png(dir / row.hr_path, r.hr);
    m.records.push_back(std::move(row));
  }
  save_manifest(m, manifest_path);
  return m;
}

}  // namespace textsr::data

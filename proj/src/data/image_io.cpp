// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/data/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "textsr/core/error.hpp"

namespace textsr::data {

Image read_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str()))
    throw DataError("cannot read PNG " + path.string() + ": " + png.message);

  const bool color = png.format & PNG_FORMAT_FLAG_COLOR;
  const bool alpha = png.format & PNG_FORMAT_FLAG_ALPHA;
  const int channels = (color ? 3 : 1) + (alpha ? 1 : 0);
  png.format = color ? (alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB) : (alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY);
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw DataError("cannot decode PNG " + path.string() + ": " + msg);
  }

  const int h = static_cast<int>(png.height), w = static_cast<int>(png.width);
  Image img(channels, h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c)
        img.at(c, y, x) = buffer[(static_cast<std::size_t>(y) * w + x) * channels + c] / 255.0f;
  return img;
}

Image read_rgb(const std::filesystem::path& path) {
  Image img = read_png(path);
  if (img.channels() == 3) return img;
  if (img.channels() == 1) {
    Image rgb(3, img.height(), img.width());
    for (int c = 0; c < 3; ++c) std::copy(img.values().begin(), img.values().end(), rgb.plane(c).begin());
    return rgb;
  }
  throw DataError(path.string() + ": expected an RGB or gray image, got " + std::to_string(img.channels()) +
                  " channels");
}

void write_png(const std::filesystem::path& path, const Image& img) {
  if (img.channels() != 1 && img.channels() != 3)
    throw ShapeError("write_png supports 1 or 3 channels, got " + std::to_string(img.channels()));
  const int c = img.channels(), h = img.height(), w = img.width();
  std::vector<unsigned char> buffer(static_cast<std::size_t>(c) * h * w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int ch = 0; ch < c; ++ch) {
        const float v = std::clamp(img.at(ch, y, x), 0.0f, 1.0f);
        buffer[(static_cast<std::size_t>(y) * w + x) * c + ch] = static_cast<unsigned char>(std::lround(v * 255.0f));
      }
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(w);
  png.height = static_cast<png_uint_32>(h);
  png.format = c == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (!png_image_write_to_file(&png, path.c_str(), 0, buffer.data(), 0, nullptr))
    throw DataError("cannot write PNG " + path.string() + ": " + png.message);
}

}  // namespace textsr::data

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "textsr/core/error.hpp"

namespace textsr {

Image::Image(int channels, int height, int width, float fill)
    : channels_(channels), height_(height), width_(width) {
  if (channels < 0 || height < 0 || width < 0) throw ShapeError("negative image dimension");
  data_.assign(static_cast<std::size_t>(channels) * height * width, fill);
}

Image::Image(int channels, int height, int width, std::vector<float> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(channels) * height * width)
    throw ShapeError("image buffer size does not match " + std::to_string(channels) + "x" +
                     std::to_string(height) + "x" + std::to_string(width));
}

void Image::clamp01() {
  for (float& v : data_) v = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
}

Image to_grayscale(const Image& rgb) {
  if (rgb.channels() != 3)
    throw ShapeError("to_grayscale expects 3 channels, got " + std::to_string(rgb.channels()));
  Image gray(1, rgb.height(), rgb.width());
  auto r = rgb.plane(0), g = rgb.plane(1), b = rgb.plane(2);
  auto out = gray.plane(0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double v = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
    out[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
  }
  return gray;
}

Image concat_channels(const Image& base, const Image& extra) {
  if (base.height() != extra.height() || base.width() != extra.width())
    throw ShapeError("concat_channels: spatial sizes differ");
  std::vector<float> data(base.values().begin(), base.values().end());
  data.insert(data.end(), extra.values().begin(), extra.values().end());
  return Image(base.channels() + extra.channels(), base.height(), base.width(), std::move(data));
}

Image take_channels(const Image& img, int count) {
  if (count > img.channels()) throw ShapeError("take_channels: not enough channels");
  auto head = img.values().first(count * img.plane_size());
  return Image(count, img.height(), img.width(), std::vector<float>(head.begin(), head.end()));
}

}  // namespace textsr

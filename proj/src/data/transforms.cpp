// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/data/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "textsr/core/error.hpp"

namespace textsr::data {
namespace {

double cubic(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x < 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return (((x - 5.0) * x + 8.0) * x - 4.0) * a;
  return 0.0;
}

struct Taps {
  int first = 0;
  std::vector<double> weights;
};

std::vector<Taps> compute_taps(int in_size, int out_size) {
  const double scale = static_cast<double>(in_size) / out_size;
  const double filter_scale = std::max(scale, 1.0);
  const double support = 2.0 * filter_scale;
  std::vector<Taps> taps(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double center = (i + 0.5) * scale;
    const int lo = std::max(static_cast<int>(std::floor(center - support + 0.5)), 0);
    const int hi = std::min(static_cast<int>(std::floor(center + support + 0.5)), in_size);
    Taps& t = taps[i];
    t.first = lo;
    double total = 0.0;
    for (int j = lo; j < hi; ++j) {
      const double w = cubic((j + 0.5 - center) / filter_scale);
      t.weights.push_back(w);
      total += w;
    }
    if (total != 0.0)
      for (double& w : t.weights) w /= total;
  }
  return taps;
}

}  // namespace

Image resize_bicubic(const Image& img, int out_height, int out_width) {
  if (img.empty() || img.height() <= 0 || img.width() <= 0)
    throw DataError("cannot resize an empty image");
  if (out_height <= 0 || out_width <= 0)
    throw DataError("invalid resize target " + std::to_string(out_height) + "x" + std::to_string(out_width));

  const int c = img.channels(), h = img.height(), w = img.width();
  const auto tx = compute_taps(w, out_width);
  const auto ty = compute_taps(h, out_height);

  Image out(c, out_height, out_width);
  std::vector<double> rows(static_cast<std::size_t>(h) * out_width);
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < out_width; ++x) {
        const Taps& t = tx[x];
        double s = 0.0;
        for (std::size_t k = 0; k < t.weights.size(); ++k) s += t.weights[k] * img.at(ch, y, t.first + static_cast<int>(k));
        rows[static_cast<std::size_t>(y) * out_width + x] = s;
      }
    for (int y = 0; y < out_height; ++y) {
      const Taps& t = ty[y];
      for (int x = 0; x < out_width; ++x) {
        double s = 0.0;
        for (std::size_t k = 0; k < t.weights.size(); ++k)
          s += t.weights[k] * rows[static_cast<std::size_t>(t.first + k) * out_width + x];
        out.at(ch, y, x) = static_cast<float>(std::clamp(s, 0.0, 1.0));
      }
    }
  }
  return out;
}

Image rotate90_cw(const Image& img) {
  const int h = img.height(), w = img.width();
  Image out(img.channels(), w, h);
  for (int c = 0; c < img.channels(); ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(c, x, h - 1 - y) = img.at(c, y, x);
  return out;
}

Image rotate90_ccw(const Image& img) {
  const int h = img.height(), w = img.width();
  Image out(img.channels(), w, h);
  for (int c = 0; c < img.channels(); ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(c, w - 1 - x, y) = img.at(c, y, x);
  return out;
}

Image rotate180(const Image& img) {
  const int h = img.height(), w = img.width();
  Image out(img.channels(), h, w);
  for (int c = 0; c < img.channels(); ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(c, h - 1 - y, w - 1 - x) = img.at(c, y, x);
  return out;
}

Image orient_horizontal(const Image& img, Direction direction) {
  switch (direction) {
    case Direction::vertical_plus: return rotate90_cw(img);
    case Direction::vertical_minus: return rotate90_ccw(img);
    case Direction::top_down: return rotate180(img);
    case Direction::ignored: throw DataError("records with direction 'ignored' are not used");
    case Direction::horizontal:
    case Direction::curve: break;
  }
  return img;
}

std::pair<Image, Image> normalize_pair(const Image& lr_raw, const Image& hr_raw) {
  if (lr_raw.channels() != 3 || hr_raw.channels() != 3) throw DataError("normalize_pair expects RGB images");
  return {resize_bicubic(lr_raw, 16, 64), resize_bicubic(hr_raw, 32, 128)};
}

Image make_binary_mask(const Image& rgb) {
  const Image gray = rgb.channels() == 1 ? rgb : to_grayscale(rgb);
  const auto v = gray.values();
  double mean = 0.0;
  for (float g : v) mean += g;
  mean /= static_cast<double>(v.size());

  std::size_t above = 0;
  for (float g : v) above += g > mean;
  const std::size_t below = v.size() - above;
  const bool mark_above = above <= below;

  Image mask(1, gray.height(), gray.width());
  auto m = mask.values();
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = ((v[i] > mean) == mark_above) ? 1.0f : 0.0f;
  return mask;
}

Image make_synthetic_lr(const Image& hr) {
  if (hr.height() % 2 != 0 || hr.width() % 2 != 0)
    throw DataError("synthetic LR needs even dimensions, got " + std::to_string(hr.height()) + "x" +
                    std::to_string(hr.width()));
  return resize_bicubic(hr, hr.height() / 2, hr.width() / 2);
}

std::pair<int, int> misalign_window(int height, int width) {
  return {std::max(1, static_cast<int>(std::lround(0.9 * height))),
          std::max(1, static_cast<int>(std::lround(0.9 * width)))};
}

Image misalign_crop(const Image& lr, int top, int left) {
  const auto [wh, ww] = misalign_window(lr.height(), lr.width());
  if (top < 0 || left < 0 || top + wh > lr.height() || left + ww > lr.width())
    throw DataError("misalignment window out of bounds");
  Image crop(lr.channels(), wh, ww);
  for (int c = 0; c < lr.channels(); ++c)
    for (int y = 0; y < wh; ++y)
      for (int x = 0; x < ww; ++x) crop.at(c, y, x) = lr.at(c, top + y, left + x);
  return resize_bicubic(crop, lr.height(), lr.width());
}

Image misalign_augment(const Image& lr, Rng& rng) {
  const auto [wh, ww] = misalign_window(lr.height(), lr.width());
  const int top = uniform_int(rng, 0, lr.height() - wh);
  const int left = uniform_int(rng, 0, lr.width() - ww);
  return misalign_crop(lr, top, left);
}

}  // namespace textsr::data

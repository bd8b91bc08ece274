// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace textsr {

/// Channel-first float image with values nominally in [0, 1].
///
/// Channel counts in use: 1 (gray or mask), 3 (RGB), 4 (RGB + mask).
class Image {
 public:
  Image() = default;
  Image(int channels, int height, int width, float fill = 0.0f);
  Image(int channels, int height, int width, std::vector<float> data);

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }
  std::size_t plane_size() const { return static_cast<std::size_t>(height_) * width_; }
  bool empty() const { return data_.empty(); }

  float& at(int c, int y, int x) { return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x]; }
  float at(int c, int y, int x) const { return data_[(static_cast<std::size_t>(c) * height_ + y) * width_ + x]; }

  std::span<float> values() { return data_; }
  std::span<const float> values() const { return data_; }
  std::span<float> plane(int c) { return std::span<float>(data_).subspan(c * plane_size(), plane_size()); }
  std::span<const float> plane(int c) const {
    return std::span<const float>(data_).subspan(c * plane_size(), plane_size());
  }

  bool same_shape(const Image& other) const {
    return channels_ == other.channels_ && height_ == other.height_ && width_ == other.width_;
  }

  /// Clamps every value into [0, 1]; NaN becomes 0.
  void clamp01();

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

/// Luma with BT.601 weights (0.299, 0.587, 0.114). Requires a 3-channel image.
Image to_grayscale(const Image& rgb);

/// Appends the planes of `extra` after those of `base`. Spatial sizes must agree.
Image concat_channels(const Image& base, const Image& extra);

/// First `count` channels of `img`.
Image take_channels(const Image& img, int count);

}  // namespace textsr

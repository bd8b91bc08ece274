// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "textsr/nn/tensor.hpp"

namespace textsr::nn {

/// Normalised coordinate of pixel centre `i` on an axis of `extent` pixels: (2i + 1) / extent - 1.
double pixel_to_normalized(double i, int extent);
double normalized_to_pixel(double u, int extent);

/// Fiducial layout: two rows (top, bottom) of `count / 2` points spread evenly
/// in x, inset by `margin` from the [-1, 1] border. Returned as [count, 2] (x, y).
std::vector<double> fiducial_points(int count, double margin = 0.1);

/// Thin-plate-spline sampling grid generator.
///
/// Given source control points Y (one set per batch item) that correspond to
/// fixed target fiducials, the TPS maps every output pixel to a source
/// location. The map is linear in Y, so the generator precomputes the
/// [H*W, K] basis once and grid = basis * Y.
template <typename T>
class TpsGrid {
 public:
  TpsGrid(int out_height, int out_width, int num_points, double margin = 0.1);

  /// control: [B, K, 2] -> grid: [B, H*W, 2] in normalised coordinates.
  Tensor<T> forward(const Tensor<T>& control) const;
  /// d(grid) -> d(control)
  Tensor<T> backward(const Tensor<T>& dgrid) const;

  int num_points() const { return k_; }
  const std::vector<double>& target_points() const { return target_; }

 private:
  int h_, w_, k_;
  std::vector<double> target_;  // [K, 2]
  std::vector<T> basis_;        // [H*W, K]
};

/// Bilinear sampling with border clamping. grid holds normalised (x, y) per output pixel.
template <typename T>
class GridSampler {
 public:
  /// input [B, C, H, W], grid [B, Ho*Wo, 2] -> [B, C, Ho, Wo]
  Tensor<T> forward(const Tensor<T>& input, const Tensor<T>& grid, int out_height, int out_width);
  /// Returns (d input, d grid).
  std::pair<Tensor<T>, Tensor<T>> backward(const Tensor<T>& dy);

 private:
  Tensor<T> input_, grid_;
  int out_h_ = 0, out_w_ = 0;
};

}  // namespace textsr::nn

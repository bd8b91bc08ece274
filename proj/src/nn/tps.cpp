// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/nn/tps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textsr/core/error.hpp"

namespace textsr::nn {
namespace {

// Radial basis U(r) = r^2 log r, with U(0) = 0.
double radial(double dx, double dy) {
  const double r2 = dx * dx + dy * dy;
  return r2 > 0.0 ? 0.5 * r2 * std::log(r2) : 0.0;
}

// Dense inverse by Gauss-Jordan with partial pivoting; n is small (K + 3).
std::vector<double> invert(std::vector<double> a, int n) {
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (std::abs(a[pivot * n + col]) < 1e-12) throw std::runtime_error("TPS kernel matrix is singular");
    if (pivot != col)
      for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]), std::swap(inv[col * n + j], inv[pivot * n + j]);
    const double d = a[col * n + col];
    for (int j = 0; j < n; ++j) a[col * n + j] /= d, inv[col * n + j] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) a[r * n + j] -= f * a[col * n + j], inv[r * n + j] -= f * inv[col * n + j];
    }
  }
  return inv;
}

}  // namespace

double pixel_to_normalized(double i, int extent) { return (2.0 * i + 1.0) / extent - 1.0; }
double normalized_to_pixel(double u, int extent) { return ((u + 1.0) * extent - 1.0) / 2.0; }

std::vector<double> fiducial_points(int count, double margin) {
  if (count < 4 || count % 2) throw std::invalid_argument("fiducial count must be even and >= 4");
  const int per_row = count / 2;
  std::vector<double> pts;
  pts.reserve(2 * count);
  for (int row = 0; row < 2; ++row) {
    const double y = row == 0 ? -1.0 + margin : 1.0 - margin;
    for (int i = 0; i < per_row; ++i) {
      const double x = -1.0 + margin + (2.0 - 2.0 * margin) * i / (per_row - 1);
      pts.push_back(x);
      pts.push_back(y);
    }
  }
  return pts;
}

template <typename T>
TpsGrid<T>::TpsGrid(int out_height, int out_width, int num_points, double margin)
    : h_(out_height), w_(out_width), k_(num_points), target_(fiducial_points(num_points, margin)) {
  const int n = k_ + 3;
  std::vector<double> system(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j)
      system[i * n + j] = radial(target_[2 * i] - target_[2 * j], target_[2 * i + 1] - target_[2 * j + 1]);
    system[i * n + k_] = 1.0;
    system[i * n + k_ + 1] = target_[2 * i];
    system[i * n + k_ + 2] = target_[2 * i + 1];
    system[k_ * n + i] = 1.0;
    system[(k_ + 1) * n + i] = target_[2 * i];
    system[(k_ + 2) * n + i] = target_[2 * i + 1];
  }
  const std::vector<double> inv = invert(std::move(system), n);

  // basis[q, j] = sum_m repr[q, m] * inv[m, j] for the first K columns of inv.
  basis_.assign(static_cast<std::size_t>(h_) * w_ * k_, T(0));
  std::vector<double> repr(n);
  for (int y = 0; y < h_; ++y) {
    for (int x = 0; x < w_; ++x) {
      const double qx = pixel_to_normalized(x, w_), qy = pixel_to_normalized(y, h_);
      for (int j = 0; j < k_; ++j) repr[j] = radial(qx - target_[2 * j], qy - target_[2 * j + 1]);
      repr[k_] = 1.0;
      repr[k_ + 1] = qx;
      repr[k_ + 2] = qy;
      T* row = basis_.data() + (static_cast<std::size_t>(y) * w_ + x) * k_;
      for (int j = 0; j < k_; ++j) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) acc += repr[m] * inv[m * n + j];
        row[j] = static_cast<T>(acc);
      }
    }
  }
}

template <typename T>
Tensor<T> TpsGrid<T>::forward(const Tensor<T>& control) const {
  require_shape(control, {-1, k_, 2}, "TPS control points");
  const int b = control.dim(0);
  const std::size_t hw = static_cast<std::size_t>(h_) * w_;
  Tensor<T> grid({b, static_cast<int>(hw), 2});
  for (int n = 0; n < b; ++n) {
    const T* ctrl = control.data() + static_cast<std::size_t>(n) * k_ * 2;
    T* g = grid.data() + n * hw * 2;
    for (std::size_t q = 0; q < hw; ++q) {
      const T* row = basis_.data() + q * k_;
      T gx = 0, gy = 0;
      for (int j = 0; j < k_; ++j) gx += row[j] * ctrl[2 * j], gy += row[j] * ctrl[2 * j + 1];
      g[2 * q] = gx;
      g[2 * q + 1] = gy;
    }
  }
  return grid;
}

template <typename T>
Tensor<T> TpsGrid<T>::backward(const Tensor<T>& dgrid) const {
  const std::size_t hw = static_cast<std::size_t>(h_) * w_;
  require_shape(dgrid, {-1, static_cast<int>(hw), 2}, "TPS grid grad");
  const int b = dgrid.dim(0);
  Tensor<T> dctrl({b, k_, 2});
  for (int n = 0; n < b; ++n) {
    const T* g = dgrid.data() + n * hw * 2;
    T* d = dctrl.data() + static_cast<std::size_t>(n) * k_ * 2;
    for (std::size_t q = 0; q < hw; ++q) {
      const T* row = basis_.data() + q * k_;
      for (int j = 0; j < k_; ++j) d[2 * j] += row[j] * g[2 * q], d[2 * j + 1] += row[j] * g[2 * q + 1];
    }
  }
  return dctrl;
}

// ---------------------------------------------------------------- GridSampler

template <typename T>
Tensor<T> GridSampler<T>::forward(const Tensor<T>& input, const Tensor<T>& grid, int out_height, int out_width) {
  require_shape(input, {-1, -1, -1, -1}, "GridSampler input");
  const int b = input.dim(0), c = input.dim(1), h = input.dim(2), w = input.dim(3);
  require_shape(grid, {b, out_height * out_width, 2}, "GridSampler grid");
  input_ = input;
  grid_ = grid;
  out_h_ = out_height;
  out_w_ = out_width;
  Tensor<T> out({b, c, out_height, out_width});
  const std::size_t hw_out = static_cast<std::size_t>(out_height) * out_width;
  for (int n = 0; n < b; ++n) {
    for (std::size_t q = 0; q < hw_out; ++q) {
      const T gx = grid[(n * hw_out + q) * 2], gy = grid[(n * hw_out + q) * 2 + 1];
      const T px = std::clamp<T>(static_cast<T>(normalized_to_pixel(gx, w)), T(0), T(w - 1));
      const T py = std::clamp<T>(static_cast<T>(normalized_to_pixel(gy, h)), T(0), T(h - 1));
      const int x0 = static_cast<int>(std::floor(px)), y0 = static_cast<int>(std::floor(py));
      const int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
      const T ax = px - x0, ay = py - y0;
      for (int ch = 0; ch < c; ++ch) {
        const T v00 = input.at(n, ch, y0, x0), v01 = input.at(n, ch, y0, x1);
        const T v10 = input.at(n, ch, y1, x0), v11 = input.at(n, ch, y1, x1);
        out[(static_cast<std::size_t>(n) * c + ch) * hw_out + q] =
            (T(1) - ay) * ((T(1) - ax) * v00 + ax * v01) + ay * ((T(1) - ax) * v10 + ax * v11);
      }
    }
  }
  return out;
}

template <typename T>
std::pair<Tensor<T>, Tensor<T>> GridSampler<T>::backward(const Tensor<T>& dy) {
  const int b = input_.dim(0), c = input_.dim(1), h = input_.dim(2), w = input_.dim(3);
  require_shape(dy, {b, c, out_h_, out_w_}, "GridSampler grad");
  Tensor<T> dinput(input_.shape());
  Tensor<T> dgrid(grid_.shape());
  const std::size_t hw_out = static_cast<std::size_t>(out_h_) * out_w_;
  for (int n = 0; n < b; ++n) {
    for (std::size_t q = 0; q < hw_out; ++q) {
      const T gx = grid_[(n * hw_out + q) * 2], gy = grid_[(n * hw_out + q) * 2 + 1];
      const T raw_x = static_cast<T>(normalized_to_pixel(gx, w));
      const T raw_y = static_cast<T>(normalized_to_pixel(gy, h));
      const T px = std::clamp<T>(raw_x, T(0), T(w - 1));
      const T py = std::clamp<T>(raw_y, T(0), T(h - 1));
      const bool clamped_x = raw_x != px, clamped_y = raw_y != py;
      const int x0 = static_cast<int>(std::floor(px)), y0 = static_cast<int>(std::floor(py));
      const int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
      const T ax = px - x0, ay = py - y0;
      T dpx = 0, dpy = 0;
      for (int ch = 0; ch < c; ++ch) {
        const T g = dy[(static_cast<std::size_t>(n) * c + ch) * hw_out + q];
        if (g == T(0)) continue;
        const T v00 = input_.at(n, ch, y0, x0), v01 = input_.at(n, ch, y0, x1);
        const T v10 = input_.at(n, ch, y1, x0), v11 = input_.at(n, ch, y1, x1);
        dinput.at(n, ch, y0, x0) += g * (T(1) - ay) * (T(1) - ax);
        dinput.at(n, ch, y0, x1) += g * (T(1) - ay) * ax;
        dinput.at(n, ch, y1, x0) += g * ay * (T(1) - ax);
        dinput.at(n, ch, y1, x1) += g * ay * ax;
        dpx += g * ((T(1) - ay) * (v01 - v00) + ay * (v11 - v10));
        dpy += g * ((T(1) - ax) * (v10 - v00) + ax * (v11 - v01));
      }
      // d pixel / d normalised = extent / 2; zero where the coordinate was clamped.
      dgrid[(n * hw_out + q) * 2] = clamped_x ? T(0) : dpx * T(w) / T(2);
      dgrid[(n * hw_out + q) * 2 + 1] = clamped_y ? T(0) : dpy * T(h) / T(2);
    }
  }
  return {std::move(dinput), std::move(dgrid)};
}

template class TpsGrid<float>;
template class TpsGrid<double>;
template class GridSampler<float>;
template class GridSampler<double>;

}  // namespace textsr::nn

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/losses/losses.hpp"

#include <cmath>

#include "textsr/core/error.hpp"

namespace textsr::losses {
namespace {

template <typename T>
void require_same(const Tensor<T>& a, const Tensor<T>& b, const char* what) {
  if (!a.same_shape(b) || a.rank() < 2)
    throw ShapeError(std::string(what) + ": shape mismatch " + nn::shape_string(a.shape()) + " vs " +
                     nn::shape_string(b.shape()));
}

Tensor<float> as_tensor(const Image& img) {
  return Tensor<float>({img.channels(), img.height(), img.width()},
                       std::vector<float>(img.values().begin(), img.values().end()));
}

template <typename T>
T sign(T v) {
  return v > T(0) ? T(1) : (v < T(0) ? T(-1) : T(0));
}

}  // namespace

template <typename T>
GradientField<T> gradient_field(const Tensor<T>& img) {
  if (img.rank() < 2) throw ShapeError("gradient_field needs at least 2 dimensions");
  const int h = img.dim(img.rank() - 2), w = img.dim(img.rank() - 1);
  const std::size_t planes = img.size() / (static_cast<std::size_t>(h) * w);
  GradientField<T> g{Tensor<T>(img.shape()), Tensor<T>(img.shape())};
  for (std::size_t p = 0; p < planes; ++p) {
    const T* src = img.data() + p * h * w;
    T* gx = g.gx.data() + p * h * w;
    T* gy = g.gy.data() + p * h * w;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        gx[i] = x + 1 < w ? src[i + 1] - src[i] : T(0);
        gy[i] = y + 1 < h ? src[i + w] - src[i] : T(0);
      }
  }
  return g;
}

GradientField<float> gradient_field(const Image& img) { return gradient_field(as_tensor(img)); }

template <typename T>
double gradient_profile_loss(const Tensor<T>& sr, const Tensor<T>& hr, Tensor<T>* grad_sr) {
  require_same(sr, hr, "gradient_profile_loss");
  const int h = sr.dim(sr.rank() - 2), w = sr.dim(sr.rank() - 1);
  const std::size_t planes = sr.size() / (static_cast<std::size_t>(h) * w);
  const double denom = 2.0 * static_cast<double>(sr.size());
  if (grad_sr) *grad_sr = Tensor<T>(sr.shape());
  const T scale = static_cast<T>(1.0 / denom);
  double sum = 0.0;
  for (std::size_t p = 0; p < planes; ++p) {
    const T* s = sr.data() + p * h * w;
    const T* r = hr.data() + p * h * w;
    T* g = grad_sr ? grad_sr->data() + p * h * w : nullptr;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (x + 1 < w) {
          const T diff = (s[i + 1] - s[i]) - (r[i + 1] - r[i]);
          sum += std::abs(static_cast<double>(diff));
          if (g) {
            const T d = sign(diff) * scale;
            g[i + 1] += d;
            g[i] -= d;
          }
        }
        if (y + 1 < h) {
          const T diff = (s[i + w] - s[i]) - (r[i + w] - r[i]);
          sum += std::abs(static_cast<double>(diff));
          if (g) {
            const T d = sign(diff) * scale;
            g[i + w] += d;
            g[i] -= d;
          }
        }
      }
  }
  return sum / denom;
}

double gradient_profile_loss(const Image& sr, const Image& hr) {
  return gradient_profile_loss(as_tensor(sr), as_tensor(hr));
}

template <typename T>
double mse_loss(const Tensor<T>& sr, const Tensor<T>& hr, Tensor<T>* grad_sr) {
  require_same(sr, hr, "mse_loss");
  const double n = static_cast<double>(sr.size());
  double sum = 0.0;
  if (grad_sr) *grad_sr = Tensor<T>(sr.shape());
  for (std::size_t i = 0; i < sr.size(); ++i) {
    const double d = static_cast<double>(sr[i]) - static_cast<double>(hr[i]);
    sum += d * d;
    if (grad_sr) (*grad_sr)[i] = static_cast<T>(2.0 * d / n);
  }
  return sum / n;
}

template <typename T>
LossParts total_loss(const Tensor<T>& sr, const Tensor<T>& hr, const TrainConfig& cfg, Tensor<T>* grad_sr) {
  require_same(sr, hr, "total_loss");
  LossParts parts;
  Tensor<T> g_pixel, g_gp;
  parts.pixel = mse_loss(sr, hr, grad_sr ? &g_pixel : nullptr);
  parts.gp = gradient_profile_loss(sr, hr, grad_sr ? &g_gp : nullptr);
  parts.total = cfg.weight_pixel_loss * parts.pixel + cfg.weight_gp_loss * parts.gp;
  if (grad_sr) {
    *grad_sr = Tensor<T>(sr.shape());
    const T wp = static_cast<T>(cfg.weight_pixel_loss), wg = static_cast<T>(cfg.weight_gp_loss);
    for (std::size_t i = 0; i < sr.size(); ++i) (*grad_sr)[i] = wp * g_pixel[i] + wg * g_gp[i];
  }
  return parts;
}

LossParts total_loss(const Image& sr, const Image& hr, const TrainConfig& cfg) {
  return total_loss(as_tensor(sr), as_tensor(hr), cfg);
}

template GradientField<float> gradient_field(const Tensor<float>&);
template GradientField<double> gradient_field(const Tensor<double>&);
template double gradient_profile_loss(const Tensor<float>&, const Tensor<float>&, Tensor<float>*);
template double gradient_profile_loss(const Tensor<double>&, const Tensor<double>&, Tensor<double>*);
template double mse_loss(const Tensor<float>&, const Tensor<float>&, Tensor<float>*);
template double mse_loss(const Tensor<double>&, const Tensor<double>&, Tensor<double>*);
template LossParts total_loss(const Tensor<float>&, const Tensor<float>&, const TrainConfig&, Tensor<float>*);
template LossParts total_loss(const Tensor<double>&, const Tensor<double>&, const TrainConfig&, Tensor<double>*);

}  // namespace textsr::losses

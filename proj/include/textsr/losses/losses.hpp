// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "textsr/core/config.hpp"
#include "textsr/core/image.hpp"
#include "textsr/nn/tensor.hpp"

namespace textsr::losses {

using nn::Tensor;

/// Forward differences along x (gx) and y (gy), zero on the trailing
/// column/row. Shapes match the source; the last two axes are (H, W).
template <typename T>
struct GradientField {
  Tensor<T> gx;
  Tensor<T> gy;
};

template <typename T>
GradientField<T> gradient_field(const Tensor<T>& img);
GradientField<float> gradient_field(const Image& img);

/// Mean over sites, channels, batch items and both components of
/// |grad(hr) - grad(sr)|. When `grad_sr` is non-null it receives dL/d(sr).
template <typename T>
double gradient_profile_loss(const Tensor<T>& sr, const Tensor<T>& hr, Tensor<T>* grad_sr = nullptr);
double gradient_profile_loss(const Image& sr, const Image& hr);

/// Mean squared error; `grad_sr` receives dL/d(sr) when non-null.
template <typename T>
double mse_loss(const Tensor<T>& sr, const Tensor<T>& hr, Tensor<T>* grad_sr = nullptr);

struct LossParts {
  double total = 0.0;
  double pixel = 0.0;
  double gp = 0.0;
};

/// total = weight_pixel_loss * MSE + weight_gp_loss * gradient profile loss.
/// Inputs are [B, 3, H, W] (or [3, H, W]).
template <typename T>
LossParts total_loss(const Tensor<T>& sr, const Tensor<T>& hr, const TrainConfig& cfg, Tensor<T>* grad_sr = nullptr);
LossParts total_loss(const Image& sr, const Image& hr, const TrainConfig& cfg);

}  // namespace textsr::losses

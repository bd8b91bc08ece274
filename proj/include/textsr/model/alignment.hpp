// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include "textsr/nn/layers.hpp"
#include "textsr/nn/tps.hpp"

namespace textsr::model {

using nn::Tensor;

/// Conv 3x3 -> batch-norm -> ReLU.
template <typename T>
class ConvBlock : public nn::Module<T> {
 public:
  ConvBlock(int in_channels, int out_channels, Rng& rng);
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string& prefix, nn::ParameterList<T>& out) override;
  void set_training(bool training) override;

 private:
  nn::Conv2d<T> conv_;
  nn::BatchNorm<T> bn_;
  nn::Relu<T> relu_;
};

/// Predicts TPS source control points from the input image.
///
/// Six conv blocks (32, 64, 128, 256, 256, 256 channels) separated by max
/// pooling that reduces 16x64 to 1x2, then FC 512 -> BN -> ReLU -> FC 2K. The
/// last layer starts with zero weights and the fiducial layout as bias, so the
/// untrained network predicts the identity transform for every input.
template <typename T>
class LocalizationNet : public nn::Module<T> {
 public:
  LocalizationNet(int in_channels, int height, int width, int num_points, Rng& rng);

  /// [B, C, H, W] -> [B, K, 2]
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dcontrol);
  void collect(const std::string& prefix, nn::ParameterList<T>& out) override;
  void set_training(bool training) override;

 private:
  int num_points_;
  std::vector<std::unique_ptr<ConvBlock<T>>> blocks_;
  std::vector<nn::MaxPool<T>> pools_;  // pools_[i] follows blocks_[i]
  nn::Linear<T> fc1_;
  nn::BatchNorm<T> fc1_bn_;
  nn::Relu<T> fc1_relu_;
  nn::Linear<T> fc2_;
  nn::Shape feature_shape_;
};

/// Learned thin-plate-spline rectification applied to the network input.
template <typename T>
class CentralAlignment : public nn::Module<T> {
 public:
  CentralAlignment(int channels, int height, int width, int num_points, Rng& rng);

  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);

  /// Resamples `x` with explicitly given source control points [B, K, 2];
  /// the localisation network is not involved.
  Tensor<T> warp(const Tensor<T>& x, const Tensor<T>& control);

  const nn::TpsGrid<T>& tps() const { return tps_; }
  void collect(const std::string& prefix, nn::ParameterList<T>& out) override;
  void set_training(bool training) override;

 private:
  int channels_, height_, width_;
  LocalizationNet<T> localization_;
  nn::TpsGrid<T> tps_;
  nn::GridSampler<T> sampler_;
};

}  // namespace textsr::model

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "textsr/core/config.hpp"
#include "textsr/model/alignment.hpp"
#include "textsr/nn/layers.hpp"
#include "textsr/nn/recurrent.hpp"

namespace textsr::model {

inline constexpr int kLrHeight = 16;
inline constexpr int kLrWidth = 64;
inline constexpr int kHrHeight = 32;
inline constexpr int kHrWidth = 128;

/// Sequential residual block.
///
/// conv3x3 -> BN -> PReLU -> conv3x3 -> BN -> conv1x1 -> row BLSTM -> column
/// BLSTM, added back onto the block input. Requires channels == 2 * hidden.
template <typename T>
class SequentialResidualBlock : public nn::Module<T> {
 public:
  SequentialResidualBlock(int channels, int hidden, Rng& rng);

  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string& prefix, nn::ParameterList<T>& out) override;
  void set_training(bool training) override;

  nn::AxisRecurrence<T>& horizontal() { return rec_h_; }
  nn::AxisRecurrence<T>& vertical() { return rec_v_; }

 private:
  int channels_;
  nn::Conv2d<T> conv1_;
  nn::BatchNorm<T> bn1_;
  nn::PRelu<T> act_;
  nn::Conv2d<T> conv2_;
  nn::BatchNorm<T> bn2_;
  nn::Conv2d<T> proj_;
  nn::AxisRecurrence<T> rec_h_;
  nn::AxisRecurrence<T> rec_v_;
};

/// The x2 text super-resolution network.
///
/// [B, 3|4, 16, 64] -> optional central alignment -> conv9x9 + PReLU ->
/// num_srb SRBs -> conv3x3 + BN -> + shallow features -> conv3x3 to 4C ->
/// pixel shuffle x2 -> PReLU -> conv9x9 to 3 -> (tanh + 1) / 2 -> [B, 3, 32, 128].
template <typename T>
class Tsrn : public nn::Module<T> {
 public:
  Tsrn(const ModelConfig& cfg, Rng& rng);

  Tensor<T> forward(const Tensor<T>& x);
  /// Gradient w.r.t. the forward input; parameter gradients accumulate.
  Tensor<T> backward(const Tensor<T>& dy);

  const ModelConfig& config() const { return cfg_; }
  std::size_t parameter_count();
  CentralAlignment<T>* alignment() { return align_ ? &*align_ : nullptr; }

  void collect(const std::string& prefix, nn::ParameterList<T>& out) override;
  void set_training(bool training) override;

 private:
  ModelConfig cfg_;
  std::optional<CentralAlignment<T>> align_;
  nn::Conv2d<T> shallow_;
  nn::PRelu<T> shallow_act_;
  std::vector<std::unique_ptr<SequentialResidualBlock<T>>> blocks_;
  nn::Conv2d<T> post_conv_;
  nn::BatchNorm<T> post_bn_;
  nn::Conv2d<T> up_conv_;
  nn::PixelShuffle<T> shuffle_;
  nn::PRelu<T> up_act_;
  nn::Conv2d<T> head_;
  nn::ScaledTanh<T> output_;
};

}  // namespace textsr::model

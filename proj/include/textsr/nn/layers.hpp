// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "textsr/core/rng.hpp"
#include "textsr/nn/module.hpp"

namespace textsr::nn {

// Layers cache what they need during forward(); backward() must follow the
// matching forward() and accumulates into the parameter gradients.

/// Stride-1 2-D convolution over NCHW input, via im2col + GEMM.
template <typename T>
class Conv2d : public Module<T> {
 public:
  /// `automatic` picks direct convolution for narrow outputs, where im2col
  /// traffic would dominate, and im2col + GEMM otherwise.
  enum class Algorithm { automatic, gemm, direct };

  Conv2d(int in_channels, int out_channels, int kernel, int padding, Rng& rng);

  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string& prefix, ParameterList<T>& out) override;

  int in_channels() const { return in_; }
  int out_channels() const { return out_; }
  Parameter<T>& weight() { return weight_; }
  Parameter<T>& bias() { return bias_; }
  void set_algorithm(Algorithm a) { algorithm_ = a; }

 private:
  bool use_direct() const;
  void forward_direct(const T* x, int h, int w, T* y) const;
  void backward_direct(const T* x, const T* dy, int h, int w, T* dx);

  int in_, out_, kernel_, padding_;
  Algorithm algorithm_ = Algorithm::automatic;
  Parameter<T> weight_;  // [out, in, k, k]
  Parameter<T> bias_;    // [out]
  Tensor<T> input_;
  std::vector<T> col_;
};

/// Batch normalisation over axis 1 of [N, C] or [N, C, H, W].
template <typename T>
class BatchNorm : public Module<T> {
 public:
  explicit BatchNorm(int channels, double momentum = 0.1, double eps = 1e-5);

  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string& prefix, ParameterList<T>& out) override;

  Tensor<T>& running_mean() { return running_mean_; }
  Tensor<T>& running_var() { return running_var_; }

 private:
  int channels_;
  double momentum_, eps_;
  Parameter<T> gamma_, beta_;
  Tensor<T> running_mean_, running_var_;
  Tensor<T> xhat_;
  std::vector<T> inv_std_;
  bool cached_training_ = true;
};

/// PReLU with a single learned slope shared across channels.
template <typename T>
class PRelu : public Module<T> {
 public:
  PRelu();
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string& prefix, ParameterList<T>& out) override;

  Parameter<T>& slope() { return slope_; }

 private:
  Parameter<T> slope_;
  Tensor<T> input_;
};

template <typename T>
class Relu : public Module<T> {
 public:
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string&, ParameterList<T>&) override {}

 private:
  Tensor<T> output_;
};

/// Non-overlapping max pooling with window (kh, kw); trailing rows/cols that
/// do not fill a window are dropped.
template <typename T>
class MaxPool : public Module<T> {
 public:
  MaxPool(int kernel_h, int kernel_w) : kh_(kernel_h), kw_(kernel_w) {}
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string&, ParameterList<T>&) override {}

 private:
  int kh_, kw_;
  Shape input_shape_;
  std::vector<std::size_t> argmax_;
};

/// y = x W^T + b over [N, in].
template <typename T>
class Linear : public Module<T> {
 public:
  Linear(int in_features, int out_features, Rng& rng);
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string& prefix, ParameterList<T>& out) override;

  Parameter<T>& weight() { return weight_; }
  Parameter<T>& bias() { return bias_; }

 private:
  int in_, out_;
  Parameter<T> weight_;  // [out, in]
  Parameter<T> bias_;    // [out]
  Tensor<T> input_;
};

/// [N, C*r*r, H, W] -> [N, C, H*r, W*r].
template <typename T>
class PixelShuffle : public Module<T> {
 public:
  explicit PixelShuffle(int factor) : r_(factor) {}
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string&, ParameterList<T>&) override {}

 private:
  int r_;
};

/// Maps the real line into (0, 1): y = (tanh(x) + 1) / 2.
template <typename T>
class ScaledTanh : public Module<T> {
 public:
  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string&, ParameterList<T>&) override {}

 private:
  Tensor<T> output_;
};

}  // namespace textsr::nn

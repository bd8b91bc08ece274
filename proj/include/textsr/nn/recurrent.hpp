// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "textsr/core/rng.hpp"
#include "textsr/nn/module.hpp"

namespace textsr::nn {

/// Single-direction LSTM over a batch of equal-length sequences.
///
/// Input [T, N, input], output hidden states [T, N, hidden]. Gate order in the
/// stacked weights is (input, forget, cell, output). With `reverse` the
/// sequence is consumed from t = T-1 down to 0; outputs stay time-aligned.
template <typename T>
class Lstm : public Module<T> {
 public:
  Lstm(int input_size, int hidden_size, bool reverse, Rng& rng);

  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dh);
  void collect(const std::string& prefix, ParameterList<T>& out) override;

  int hidden_size() const { return hidden_; }
  Parameter<T>& weight_ih() { return w_ih_; }
  Parameter<T>& weight_hh() { return w_hh_; }
  Parameter<T>& bias() { return bias_; }

 private:
  int input_, hidden_;
  bool reverse_;
  Parameter<T> w_ih_;  // [4h, input]
  Parameter<T> w_hh_;  // [4h, h]
  Parameter<T> bias_;  // [4h]
  Tensor<T> input_cache_;
  Tensor<T> gates_;   // activated gates [T, N, 4h]
  Tensor<T> cells_;   // [T, N, h]
  Tensor<T> cell_tanh_;  // tanh(cells_)
  Tensor<T> hidden_states_;  // [T, N, h]
};

enum class Axis { horizontal, vertical };

/// Bidirectional LSTM run along one spatial axis of an NCHW feature map.
///
/// Horizontal: every row of every image is a sequence over x whose step
/// feature is the channel vector. Vertical: every column is a sequence over y.
/// Forward and backward hidden states are concatenated along channels, so the
/// output is [N, 2 * hidden, H, W].
template <typename T>
class AxisRecurrence : public Module<T> {
 public:
  AxisRecurrence(Axis axis, int channels, int hidden, Rng& rng);

  Tensor<T> forward(const Tensor<T>& x);
  Tensor<T> backward(const Tensor<T>& dy);
  void collect(const std::string& prefix, ParameterList<T>& out) override;

  Lstm<T>& forward_cell() { return fwd_; }
  Lstm<T>& backward_cell() { return bwd_; }

 private:
  Axis axis_;
  int channels_, hidden_;
  Lstm<T> fwd_, bwd_;
  Shape input_shape_;
};

}  // namespace textsr::nn

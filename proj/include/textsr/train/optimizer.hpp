// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "textsr/nn/module.hpp"

namespace textsr::train {

struct AdamOptions {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias correction, no weight decay.
class Adam {
 public:
  Adam(nn::ParameterList<float> params, AdamOptions options);

  /// Applies one update from the accumulated gradients.
  void step();
  void zero_grad() { params_.zero_grad(); }

  long step_count() const { return t_; }
  void set_step_count(long t) { t_ = t; }
  const AdamOptions& options() const { return opt_; }

  /// Moment buffers named "adam.m.<param>" and "adam.v.<param>".
  std::vector<std::pair<std::string, nn::Tensor<float>*>> state();

 private:
  nn::ParameterList<float> params_;
  AdamOptions opt_;
  std::vector<nn::Tensor<float>> m_, v_;
  long t_ = 0;
};

}  // namespace textsr::train

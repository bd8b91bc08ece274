// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "textsr/nn/tensor.hpp"

namespace textsr::nn {

template <typename T>
struct Parameter {
  Tensor<T> value;
  Tensor<T> grad;

  Parameter() = default;
  explicit Parameter(Shape shape) : value(shape), grad(std::move(shape)) {}
};

/// Flat, name-addressed view of a module tree's state.
template <typename T>
struct ParameterList {
  std::vector<std::pair<std::string, Parameter<T>*>> params;
  std::vector<std::pair<std::string, Tensor<T>*>> buffers;  // non-trainable (batch-norm statistics)

  std::size_t parameter_count() const;
  void zero_grad();
};

/// Base for anything that owns parameters. Forward/backward signatures differ
/// per layer, so they are not part of this interface.
template <typename T>
class Module {
 public:
  virtual ~Module() = default;

  virtual void collect(const std::string& prefix, ParameterList<T>& out) = 0;
  virtual void set_training(bool training) { training_ = training; }
  bool training() const { return training_; }

  ParameterList<T> parameters() {
    ParameterList<T> out;
    collect("", out);
    return out;
  }

 protected:
  static std::string join(const std::string& prefix, const std::string& name) {
    return prefix.empty() ? name : prefix + "." + name;
  }

  bool training_ = true;
};

}  // namespace textsr::nn

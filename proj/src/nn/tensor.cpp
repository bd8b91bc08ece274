// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/nn/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "textsr/core/error.hpp"
#include "textsr/nn/module.hpp"

namespace textsr::nn {

std::string shape_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
}

template <typename T>
Tensor<T>::Tensor(Shape shape, T fill) : shape_(std::move(shape)) {
  for (int d : shape_)
    if (d < 0) throw ShapeError("negative extent in " + shape_string(shape_));
  data_.assign(shape_size(shape_), fill);
}

template <typename T>
Tensor<T>::Tensor(Shape shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != shape_size(shape_))
    throw ShapeError("tensor data has " + std::to_string(data_.size()) + " values, shape " + shape_string(shape_));
}

template <typename T>
void Tensor<T>::fill(T value) {
  std::fill(data_.begin(), data_.end(), value);
}

template <typename T>
Tensor<T> Tensor<T>::reshaped(Shape shape) const {
  if (shape_size(shape) != data_.size())
    throw ShapeError("cannot reshape " + shape_string(shape_) + " to " + shape_string(shape));
  return Tensor(std::move(shape), data_);
}

template <typename T>
Tensor<T>& Tensor<T>::operator+=(const Tensor& other) {
  if (!same_shape(other))
    throw ShapeError("tensor add: " + shape_string(shape_) + " vs " + shape_string(other.shape_));
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

template <typename T>
void require_shape(const Tensor<T>& t, const Shape& expected, const char* what) {
  bool ok = t.rank() == static_cast<int>(expected.size());
  for (std::size_t i = 0; ok && i < expected.size(); ++i) ok = expected[i] < 0 || expected[i] == t.dim(i);
  if (!ok) throw ShapeError(std::string(what) + ": expected " + shape_string(expected) + ", got " + shape_string(t.shape()));
}

template <typename T>
std::size_t ParameterList<T>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [name, p] : params) n += p->value.size();
  return n;
}

template <typename T>
void ParameterList<T>::zero_grad() {
  for (auto& [name, p] : params) p->grad.fill(T(0));
}

template class Tensor<float>;
template class Tensor<double>;
template void require_shape(const Tensor<float>&, const Shape&, const char*);
template void require_shape(const Tensor<double>&, const Shape&, const char*);
template struct ParameterList<float>;
template struct ParameterList<double>;

}  // namespace textsr::nn

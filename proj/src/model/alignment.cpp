// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/model/alignment.hpp"

#include <cmath>

#include "textsr/core/error.hpp"

namespace textsr::model {

template <typename T>
ConvBlock<T>::ConvBlock(int in_channels, int out_channels, Rng& rng)
    : conv_(in_channels, out_channels, 3, 1, rng), bn_(out_channels) {}

template <typename T>
Tensor<T> ConvBlock<T>::forward(const Tensor<T>& x) {
  return relu_.forward(bn_.forward(conv_.forward(x)));
}

template <typename T>
Tensor<T> ConvBlock<T>::backward(const Tensor<T>& dy) {
  return conv_.backward(bn_.backward(relu_.backward(dy)));
}

template <typename T>
void ConvBlock<T>::collect(const std::string& prefix, nn::ParameterList<T>& out) {
  conv_.collect(this->join(prefix, "conv"), out);
  bn_.collect(this->join(prefix, "bn"), out);
}

template <typename T>
void ConvBlock<T>::set_training(bool training) {
  nn::Module<T>::set_training(training);
  bn_.set_training(training);
}

// ---------------------------------------------------------------- LocalizationNet

namespace {
constexpr int kLocChannels[] = {32, 64, 128, 256, 256, 256};
constexpr int kLocPools[][2] = {{2, 2}, {2, 2}, {2, 2}, {2, 2}, {1, 2}};
}  // namespace

template <typename T>
LocalizationNet<T>::LocalizationNet(int in_channels, int height, int width, int num_points, Rng& rng)
    : num_points_(num_points),
      fc1_(256 * (height / 16) * (width / 32), 512, rng),
      fc1_bn_(512),
      fc2_(512, 2 * num_points, rng) {
  if (height % 16 != 0 || width % 32 != 0 || height == 0 || width == 0)
    throw ShapeError("localization network needs height % 16 == 0 and width % 32 == 0");
  int cin = in_channels;
  for (int c : kLocChannels) {
    blocks_.push_back(std::make_unique<ConvBlock<T>>(cin, c, rng));
    cin = c;
  }
  for (const auto& p : kLocPools) pools_.emplace_back(p[0], p[1]);
  fc2_.weight().value.fill(T(0));
  const auto target = nn::fiducial_points(num_points);
  for (int i = 0; i < 2 * num_points; ++i) fc2_.bias().value[i] = static_cast<T>(target[i]);
}

template <typename T>
Tensor<T> LocalizationNet<T>::forward(const Tensor<T>& x) {
  Tensor<T> h = x;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    h = blocks_[i]->forward(h);
    if (i < pools_.size()) h = pools_[i].forward(h);
  }
  feature_shape_ = h.shape();
  const int b = h.dim(0);
  h = h.reshaped({b, static_cast<int>(h.size() / b)});
  h = fc1_relu_.forward(fc1_bn_.forward(fc1_.forward(h)));
  return fc2_.forward(h).reshaped({b, num_points_, 2});
}

template <typename T>
Tensor<T> LocalizationNet<T>::backward(const Tensor<T>& dcontrol) {
  const int b = dcontrol.dim(0);
  Tensor<T> d = fc2_.backward(dcontrol.reshaped({b, 2 * num_points_}));
  d = fc1_.backward(fc1_bn_.backward(fc1_relu_.backward(d)));
  d = d.reshaped(feature_shape_);
  for (int i = static_cast<int>(blocks_.size()) - 1; i >= 0; --i) {
    if (i < static_cast<int>(pools_.size())) d = pools_[i].backward(d);
    d = blocks_[i]->backward(d);
  }
  return d;
}

template <typename T>
void LocalizationNet<T>::collect(const std::string& prefix, nn::ParameterList<T>& out) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i]->collect(this->join(prefix, "conv" + std::to_string(i)), out);
  fc1_.collect(this->join(prefix, "fc1"), out);
  fc1_bn_.collect(this->join(prefix, "fc1_bn"), out);
  fc2_.collect(this->join(prefix, "fc2"), out);
}

template <typename T>
void LocalizationNet<T>::set_training(bool training) {
  nn::Module<T>::set_training(training);
  for (auto& b : blocks_) b->set_training(training);
  fc1_bn_.set_training(training);
}

// ---------------------------------------------------------------- CentralAlignment

template <typename T>
CentralAlignment<T>::CentralAlignment(int channels, int height, int width, int num_points, Rng& rng)
    : channels_(channels),
      height_(height),
      width_(width),
      localization_(channels, height, width, num_points, rng),
      tps_(height, width, num_points) {}

template <typename T>
Tensor<T> CentralAlignment<T>::forward(const Tensor<T>& x) {
  nn::require_shape(x, {-1, channels_, height_, width_}, "central alignment input");
  const Tensor<T> control = localization_.forward(x);
  for (T v : control.values())
    if (!std::isfinite(static_cast<double>(v))) throw NumericalError("central alignment predicted non-finite control points");
  return sampler_.forward(x, tps_.forward(control), height_, width_);
}

template <typename T>
Tensor<T> CentralAlignment<T>::backward(const Tensor<T>& dy) {
  auto [dx, dgrid] = sampler_.backward(dy);
  dx += localization_.backward(tps_.backward(dgrid));
  return std::move(dx);
}

template <typename T>
Tensor<T> CentralAlignment<T>::warp(const Tensor<T>& x, const Tensor<T>& control) {
  nn::require_shape(x, {-1, -1, height_, width_}, "warp input");
  nn::GridSampler<T> sampler;
  return sampler.forward(x, tps_.forward(control), height_, width_);
}

template <typename T>
void CentralAlignment<T>::collect(const std::string& prefix, nn::ParameterList<T>& out) {
  localization_.collect(this->join(prefix, "localization"), out);
}

template <typename T>
void CentralAlignment<T>::set_training(bool training) {
  nn::Module<T>::set_training(training);
  localization_.set_training(training);
}

template class ConvBlock<float>;
template class ConvBlock<double>;
template class LocalizationNet<float>;
template class LocalizationNet<double>;
template class CentralAlignment<float>;
template class CentralAlignment<double>;

}  // namespace textsr::model

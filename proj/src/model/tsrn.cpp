// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/model/tsrn.hpp"

#include "textsr/core/error.hpp"

namespace textsr::model {

template <typename T>
SequentialResidualBlock<T>::SequentialResidualBlock(int channels, int hidden, Rng& rng)
    : channels_(channels),
      conv1_(channels, channels, 3, 1, rng),
      bn1_(channels),
      conv2_(channels, channels, 3, 1, rng),
      bn2_(channels),
      proj_(channels, channels, 1, 0, rng),
      rec_h_(nn::Axis::horizontal, channels, hidden, rng),
      rec_v_(nn::Axis::vertical, 2 * hidden, hidden, rng) {
  if (channels != 2 * hidden)
    throw ConfigError("SRB: feature channels (" + std::to_string(channels) + ") must equal 2 * hidden units (" +
                      std::to_string(hidden) + ")");
}

template <typename T>
Tensor<T> SequentialResidualBlock<T>::forward(const Tensor<T>& x) {
  nn::require_shape(x, {-1, channels_, -1, -1}, "SRB input");
  Tensor<T> r = act_.forward(bn1_.forward(conv1_.forward(x)));
  r = proj_.forward(bn2_.forward(conv2_.forward(r)));
  r = rec_v_.forward(rec_h_.forward(r));
  r += x;
  return r;
}

template <typename T>
Tensor<T> SequentialResidualBlock<T>::backward(const Tensor<T>& dy) {
  Tensor<T> d = rec_h_.backward(rec_v_.backward(dy));
  d = conv2_.backward(bn2_.backward(proj_.backward(d)));
  d = conv1_.backward(bn1_.backward(act_.backward(d)));
  d += dy;
  return d;
}

template <typename T>
void SequentialResidualBlock<T>::collect(const std::string& prefix, nn::ParameterList<T>& out) {
  conv1_.collect(this->join(prefix, "conv1"), out);
  bn1_.collect(this->join(prefix, "bn1"), out);
  act_.collect(this->join(prefix, "prelu"), out);
  conv2_.collect(this->join(prefix, "conv2"), out);
  bn2_.collect(this->join(prefix, "bn2"), out);
  proj_.collect(this->join(prefix, "proj"), out);
  rec_h_.collect(this->join(prefix, "rnn_h"), out);
  rec_v_.collect(this->join(prefix, "rnn_v"), out);
}

template <typename T>
void SequentialResidualBlock<T>::set_training(bool training) {
  nn::Module<T>::set_training(training);
  bn1_.set_training(training);
  bn2_.set_training(training);
}

// ---------------------------------------------------------------- Tsrn

template <typename T>
Tsrn<T>::Tsrn(const ModelConfig& cfg, Rng& rng)
    : cfg_((cfg.validate(), cfg)),
      shallow_(cfg.input_channels(), cfg.feature_channels, 9, 4, rng),
      post_conv_(cfg.feature_channels, cfg.feature_channels, 3, 1, rng),
      post_bn_(cfg.feature_channels),
      up_conv_(cfg.feature_channels, cfg.feature_channels * cfg.scale * cfg.scale, 3, 1, rng),
      shuffle_(cfg.scale),
      head_(cfg.feature_channels, 3, 9, 4, rng) {
  if (cfg.use_alignment) align_.emplace(cfg.input_channels(), kLrHeight, kLrWidth, cfg.tps_points, rng);
  for (int i = 0; i < cfg.num_srb; ++i)
    blocks_.push_back(std::make_unique<SequentialResidualBlock<T>>(cfg.feature_channels, cfg.hidden_units, rng));
}

template <typename T>
Tensor<T> Tsrn<T>::forward(const Tensor<T>& x) {
  if (x.rank() != 4 || x.dim(1) != cfg_.input_channels())
    throw ShapeError("TSRN expects [B," + std::to_string(cfg_.input_channels()) + ",H,W] input, got " +
                     nn::shape_string(x.shape()));
  Tensor<T> h = align_ ? align_->forward(x) : x;
  const Tensor<T> shallow = shallow_act_.forward(shallow_.forward(h));
  h = shallow;
  for (auto& block : blocks_) h = block->forward(h);
  h = post_bn_.forward(post_conv_.forward(h));
  h += shallow;
  h = up_act_.forward(shuffle_.forward(up_conv_.forward(h)));
  return output_.forward(head_.forward(h));
}

template <typename T>
Tensor<T> Tsrn<T>::backward(const Tensor<T>& dy) {
  Tensor<T> d = head_.backward(output_.backward(dy));
  d = up_conv_.backward(shuffle_.backward(up_act_.backward(d)));
  const Tensor<T> d_shortcut = d;
  d = post_conv_.backward(post_bn_.backward(d));
  for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) d = (*it)->backward(d);
  d += d_shortcut;
  d = shallow_.backward(shallow_act_.backward(d));
  return align_ ? align_->backward(d) : d;
}

template <typename T>
std::size_t Tsrn<T>::parameter_count() {
  return this->parameters().parameter_count();
}

template <typename T>
void Tsrn<T>::collect(const std::string& prefix, nn::ParameterList<T>& out) {
  if (align_) align_->collect(this->join(prefix, "align"), out);
  shallow_.collect(this->join(prefix, "shallow.conv"), out);
  shallow_act_.collect(this->join(prefix, "shallow.prelu"), out);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i]->collect(this->join(prefix, "srb" + std::to_string(i)), out);
  post_conv_.collect(this->join(prefix, "post.conv"), out);
  post_bn_.collect(this->join(prefix, "post.bn"), out);
  up_conv_.collect(this->join(prefix, "up.conv"), out);
  up_act_.collect(this->join(prefix, "up.prelu"), out);
  head_.collect(this->join(prefix, "head.conv"), out);
}

template <typename T>
void Tsrn<T>::set_training(bool training) {
  nn::Module<T>::set_training(training);
  if (align_) align_->set_training(training);
  for (auto& b : blocks_) b->set_training(training);
  post_bn_.set_training(training);
}

template class SequentialResidualBlock<float>;
template class SequentialResidualBlock<double>;
template class Tsrn<float>;
template class Tsrn<double>;

}  // namespace textsr::model

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/data/batch.hpp"

#include <algorithm>

#include "textsr/core/error.hpp"
#include "textsr/core/rng.hpp"
#include "textsr/data/transforms.hpp"

namespace textsr::data {

nn::Tensor<float> stack_images(const std::vector<Image>& images) {
  if (images.empty()) throw ShapeError("cannot stack zero images");
  const Image& first = images.front();
  nn::Tensor<float> t({static_cast<int>(images.size()), first.channels(), first.height(), first.width()});
  float* dst = t.data();
  for (const Image& img : images) {
    if (!img.same_shape(first)) throw ShapeError("stack_images: images differ in shape");
    dst = std::copy(img.values().begin(), img.values().end(), dst);
  }
  return t;
}

Image unstack_image(const nn::Tensor<float>& t, int n) {
  nn::require_shape(t, {-1, -1, -1, -1}, "unstack_image");
  const int c = t.dim(1), h = t.dim(2), w = t.dim(3);
  const std::size_t count = static_cast<std::size_t>(c) * h * w;
  const float* src = t.data() + count * n;
  return Image(c, h, w, std::vector<float>(src, src + count));
}

Image model_input(const Image& lr_rgb, bool use_mask) {
  return use_mask ? concat_channels(lr_rgb, make_binary_mask(lr_rgb)) : lr_rgb;
}

namespace {
constexpr std::uint64_t kShuffleStream = 1ULL << 62;
constexpr std::uint64_t kAugmentStream = 2ULL << 62;
}  // namespace

BatchIterator::BatchIterator(const std::vector<TextPairRecord>& records, BatchOptions options)
    : records_(&records), opt_(std::move(options)) {
  if (opt_.batch_size <= 0) throw ConfigError("batch size must be positive");
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!opt_.subset || records[i].subset == *opt_.subset) selected_.push_back(i);
  start_epoch(0);
}

std::size_t BatchIterator::num_batches() const {
  const auto b = static_cast<std::size_t>(opt_.batch_size);
  return (order_.size() + b - 1) / b;
}

void BatchIterator::start_epoch(int epoch) {
  epoch_ = epoch;
  cursor_ = 0;
  order_ = selected_;
  if (opt_.shuffle) {
    Rng rng = make_rng(opt_.seed, kShuffleStream | static_cast<std::uint64_t>(epoch));
    std::shuffle(order_.begin(), order_.end(), rng);
  }
}

bool BatchIterator::next(Batch& out) {
  if (cursor_ >= order_.size()) return false;
  const std::size_t end = std::min(order_.size(), cursor_ + static_cast<std::size_t>(opt_.batch_size));
  std::vector<Image> lrs, hrs;
  out.texts.clear();
  out.subsets.clear();
  out.ids.clear();
  for (std::size_t k = cursor_; k < end; ++k) {
    const std::size_t id = order_[k];
    const TextPairRecord& rec = (*records_)[id];
    Image lr = opt_.synthetic_lr ? make_synthetic_lr(rec.hr) : rec.lr;
    if (opt_.misalign) {
      Rng rng = make_rng(opt_.seed, kAugmentStream | (static_cast<std::uint64_t>(epoch_) << 32) | id);
      lr = misalign_augment(lr, rng);
    }
    lrs.push_back(model_input(lr, opt_.use_mask));
    hrs.push_back(rec.hr);
    out.texts.push_back(rec.text);
    out.subsets.push_back(rec.subset);
    out.ids.push_back(id);
  }
  out.lr = stack_images(lrs);
  out.hr = stack_images(hrs);
  cursor_ = end;
  return true;
}

}  // namespace textsr::data

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "textsr/core/record.hpp"
#include "textsr/nn/tensor.hpp"

namespace textsr::data {

/// Stacks same-shaped images into an NCHW tensor.
nn::Tensor<float> stack_images(const std::vector<Image>& images);

/// Image `n` of an NCHW tensor.
Image unstack_image(const nn::Tensor<float>& t, int n);

/// RGB, or RGB plus the binary mask channel.
Image model_input(const Image& lr_rgb, bool use_mask);

struct BatchOptions {
  int batch_size = 16;
  bool shuffle = true;
  std::uint64_t seed = 0;
  bool use_mask = true;
  bool misalign = false;
  /// Replace each LR with a bicubic downsample of its HR.
  bool synthetic_lr = false;
  std::optional<Subset> subset = std::nullopt;
};

struct Batch {
  nn::Tensor<float> lr;  // B x (3|4) x 16 x 64
  nn::Tensor<float> hr;  // B x 3 x 32 x 128
  std::vector<std::string> texts;
  std::vector<Subset> subsets;
  std::vector<std::size_t> ids;  // positions in the record list

  int size() const { return static_cast<int>(ids.size()); }
};

/// Walks a record list in batches. The sequence depends only on the seed,
/// epoch and batch size; augmentation draws are keyed per (epoch, record).
class BatchIterator {
 public:
  BatchIterator(const std::vector<TextPairRecord>& records, BatchOptions options);

  void start_epoch(int epoch);
  bool next(Batch& out);

  std::size_t num_samples() const { return order_.size(); }
  std::size_t num_batches() const;
  int epoch() const { return epoch_; }

 private:
  const std::vector<TextPairRecord>* records_;
  BatchOptions opt_;
  std::vector<std::size_t> selected_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
  int epoch_ = 0;
};

}  // namespace textsr::data

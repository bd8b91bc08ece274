// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>

#include "textsr/core/config.hpp"
#include "textsr/model/tsrn.hpp"
#include "textsr/train/optimizer.hpp"

namespace textsr::train {

/// Where a run stood when the checkpoint was written.
struct CheckpointInfo {
  ModelConfig model;
  TrainConfig train;
  int epoch = 0;          // epoch in progress
  long batch_in_epoch = 0;  // batches of that epoch already consumed
  long step = 0;          // optimizer steps taken
};

/// Binary layout: the 8 bytes "TSRNCKPT", a little-endian u32 format version,
/// a u64 header length, a JSON header (configs, progress, tensor table), then
/// float32 tensor data. Written to a temporary file and renamed into place.
void save_checkpoint(const std::filesystem::path& path, model::Tsrn<float>& net, const CheckpointInfo& info,
                     Adam* optimizer = nullptr);

CheckpointInfo read_checkpoint_info(const std::filesystem::path& path);

/// Restores weights, batch-norm statistics and, if given, optimizer state.
/// Throws ConfigError when the stored model configuration differs from the
/// network's and DataError on a malformed file.
CheckpointInfo load_checkpoint(const std::filesystem::path& path, model::Tsrn<float>& net, Adam* optimizer = nullptr);

/// Builds a network from the stored configuration and loads its weights.
std::unique_ptr<model::Tsrn<float>> load_model(const std::filesystem::path& path);

}  // namespace textsr::train

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

namespace textsr {

/// Architectural knobs of the super-resolution network.
struct ModelConfig {
  int num_srb = 5;
  int hidden_units = 32;
  int feature_channels = 64;
  bool use_mask = true;
  bool use_alignment = true;
  int scale = 2;
  int tps_points = 20;

  int input_channels() const { return use_mask ? 4 : 3; }

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Optimisation and data-pipeline settings for a training run.
struct TrainConfig {
  double weight_pixel_loss = 1.0;
  double weight_gp_loss = 1e-4;
  int epochs = 500;
  double optimizer_momentum = 0.9;
  double learning_rate = 1e-4;
  int batch_size = 16;
  std::uint64_t seed = 0;
  // Extensions for desk-scale runs; 0 / false keep the defaults above in charge.
  int max_steps = 0;
  bool misalign_augment = false;
  bool synthetic_lr = false;

  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Reads a flat `key = value` file. Keys of both structs are accepted; anything
/// else is rejected with the key name. Blank lines and `#` comments are ignored.
std::pair<ModelConfig, TrainConfig> load_config(const std::filesystem::path& path);
std::pair<ModelConfig, TrainConfig> parse_config(const std::string& text);

/// Same format, restricted to one struct's keys.
ModelConfig load_model_config(const std::filesystem::path& path);
TrainConfig load_train_config(const std::filesystem::path& path);

std::string serialize(const ModelConfig& cfg);
std::string serialize(const TrainConfig& cfg);

}  // namespace textsr

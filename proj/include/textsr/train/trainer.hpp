// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "textsr/core/config.hpp"
#include "textsr/core/record.hpp"
#include "textsr/data/batch.hpp"
#include "textsr/losses/losses.hpp"
#include "textsr/model/tsrn.hpp"
#include "textsr/train/optimizer.hpp"

namespace textsr::train {

struct TrainerOptions {
  /// Receives checkpoint.tsrn and loss_log.jsonl. Empty keeps everything in memory.
  std::filesystem::path out_dir = {};
  /// Continue from out_dir/checkpoint.tsrn when it exists.
  bool resume = true;
  int log_every = 50;
};

struct StepRecord {
  long step = 0;
  int epoch = 0;
  losses::LossParts loss;
};

/// Minimises the weighted pixel + gradient-profile loss with Adam. The run is
/// a pure function of the configs and records: model weights, batch order
/// and augmentation all derive from the train seed.
class Trainer {
 public:
  Trainer(const ModelConfig& model_cfg, const TrainConfig& train_cfg, const std::vector<TextPairRecord>& records,
          TrainerOptions options = {});

  /// One forward/backward/update on `batch`. Throws NumericalError when the
  /// loss or any gradient is not finite.
  losses::LossParts step(const data::Batch& batch);

  /// Trains until `epochs` passes or `max_steps` optimizer steps, whichever
  /// comes first, checkpointing after every epoch and at the end.
  std::vector<StepRecord> run();

  void resume_from(const std::filesystem::path& checkpoint);
  void save(const std::filesystem::path& checkpoint);

  model::Tsrn<float>& model() { return *net_; }
  Adam& optimizer() { return *adam_; }
  data::BatchOptions batch_options() const;
  long steps_taken() const { return step_; }
  std::filesystem::path checkpoint_path() const { return opt_.out_dir / "checkpoint.tsrn"; }
  std::filesystem::path loss_log_path() const { return opt_.out_dir / "loss_log.jsonl"; }

 private:
  ModelConfig model_cfg_;
  TrainConfig train_cfg_;
  const std::vector<TextPairRecord>* records_;
  TrainerOptions opt_;
  std::unique_ptr<model::Tsrn<float>> net_;
  std::unique_ptr<Adam> adam_;
  int epoch_ = 0;
  long batch_in_epoch_ = 0;
  long step_ = 0;
};

/// A named model variant for ablation runs.
struct Preset {
  std::string name;
  ModelConfig model;
  bool synthetic_lr = false;
};

/// The default model, hidden units 16/32/64/128, 4 to 7 blocks, mask on/off,
/// alignment on/off, and training on synthetic LR.
std::vector<Preset> ablation_presets();

}  // namespace textsr::train

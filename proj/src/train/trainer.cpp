// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/train/trainer.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "textsr/core/error.hpp"
#include "textsr/core/rng.hpp"
#include "textsr/train/checkpoint.hpp"

namespace textsr::train {
namespace {

constexpr std::uint64_t kModelInitStream = 1;

std::string id_list(const std::vector<std::size_t>& ids) {
  std::string s;
  for (std::size_t id : ids) s += (s.empty() ? "" : ",") + std::to_string(id);
  return s;
}

bool all_finite(const nn::Tensor<float>& t) {
  for (float v : t.values())
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Trainer::Trainer(const ModelConfig& model_cfg, const TrainConfig& train_cfg,
                 const std::vector<TextPairRecord>& records, TrainerOptions options)
    : model_cfg_(model_cfg), train_cfg_(train_cfg), records_(&records), opt_(std::move(options)) {
  model_cfg_.validate();
  train_cfg_.validate();
  if (records.empty()) throw DataError("training set is empty");
  Rng rng = make_rng(train_cfg_.seed, kModelInitStream);
  net_ = std::make_unique<model::Tsrn<float>>(model_cfg_, rng);
  adam_ = std::make_unique<Adam>(net_->parameters(),
                                 AdamOptions{.learning_rate = train_cfg_.learning_rate, .beta1 = train_cfg_.optimizer_momentum});
}

data::BatchOptions Trainer::batch_options() const {
  return {.batch_size = train_cfg_.batch_size,
          .shuffle = true,
          .seed = train_cfg_.seed,
          .use_mask = model_cfg_.use_mask,
          .misalign = train_cfg_.misalign_augment,
          .synthetic_lr = train_cfg_.synthetic_lr};
}

losses::LossParts Trainer::step(const data::Batch& batch) {
  net_->set_training(true);
  adam_->zero_grad();
  const auto sr = net_->forward(batch.lr);
  nn::Tensor<float> grad;
  const auto parts = losses::total_loss(sr, batch.hr, train_cfg_, &grad);
  if (!std::isfinite(parts.total) || !all_finite(grad))
    throw NumericalError("non-finite loss at step " + std::to_string(step_ + 1) + " (epoch " + std::to_string(epoch_) +
                         "), batch ids [" + id_list(batch.ids) + "]");
  net_->backward(grad);
  for (const auto& [name, p] : net_->parameters().params)
    if (!all_finite(p->grad))
      throw NumericalError("non-finite gradient for " + name + " at step " + std::to_string(step_ + 1) +
                           ", batch ids [" + id_list(batch.ids) + "]");
  adam_->step();
  ++step_;
  return parts;
}

void Trainer::save(const std::filesystem::path& checkpoint) {
  save_checkpoint(checkpoint, *net_, {model_cfg_, train_cfg_, epoch_, batch_in_epoch_, step_}, adam_.get());
}

void Trainer::resume_from(const std::filesystem::path& checkpoint) {
  const CheckpointInfo info = load_checkpoint(checkpoint, *net_, adam_.get());
  epoch_ = info.epoch;
  batch_in_epoch_ = info.batch_in_epoch;
  step_ = info.step;
  spdlog::info("resumed from {} at step {} (epoch {}, batch {})", checkpoint.string(), step_, epoch_, batch_in_epoch_);
}

std::vector<StepRecord> Trainer::run() {
  const bool persist = !opt_.out_dir.empty();
  if (persist) {
    std::filesystem::create_directories(opt_.out_dir);
    if (opt_.resume && std::filesystem::exists(checkpoint_path())) resume_from(checkpoint_path());
  }
  std::ofstream log;
  if (persist) {
    log.open(loss_log_path(), step_ > 0 ? std::ios::app : std::ios::trunc);
    if (!log) throw DataError("cannot write " + loss_log_path().string());
  }

  auto budget_left = [&] { return train_cfg_.max_steps <= 0 || step_ < train_cfg_.max_steps; };
  std::vector<StepRecord> history;
  data::BatchIterator it(*records_, batch_options());
  data::Batch batch;
  while (epoch_ < train_cfg_.epochs && budget_left()) {
    it.start_epoch(epoch_);
    for (long skip = 0; skip < batch_in_epoch_ && it.next(batch); ++skip) {
    }
    while (budget_left() && it.next(batch)) {
      const auto parts = step(batch);
      ++batch_in_epoch_;
      history.push_back({step_, epoch_, parts});
      if (persist) {
        log << nlohmann::json{{"step", step_}, {"epoch", epoch_}, {"pixel", parts.pixel}, {"gp", parts.gp}, {"total", parts.total}}.dump()
            << '\n';
        log.flush();
      }
      if (opt_.log_every > 0 && step_ % opt_.log_every == 0)
        spdlog::info("step {} epoch {} pixel {:.6g} gp {:.6g} total {:.6g}", step_, epoch_, parts.pixel, parts.gp,
                     parts.total);
    }
    if (batch_in_epoch_ >= static_cast<long>(it.num_batches())) {
      ++epoch_;
      batch_in_epoch_ = 0;
    }
    if (persist) save(checkpoint_path());
  }
  return history;
}

std::vector<Preset> ablation_presets() {
  auto with_hidden = [](int h) {
    ModelConfig m;
    m.hidden_units = h;
    m.feature_channels = 2 * h;
    return m;
  };
  std::vector<Preset> out;
  out.push_back({"default", ModelConfig{}});
  for (int h : {16, 32, 64, 128}) out.push_back({"hidden" + std::to_string(h), with_hidden(h)});
  for (int n : {4, 5, 6, 7}) {
    ModelConfig m;
    m.num_srb = n;
    out.push_back({"srb" + std::to_string(n), m});
  }
  for (bool on : {true, false}) {
    ModelConfig m;
    m.use_mask = on;
    out.push_back({on ? "mask_on" : "mask_off", m});
  }
  for (bool on : {true, false}) {
    ModelConfig m;
    m.use_alignment = on;
    out.push_back({on ? "align_on" : "align_off", m});
  }
  out.push_back({"synthetic_lr", ModelConfig{}, true});
  return out;
}

}  // namespace textsr::train

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "textsr/core/record.hpp"
#include "textsr/eval/accuracy.hpp"
#include "textsr/model/tsrn.hpp"

namespace textsr::eval {

/// Maps 3x16x64 LR crops to 3x32x128.
class SuperResolver {
 public:
  virtual ~SuperResolver() = default;
  virtual std::vector<Image> upscale(const std::vector<Image>& lr) = 0;
};

class BicubicResolver final : public SuperResolver {
 public:
  std::vector<Image> upscale(const std::vector<Image>& lr) override;
};

/// Runs a network in inference mode, appending the mask channel if its
/// configuration asks for one.
class ModelResolver final : public SuperResolver {
 public:
  explicit ModelResolver(model::Tsrn<float>& net, int batch_size = 16) : net_(net), batch_size_(batch_size) {}
  std::vector<Image> upscale(const std::vector<Image>& lr) override;

 private:
  model::Tsrn<float>& net_;
  int batch_size_;
};

/// Accuracy under three inputs: bicubic upscaled LR, super-resolved LR, and
/// the HR ground truth. The improvement row is sr_output - bicubic_lr.
struct ConditionTable {
  std::map<std::string, AccuracyResult> rows;  // bicubic_lr, sr_output, hr

  double improvement(Subset s) const;
  double improvement_average() const;
  std::string to_text() const;
  std::string to_json() const;
};

ConditionTable compare_conditions(SuperResolver& model, const std::vector<TextPairRecord>& records,
                                  Recognizer& recognizer);

}  // namespace textsr::eval

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/eval/compare.hpp"

#include <cstdio>
#include <json.hpp>
#include <optional>
#include <stdexcept>

#include "textsr/data/batch.hpp"
#include "textsr/data/transforms.hpp"

namespace textsr::eval {
namespace {

constexpr const char* kRows[] = {"bicubic_lr", "sr_output", "hr"};

double subset_accuracy(const AccuracyResult& r, Subset s) {
  const auto it = r.per_subset.find(s);
  return it == r.per_subset.end() ? 0.0 : it->second.accuracy();
}

}  // namespace

std::vector<Image> BicubicResolver::upscale(const std::vector<Image>& lr) {
  std::vector<Image> out;
  out.reserve(lr.size());
  for (const Image& img : lr) out.push_back(data::resize_bicubic(img, 2 * img.height(), 2 * img.width()));
  return out;
}

std::vector<Image> ModelResolver::upscale(const std::vector<Image>& lr) {
  net_.set_training(false);
  std::vector<Image> out;
  out.reserve(lr.size());
  for (std::size_t start = 0; start < lr.size(); start += batch_size_) {
    const std::size_t end = std::min(lr.size(), start + static_cast<std::size_t>(batch_size_));
    std::vector<Image> inputs;
    for (std::size_t i = start; i < end; ++i) inputs.push_back(data::model_input(lr[i], net_.config().use_mask));
    const auto y = net_.forward(data::stack_images(inputs));
    for (int n = 0; n < y.dim(0); ++n) out.push_back(data::unstack_image(y, n));
  }
  return out;
}

double ConditionTable::improvement(Subset s) const {
  return subset_accuracy(rows.at("sr_output"), s) - subset_accuracy(rows.at("bicubic_lr"), s);
}

double ConditionTable::improvement_average() const {
  return rows.at("sr_output").overall().accuracy() - rows.at("bicubic_lr").overall().accuracy();
}

std::string ConditionTable::to_text() const {
  const auto& subsets = rows.at("hr").per_subset;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%-12s", "condition");
  std::string out = buf;
  for (const auto& [s, acc] : subsets) {
    std::snprintf(buf, sizeof(buf), "%10s", std::string(to_string(s)).c_str());
    out += buf;
  }
  out += "   average\n";
  auto line = [&](const char* name, auto value, const char* fmt) {
    std::snprintf(buf, sizeof(buf), "%-12s", name);
    out += buf;
    for (const auto& [s, acc] : subsets) {
      std::snprintf(buf, sizeof(buf), fmt, 100.0 * value(s));
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), fmt, 100.0 * value(std::nullopt));
    out += buf;
    out += '\n';
  };
  for (const char* name : kRows) {
    const auto& r = rows.at(name);
    line(name, [&](std::optional<Subset> s) { return s ? subset_accuracy(r, *s) : r.overall().accuracy(); }, "%9.2f%%");
  }
  line("improvement", [&](std::optional<Subset> s) { return s ? improvement(*s) : improvement_average(); }, "%+9.2f%%");
  return out;
}

std::string ConditionTable::to_json() const {
  nlohmann::json j;
  for (const char* name : kRows) {
    const auto& r = rows.at(name);
    nlohmann::json row;
    for (const auto& [s, acc] : r.per_subset)
      row[std::string(to_string(s))] = {{"correct", acc.correct}, {"total", acc.total}, {"accuracy", acc.accuracy()}};
    row["average"] = r.overall().accuracy();
    j[name] = row;
  }
  nlohmann::json imp;
  for (const auto& [s, acc] : rows.at("hr").per_subset) imp[std::string(to_string(s))] = improvement(s);
  imp["average"] = improvement_average();
  j["improvement"] = imp;
  return j.dump(2);
}

ConditionTable compare_conditions(SuperResolver& model, const std::vector<TextPairRecord>& records,
                                  Recognizer& recognizer) {
  if (records.empty()) throw std::invalid_argument("compare_conditions needs at least one record");
  std::vector<Image> lrs;
  for (const auto& r : records) lrs.push_back(r.lr);
  BicubicResolver bicubic;
  const std::vector<Image> conditions[] = {bicubic.upscale(lrs), model.upscale(lrs), {}};

  ConditionTable table;
  for (int k = 0; k < 3; ++k) {
    std::vector<EvalSample> samples;
    for (std::size_t i = 0; i < records.size(); ++i)
      samples.push_back({k == 2 ? records[i].hr : conditions[k][i], records[i].text, records[i].subset});
    table.rows[kRows[k]] = accuracy(recognizer, samples);
  }
  return table;
}

}  // namespace textsr::eval

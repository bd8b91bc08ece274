// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/core/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "textsr/core/error.hpp"

namespace textsr {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("cannot parse value '" + value + "' for key '" + key + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw ConfigError("cannot parse boolean '" + value + "' for key '" + key + "'");
}

template <typename T>
std::string format_number(T v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;

std::map<std::string, Setter> model_setters(ModelConfig& m) {
  return {
      {"num_srb", [&m](auto& k, auto& v) { m.num_srb = parse_number<int>(k, v); }},
      {"hidden_units", [&m](auto& k, auto& v) { m.hidden_units = parse_number<int>(k, v); }},
      {"feature_channels", [&m](auto& k, auto& v) { m.feature_channels = parse_number<int>(k, v); }},
      {"use_mask", [&m](auto& k, auto& v) { m.use_mask = parse_bool(k, v); }},
      {"use_alignment", [&m](auto& k, auto& v) { m.use_alignment = parse_bool(k, v); }},
      {"scale", [&m](auto& k, auto& v) { m.scale = parse_number<int>(k, v); }},
      {"tps_points", [&m](auto& k, auto& v) { m.tps_points = parse_number<int>(k, v); }},
  };
}

std::map<std::string, Setter> train_setters(TrainConfig& t) {
  return {
      {"weight_pixel_loss", [&t](auto& k, auto& v) { t.weight_pixel_loss = parse_number<double>(k, v); }},
      {"weight_gp_loss", [&t](auto& k, auto& v) { t.weight_gp_loss = parse_number<double>(k, v); }},
      {"epochs", [&t](auto& k, auto& v) { t.epochs = parse_number<int>(k, v); }},
      {"optimizer_momentum", [&t](auto& k, auto& v) { t.optimizer_momentum = parse_number<double>(k, v); }},
      {"learning_rate", [&t](auto& k, auto& v) { t.learning_rate = parse_number<double>(k, v); }},
      {"batch_size", [&t](auto& k, auto& v) { t.batch_size = parse_number<int>(k, v); }},
      {"seed", [&t](auto& k, auto& v) { t.seed = parse_number<std::uint64_t>(k, v); }},
      {"max_steps", [&t](auto& k, auto& v) { t.max_steps = parse_number<int>(k, v); }},
      {"misalign_augment", [&t](auto& k, auto& v) { t.misalign_augment = parse_bool(k, v); }},
      {"synthetic_lr", [&t](auto& k, auto& v) { t.synthetic_lr = parse_bool(k, v); }},
  };
}

// Splits on newlines and commas, strips comments, applies each `key = value`.
void apply_settings(const std::string& text, const std::map<std::string, Setter>& setters) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream items(line);
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + item + "'");
      const std::string key = trim(std::string_view(item).substr(0, eq));
      const std::string value = trim(std::string_view(item).substr(eq + 1));
      auto it = setters.find(key);
      if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
      it->second(key, value);
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void ModelConfig::validate() const {
  auto require = [](bool ok, const char* field, const std::string& why) {
    if (!ok) throw ConfigError(std::string(field) + ": " + why);
  };
  require(num_srb > 0, "num_srb", "must be positive");
  require(hidden_units > 0, "hidden_units", "must be positive");
  require(feature_channels > 0, "feature_channels", "must be positive");
  require(feature_channels == 2 * hidden_units, "feature_channels",
          "must equal 2 * hidden_units so the bidirectional recurrence output matches the feature map");
  require(scale == 2, "scale", "only x2 is supported");
  require(tps_points >= 4 && tps_points % 2 == 0, "tps_points", "must be an even number >= 4");
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* field, const std::string& why) {
    if (!ok) throw ConfigError(std::string(field) + ": " + why);
  };
  require(weight_pixel_loss >= 0.0, "weight_pixel_loss", "must be >= 0");
  require(weight_gp_loss >= 0.0, "weight_gp_loss", "must be >= 0");
  require(epochs > 0, "epochs", "must be positive");
  require(optimizer_momentum >= 0.0 && optimizer_momentum < 1.0, "optimizer_momentum", "must be in [0, 1)");
  require(learning_rate > 0.0, "learning_rate", "must be > 0");
  require(batch_size > 0, "batch_size", "must be positive");
  require(max_steps >= 0, "max_steps", "must be >= 0");
}

std::pair<ModelConfig, TrainConfig> parse_config(const std::string& text) {
  ModelConfig model;
  TrainConfig train;
  auto setters = model_setters(model);
  setters.merge(train_setters(train));
  apply_settings(text, setters);
  model.validate();
  train.validate();
  return {model, train};
}

std::pair<ModelConfig, TrainConfig> load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path));
}

ModelConfig load_model_config(const std::filesystem::path& path) {
  ModelConfig model;
  apply_settings(read_file(path), model_setters(model));
  model.validate();
  return model;
}

TrainConfig load_train_config(const std::filesystem::path& path) {
  TrainConfig train;
  apply_settings(read_file(path), train_setters(train));
  train.validate();
  return train;
}

std::string serialize(const ModelConfig& cfg) {
  std::ostringstream out;
  out << "num_srb = " << cfg.num_srb << "\n"
      << "hidden_units = " << cfg.hidden_units << "\n"
      << "feature_channels = " << cfg.feature_channels << "\n"
      << "use_mask = " << (cfg.use_mask ? "true" : "false") << "\n"
      << "use_alignment = " << (cfg.use_alignment ? "true" : "false") << "\n"
      << "scale = " << cfg.scale << "\n"
      << "tps_points = " << cfg.tps_points << "\n";
  return out.str();
}

std::string serialize(const TrainConfig& cfg) {
  std::ostringstream out;
  out << "weight_pixel_loss = " << format_number(cfg.weight_pixel_loss) << "\n"
      << "weight_gp_loss = " << format_number(cfg.weight_gp_loss) << "\n"
      << "epochs = " << cfg.epochs << "\n"
      << "optimizer_momentum = " << format_number(cfg.optimizer_momentum) << "\n"
      << "learning_rate = " << format_number(cfg.learning_rate) << "\n"
      << "batch_size = " << cfg.batch_size << "\n"
      << "seed = " << cfg.seed << "\n"
      << "max_steps = " << cfg.max_steps << "\n"
      << "misalign_augment = " << (cfg.misalign_augment ? "true" : "false") << "\n"
      << "synthetic_lr = " << (cfg.synthetic_lr ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace textsr

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/train/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <map>

#include "textsr/core/error.hpp"
#include "textsr/core/rng.hpp"

namespace textsr::train {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = {'T', 'S', 'R', 'N', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

using nlohmann::json;
using NamedTensors = std::vector<std::pair<std::string, nn::Tensor<float>*>>;

NamedTensors gather(model::Tsrn<float>& net, Adam* optimizer) {
  NamedTensors out;
  auto params = net.parameters();
  for (auto& [name, p] : params.params) out.emplace_back("param." + name, &p->value);
  for (auto& [name, b] : params.buffers) out.emplace_back("buffer." + name, b);
  if (optimizer)
    for (auto& entry : optimizer->state()) out.push_back(entry);
  return out;
}

struct Parsed {
  CheckpointInfo info;
  json tensors;
  std::vector<char> payload;
};

Parsed parse(const std::filesystem::path& path, bool with_payload) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  char magic[8];
  std::uint32_t version = 0;
  std::uint64_t header_len = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
  if (!in || std::memcmp(magic, kMagic, 8) != 0) throw DataError(path.string() + " is not a checkpoint");
  if (version != kVersion) throw DataError(path.string() + ": unsupported checkpoint version " + std::to_string(version));
  if (header_len > (1u << 30)) throw DataError(path.string() + ": corrupt header");
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw DataError(path.string() + ": truncated header");

  Parsed p;
  try {
    const json h = json::parse(header);
    p.info.model = parse_config(h.at("model_config").get<std::string>()).first;
    p.info.train = parse_config(h.at("train_config").get<std::string>()).second;
    p.info.epoch = h.at("epoch").get<int>();
    p.info.batch_in_epoch = h.at("batch_in_epoch").get<long>();
    p.info.step = h.at("step").get<long>();
    p.tensors = h.at("tensors");
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": bad checkpoint header: " + e.what());
  }
  if (with_payload) {
    p.payload.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return p;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, model::Tsrn<float>& net, const CheckpointInfo& info,
                     Adam* optimizer) {
  const NamedTensors tensors = gather(net, optimizer);
  json table = json::array();
  std::uint64_t offset = 0;
  for (const auto& [name, t] : tensors) {
    table.push_back({{"name", name}, {"shape", t->shape()}, {"offset", offset}});
    offset += t->size() * sizeof(float);
  }
  const json header = {{"model_config", serialize(net.config())},
                       {"train_config", serialize(info.train)},
                       {"epoch", info.epoch},
                       {"batch_in_epoch", info.batch_in_epoch},
                       {"step", info.step},
                       {"tensors", table}};
  const std::string text = header.dump();

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write checkpoint " + tmp.string());
    const std::uint64_t len = text.size();
    out.write(kMagic, 8);
    out.write(reinterpret_cast<const char*>(&kVersion), sizeof(kVersion));
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(text.data(), static_cast<std::streamsize>(len));
    for (const auto& [name, t] : tensors)
      out.write(reinterpret_cast<const char*>(t->data()), static_cast<std::streamsize>(t->size() * sizeof(float)));
    if (!out) throw DataError("failed writing checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CheckpointInfo read_checkpoint_info(const std::filesystem::path& path) { return parse(path, false).info; }

CheckpointInfo load_checkpoint(const std::filesystem::path& path, model::Tsrn<float>& net, Adam* optimizer) {
  Parsed p = parse(path, true);
  if (!(p.info.model == net.config()))
    throw ConfigError(path.string() + ": checkpoint model configuration differs from the requested one:\n" +
                      serialize(p.info.model) + "vs\n" + serialize(net.config()));

  std::map<std::string, std::pair<nn::Shape, std::uint64_t>> table;
  for (const auto& t : p.tensors) table[t.at("name").get<std::string>()] = {t.at("shape").get<nn::Shape>(), t.at("offset").get<std::uint64_t>()};

  for (const auto& [name, tensor] : gather(net, optimizer)) {
    const auto it = table.find(name);
    if (it == table.end()) throw DataError(path.string() + ": missing tensor " + name);
    const auto& [shape, offset] = it->second;
    if (shape != tensor->shape())
      throw DataError(path.string() + ": tensor " + name + " has shape " + nn::shape_string(shape) + ", expected " +
                      nn::shape_string(tensor->shape()));
    const std::size_t bytes = tensor->size() * sizeof(float);
    if (offset + bytes > p.payload.size()) throw DataError(path.string() + ": truncated tensor data for " + name);
    std::memcpy(tensor->data(), p.payload.data() + offset, bytes);
  }
  if (optimizer) optimizer->set_step_count(p.info.step);
  return p.info;
}

std::unique_ptr<model::Tsrn<float>> load_model(const std::filesystem::path& path) {
  const CheckpointInfo info = read_checkpoint_info(path);
  Rng rng = make_rng(0);
  auto net = std::make_unique<model::Tsrn<float>>(info.model, rng);
  load_checkpoint(path, *net, nullptr);
  net->set_training(false);
  return net;
}

}  // namespace textsr::train

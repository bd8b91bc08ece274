// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/data/manifest.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <json.hpp>

#include "textsr/core/error.hpp"
#include "textsr/data/image_io.hpp"
#include "textsr/data/transforms.hpp"

namespace textsr::data {
namespace fs = std::filesystem;
using nlohmann::json;

std::map<Subset, std::size_t> DatasetManifest::subset_counts() const {
  std::map<Subset, std::size_t> counts;
  for (const auto& r : records) ++counts[r.subset];
  return counts;
}

namespace {

ManifestRow parse_row(const json& j) {
  ManifestRow r;
  r.lr_path = j.at("lr_path").get<std::string>();
  r.hr_path = j.at("hr_path").get<std::string>();
  r.text = j.at("text").get<std::string>();
  r.source = parse_source(j.at("source").get<std::string>());
  r.focal_lr_mm = j.at("focal_lr_mm").get<double>();
  r.focal_hr_mm = j.at("focal_hr_mm").get<double>();
  r.direction = parse_direction(j.at("direction").get<std::string>());
  r.subset = parse_subset(j.at("subset").get<std::string>());
  return r;
}

}  // namespace

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  DatasetManifest m;
  m.root = path.parent_path();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    ManifestRow row;
    try {
      row = parse_row(json::parse(line));
    } catch (const json::exception& e) {
      throw DataError(where + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    for (const auto* p : {&row.lr_path, &row.hr_path})
      if (!fs::exists(m.root / *p)) throw DataError(where + ": missing file " + (m.root / *p).string());
    m.records.push_back(std::move(row));
  }
  for (const auto& [subset, n] : m.subset_counts()) spdlog::info("manifest {}: {} {} rows", path.string(), n, to_string(subset));
  return m;
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest " + path.string());
  for (const auto& r : manifest.records) {
    json j = {{"lr_path", r.lr_path},
              {"hr_path", r.hr_path},
              {"text", r.text},
              {"source", to_string(r.source)},
              {"focal_lr_mm", r.focal_lr_mm},
              {"focal_hr_mm", r.focal_hr_mm},
              {"direction", to_string(r.direction)},
              {"subset", to_string(r.subset)}};
    out << j.dump() << '\n';
  }
}

TextPairRecord load_record(const DatasetManifest& manifest, std::size_t index) {
  const ManifestRow& row = manifest.records.at(index);
  TextPairRecord rec;
  try {
    Image lr = read_rgb(manifest.root / row.lr_path);
    Image hr = read_rgb(manifest.root / row.hr_path);
    if (lr.height() != 16 || lr.width() != 64 || hr.height() != 32 || hr.width() != 128)
      std::tie(lr, hr) = normalize_pair(lr, hr);
    rec.lr = std::move(lr);
    rec.hr = std::move(hr);
    rec.text = row.text;
    rec.subset = row.subset;
    rec.source = row.source;
    rec.focal_lr_mm = row.focal_lr_mm;
    rec.focal_hr_mm = row.focal_hr_mm;
    rec.direction = row.direction;
    rec.validate();
  } catch (const DataError& e) {
    throw DataError("manifest row " + std::to_string(index + 1) + " (" + row.lr_path + "): " + e.what());
  }
  return rec;
}

std::vector<TextPairRecord> load_records(const DatasetManifest& manifest, std::optional<Subset> subset) {
  std::vector<TextPairRecord> out;
  for (std::size_t i = 0; i < manifest.records.size(); ++i)
    if (!subset || manifest.records[i].subset == *subset) out.push_back(load_record(manifest, i));
  return out;
}

}  // namespace textsr::data

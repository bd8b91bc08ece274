// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "textsr/core/record.hpp"

namespace textsr::data {

/// One line of a manifest. Paths are relative to the manifest root.
struct ManifestRow {
  std::string lr_path;
  std::string hr_path;
  std::string text;
  Source source = Source::synthetic;
  double focal_lr_mm = 1.0;
  double focal_hr_mm = 1.0;
  Direction direction = Direction::horizontal;
  Subset subset = Subset::train;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

struct DatasetManifest {
  std::vector<ManifestRow> records;
  std::filesystem::path root;

  std::map<Subset, std::size_t> subset_counts() const;
};

/// Parses a JSON-lines manifest; the root is the manifest's directory. Every
/// referenced file must exist. Throws DataError naming the offending line.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Writes one JSON object per row.
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Reads the images of one row. Images not at the canonical sizes are
/// resized to them.
TextPairRecord load_record(const DatasetManifest& manifest, std::size_t index);

/// Loads every row, optionally restricted to one subset.
std::vector<TextPairRecord> load_records(const DatasetManifest& manifest, std::optional<Subset> subset = {});

}  // namespace textsr::data

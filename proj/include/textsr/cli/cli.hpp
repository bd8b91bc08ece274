// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace textsr::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumerical = 3 };

/// Entry point of the `textsr` tool. args[0] is the program name.
int run(const std::vector<std::string>& args);

/// Hex SHA-256 of a file's bytes. Throws DataError if it cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace textsr::cli

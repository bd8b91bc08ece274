// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "textsr/cli/cli.hpp"

int main(int argc, char** argv) { return textsr::cli::run(std::vector<std::string>(argv, argv + argc)); }

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace textsr {

using Rng = std::mt19937_64;

/// Derives an independent stream for a named purpose so that, e.g., weight
/// initialisation and data shuffling do not consume each other's draws.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform integer in [lo, hi].
int uniform_int(Rng& rng, int lo, int hi);

/// Uniform real in [lo, hi).
double uniform_real(Rng& rng, double lo, double hi);

double normal(Rng& rng);

}  // namespace textsr

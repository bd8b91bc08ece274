// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "textsr/simd/kernels.hpp"

namespace textsr::simd::detail {

const KernelTable& scalar_table();
#if defined(TEXTSR_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace textsr::simd::detail

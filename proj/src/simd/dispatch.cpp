// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"

namespace textsr::simd {
namespace {

bool cpu_has_avx2() {
#if defined(TEXTSR_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernels(detected_isa())};
  return table;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: {
      static const bool has = cpu_has_avx2();
      return has;
    }
  }
  return false;
}

Isa detected_isa() { return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const KernelTable& kernels(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument(std::string("ISA not supported here: ") + isa_name(isa));
#if defined(TEXTSR_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

const KernelTable& kernels() { return *active_table().load(std::memory_order_acquire); }

Isa active_isa() { return kernels().isa; }

void set_active_isa(Isa isa) { active_table().store(&kernels(isa), std::memory_order_release); }

double squared_diff_sum(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw std::invalid_argument("squared_diff_sum: length mismatch");
  return kernels().squared_diff_sum(a.data(), b.data(), a.size());
}

}  // namespace textsr::simd

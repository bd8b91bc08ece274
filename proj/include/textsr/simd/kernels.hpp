// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Data-parallel inner loops used by the network and the metrics.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2+FMA
// variant compiled in its own translation unit. The variant is chosen once at
// runtime from CPUID; tests can pin either one through set_active_isa().

#include <cstddef>
#include <span>

namespace textsr::simd {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

/// Best instruction set supported by both the build and the running CPU.
Isa detected_isa();
bool isa_supported(Isa isa);

Isa active_isa();
/// Throws std::invalid_argument if `isa` is not supported on this machine.
void set_active_isa(Isa isa);

enum class Trans { no, yes };

/// Row-major C = alpha * op(A) * op(B) + beta * C, op(A) is m x k, op(B) is k x n.
/// beta == 0 overwrites C without reading it.
using GemmFn = void (*)(Trans ta, Trans tb, int m, int n, int k, float alpha, const float* a, int lda,
                        const float* b, int ldb, float beta, float* c, int ldc);

/// sum_i (a_i - b_i)^2 accumulated in double.
using SquaredDiffSumFn = double (*)(const float* a, const float* b, std::size_t n);

/// y += alpha * x
using AxpyFn = void (*)(float alpha, const float* x, float* y, std::size_t n);

struct AdamStep {
  float learning_rate;
  float beta1;
  float beta2;
  float epsilon;
  float bias_correction1;  // 1 - beta1^t
  float bias_correction2;  // 1 - beta2^t
};

/// In-place Adam update of one parameter tensor and its moment buffers.
using AdamUpdateFn = void (*)(float* param, const float* grad, float* m, float* v, std::size_t n,
                              const AdamStep& step);

/// In-place elementwise activation.
using ActivationFn = void (*)(float* x, std::size_t n);

/// Valid-mode multi-channel correlation over an already padded input:
/// y[o, i, j] = bias[o] + sum_{c,ky,kx} w[o, c, ky, kx] * x[c, i + ky, j + kx].
/// `bias` may be null. `y` is [out, h - k + 1, w - k + 1] and is overwritten.
using CorrelateFn = void (*)(const float* x, int channels, int h, int w, const float* weight, const float* bias,
                             int out, int k, float* y);

/// dw[o, c, ky, kx] += sum_{i,j} dy[o, i, j] * x[c, i + ky, j + kx], the weight
/// gradient of the correlation above.
using CorrelateWeightGradFn = void (*)(const float* x, int channels, int h, int w, const float* dy, int out, int k,
                                       float* dw);

struct KernelTable {
  Isa isa;
  GemmFn gemm;
  SquaredDiffSumFn squared_diff_sum;
  AxpyFn axpy;
  AdamUpdateFn adam_update;
  ActivationFn sigmoid;
  ActivationFn tanh;
  CorrelateFn correlate;
  CorrelateWeightGradFn correlate_weight_grad;
};

/// Table for a specific ISA; throws if unsupported.
const KernelTable& kernels(Isa isa);
/// Table for the active ISA.
const KernelTable& kernels();

/// Portable reference GEMM, also instantiated for double (used by gradient checks).
template <typename T>
void gemm_reference(Trans ta, Trans tb, int m, int n, int k, T alpha, const T* a, int lda, const T* b, int ldb,
                    T beta, T* c, int ldc);

template <typename T>
void correlate_reference(const T* x, int channels, int h, int w, const T* weight, const T* bias, int out, int k, T* y);

template <typename T>
void correlate_weight_grad_reference(const T* x, int channels, int h, int w, const T* dy, int out, int k, T* dw);

inline void correlate(const float* x, int channels, int h, int w, const float* weight, const float* bias, int out,
                      int k, float* y) {
  kernels().correlate(x, channels, h, w, weight, bias, out, k, y);
}
inline void correlate(const double* x, int channels, int h, int w, const double* weight, const double* bias, int out,
                      int k, double* y) {
  correlate_reference<double>(x, channels, h, w, weight, bias, out, k, y);
}
inline void correlate_weight_grad(const float* x, int channels, int h, int w, const float* dy, int out, int k,
                                  float* dw) {
  kernels().correlate_weight_grad(x, channels, h, w, dy, out, k, dw);
}
inline void correlate_weight_grad(const double* x, int channels, int h, int w, const double* dy, int out, int k,
                                  double* dw) {
  correlate_weight_grad_reference<double>(x, channels, h, w, dy, out, k, dw);
}

inline void gemm(Trans ta, Trans tb, int m, int n, int k, float alpha, const float* a, int lda, const float* b,
                 int ldb, float beta, float* c, int ldc) {
  kernels().gemm(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

inline void gemm(Trans ta, Trans tb, int m, int n, int k, double alpha, const double* a, int lda, const double* b,
                 int ldb, double beta, double* c, int ldc) {
  gemm_reference<double>(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

double squared_diff_sum(std::span<const float> a, std::span<const float> b);

}  // namespace textsr::simd

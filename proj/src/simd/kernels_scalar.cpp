// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "kernels_internal.hpp"

namespace textsr::simd {

template <typename T>
void gemm_reference(Trans ta, Trans tb, int m, int n, int k, T alpha, const T* a, int lda, const T* b, int ldb,
                    T beta, T* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    T* row = c + static_cast<std::size_t>(i) * ldc;
    if (beta == T(0)) {
      for (int j = 0; j < n; ++j) row[j] = T(0);
    } else if (beta != T(1)) {
      for (int j = 0; j < n; ++j) row[j] *= beta;
    }
  }
  auto a_at = [&](int i, int p) { return ta == Trans::no ? a[static_cast<std::size_t>(i) * lda + p] : a[static_cast<std::size_t>(p) * lda + i]; };
  if (tb == Trans::no) {
    for (int i = 0; i < m; ++i) {
      T* row = c + static_cast<std::size_t>(i) * ldc;
      for (int p = 0; p < k; ++p) {
        const T s = alpha * a_at(i, p);
        const T* brow = b + static_cast<std::size_t>(p) * ldb;
        for (int j = 0; j < n; ++j) row[j] += s * brow[j];
      }
    }
  } else {
    for (int i = 0; i < m; ++i) {
      T* row = c + static_cast<std::size_t>(i) * ldc;
      for (int j = 0; j < n; ++j) {
        const T* bcol = b + static_cast<std::size_t>(j) * ldb;
        T acc = T(0);
        for (int p = 0; p < k; ++p) acc += a_at(i, p) * bcol[p];
        row[j] += alpha * acc;
      }
    }
  }
}

template void gemm_reference<float>(Trans, Trans, int, int, int, float, const float*, int, const float*, int, float,
                                    float*, int);
template void gemm_reference<double>(Trans, Trans, int, int, int, double, const double*, int, const double*, int,
                                     double, double*, int);

template <typename T>
void correlate_reference(const T* x, int channels, int h, int w, const T* weight, const T* bias, int out, int k,
                         T* y) {
  const int ho = h - k + 1, wo = w - k + 1;
  for (int o = 0; o < out; ++o)
    for (int i = 0; i < ho; ++i) {
      T* yrow = y + (static_cast<std::size_t>(o) * ho + i) * wo;
      for (int j = 0; j < wo; ++j) yrow[j] = bias ? bias[o] : T(0);
      for (int c = 0; c < channels; ++c)
        for (int ky = 0; ky < k; ++ky) {
          const T* xrow = x + (static_cast<std::size_t>(c) * h + i + ky) * w;
          const T* wrow = weight + ((static_cast<std::size_t>(o) * channels + c) * k + ky) * k;
          for (int kx = 0; kx < k; ++kx)
            for (int j = 0; j < wo; ++j) yrow[j] += wrow[kx] * xrow[j + kx];
        }
    }
}

template <typename T>
void correlate_weight_grad_reference(const T* x, int channels, int h, int w, const T* dy, int out, int k, T* dw) {
  const int ho = h - k + 1, wo = w - k + 1;
  for (int o = 0; o < out; ++o)
    for (int c = 0; c < channels; ++c)
      for (int ky = 0; ky < k; ++ky)
        for (int kx = 0; kx < k; ++kx) {
          T acc = T(0);
          for (int i = 0; i < ho; ++i) {
            const T* dyrow = dy + (static_cast<std::size_t>(o) * ho + i) * wo;
            const T* xrow = x + (static_cast<std::size_t>(c) * h + i + ky) * w + kx;
            for (int j = 0; j < wo; ++j) acc += dyrow[j] * xrow[j];
          }
          dw[((static_cast<std::size_t>(o) * channels + c) * k + ky) * k + kx] += acc;
        }
}

template void correlate_reference<float>(const float*, int, int, int, const float*, const float*, int, int, float*);
template void correlate_reference<double>(const double*, int, int, int, const double*, const double*, int, int,
                                          double*);
template void correlate_weight_grad_reference<float>(const float*, int, int, int, const float*, int, int, float*);
template void correlate_weight_grad_reference<double>(const double*, int, int, int, const double*, int, int, double*);

namespace detail {
namespace {

double squared_diff_sum_scalar(const float* a, const float* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc;
}

void axpy_scalar(float alpha, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void adam_update_scalar(float* param, const float* grad, float* m, float* v, std::size_t n, const AdamStep& s) {
  const float one_minus_b1 = 1.0f - s.beta1;
  const float one_minus_b2 = 1.0f - s.beta2;
  for (std::size_t i = 0; i < n; ++i) {
    const float g = grad[i];
    m[i] = s.beta1 * m[i] + one_minus_b1 * g;
    v[i] = s.beta2 * v[i] + one_minus_b2 * (g * g);
    const float m_hat = m[i] / s.bias_correction1;
    const float v_hat = v[i] / s.bias_correction2;
    param[i] -= s.learning_rate * (m_hat / (std::sqrt(v_hat) + s.epsilon));
  }
}

void sigmoid_scalar(float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0f / (1.0f + std::exp(-x[i]));
}

void tanh_scalar(float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::tanh(x[i]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,        &gemm_reference<float>, &squared_diff_sum_scalar, &axpy_scalar,
                                 &adam_update_scalar, &sigmoid_scalar,       &tanh_scalar,
                                 &correlate_reference<float>, &correlate_weight_grad_reference<float>};
  return table;
}

}  // namespace detail
}  // namespace textsr::simd

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma -ffp-contract=off. Only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kernels_internal.hpp"

namespace textsr::simd::detail {
namespace {

constexpr int kMr = 6;
constexpr int kNr = 16;
constexpr int kKc = 256;
constexpr int kMc = 120;
constexpr int kNc = 3072;

// A block (mc x kc) into row panels of kMr, k-major inside a panel, zero padded.
void pack_a(Trans ta, const float* a, int lda, int i0, int mc, int k0, int kc, float* dst) {
  for (int ip = 0; ip < mc; ip += kMr) {
    const int rows = std::min(kMr, mc - ip);
    if (ta == Trans::yes) {
      for (int p = 0; p < kc; ++p) {
        const float* src = a + static_cast<std::size_t>(k0 + p) * lda + i0 + ip;
        int r = 0;
        for (; r < rows; ++r) dst[r] = src[r];
        for (; r < kMr; ++r) dst[r] = 0.0f;
        dst += kMr;
      }
    } else {
      // Walk each source row contiguously; the panel is written with stride kMr.
      for (int r = 0; r < kMr; ++r) {
        if (r < rows) {
          const float* src = a + static_cast<std::size_t>(i0 + ip + r) * lda + k0;
          for (int p = 0; p < kc; ++p) dst[p * kMr + r] = src[p];
        } else {
          for (int p = 0; p < kc; ++p) dst[p * kMr + r] = 0.0f;
        }
      }
      dst += static_cast<std::size_t>(kc) * kMr;
    }
  }
}

// B block (kc x nc) into column panels of kNr, zero padded.
void pack_b(Trans tb, const float* b, int ldb, int k0, int kc, int j0, int nc, float* dst) {
  for (int jp = 0; jp < nc; jp += kNr) {
    const int cols = std::min(kNr, nc - jp);
    if (tb == Trans::yes) {
      for (int c = 0; c < kNr; ++c) {
        if (c < cols) {
          const float* src = b + static_cast<std::size_t>(j0 + jp + c) * ldb + k0;
          for (int p = 0; p < kc; ++p) dst[p * kNr + c] = src[p];
        } else {
          for (int p = 0; p < kc; ++p) dst[p * kNr + c] = 0.0f;
        }
      }
    } else if (cols == kNr) {
      for (int p = 0; p < kc; ++p) {
        const float* src = b + static_cast<std::size_t>(k0 + p) * ldb + j0 + jp;
        _mm256_storeu_ps(dst + p * kNr, _mm256_loadu_ps(src));
        _mm256_storeu_ps(dst + p * kNr + 8, _mm256_loadu_ps(src + 8));
      }
    } else {
      for (int p = 0; p < kc; ++p) {
        const float* src = b + static_cast<std::size_t>(k0 + p) * ldb + j0 + jp;
        int c = 0;
        for (; c < cols; ++c) dst[p * kNr + c] = src[c];
        for (; c < kNr; ++c) dst[p * kNr + c] = 0.0f;
      }
    }
    dst += static_cast<std::size_t>(kc) * kNr;
  }
}

void micro_kernel(int kc, const float* ap, const float* bp, float* c, int ldc, float alpha, int rows, int cols) {
  __m256 c00 = _mm256_setzero_ps(), c01 = _mm256_setzero_ps();
  __m256 c10 = _mm256_setzero_ps(), c11 = _mm256_setzero_ps();
  __m256 c20 = _mm256_setzero_ps(), c21 = _mm256_setzero_ps();
  __m256 c30 = _mm256_setzero_ps(), c31 = _mm256_setzero_ps();
  __m256 c40 = _mm256_setzero_ps(), c41 = _mm256_setzero_ps();
  __m256 c50 = _mm256_setzero_ps(), c51 = _mm256_setzero_ps();
  for (int p = 0; p < kc; ++p) {
    const __m256 b0 = _mm256_loadu_ps(bp);
    const __m256 b1 = _mm256_loadu_ps(bp + 8);
    __m256 a = _mm256_broadcast_ss(ap + 0);
    c00 = _mm256_fmadd_ps(a, b0, c00);
    c01 = _mm256_fmadd_ps(a, b1, c01);
    a = _mm256_broadcast_ss(ap + 1);
    c10 = _mm256_fmadd_ps(a, b0, c10);
    c11 = _mm256_fmadd_ps(a, b1, c11);
    a = _mm256_broadcast_ss(ap + 2);
    c20 = _mm256_fmadd_ps(a, b0, c20);
    c21 = _mm256_fmadd_ps(a, b1, c21);
    a = _mm256_broadcast_ss(ap + 3);
    c30 = _mm256_fmadd_ps(a, b0, c30);
    c31 = _mm256_fmadd_ps(a, b1, c31);
    a = _mm256_broadcast_ss(ap + 4);
    c40 = _mm256_fmadd_ps(a, b0, c40);
    c41 = _mm256_fmadd_ps(a, b1, c41);
    a = _mm256_broadcast_ss(ap + 5);
    c50 = _mm256_fmadd_ps(a, b0, c50);
    c51 = _mm256_fmadd_ps(a, b1, c51);
    ap += kMr;
    bp += kNr;
  }
  const __m256 va = _mm256_set1_ps(alpha);
  if (rows == kMr && cols == kNr) {
    const __m256 acc[kMr][2] = {{c00, c01}, {c10, c11}, {c20, c21}, {c30, c31}, {c40, c41}, {c50, c51}};
    for (int r = 0; r < kMr; ++r) {
      float* row = c + static_cast<std::size_t>(r) * ldc;
      _mm256_storeu_ps(row, _mm256_fmadd_ps(va, acc[r][0], _mm256_loadu_ps(row)));
      _mm256_storeu_ps(row + 8, _mm256_fmadd_ps(va, acc[r][1], _mm256_loadu_ps(row + 8)));
    }
    return;
  }
  alignas(32) float tmp[kMr][kNr];
  _mm256_store_ps(tmp[0], c00), _mm256_store_ps(tmp[0] + 8, c01);
  _mm256_store_ps(tmp[1], c10), _mm256_store_ps(tmp[1] + 8, c11);
  _mm256_store_ps(tmp[2], c20), _mm256_store_ps(tmp[2] + 8, c21);
  _mm256_store_ps(tmp[3], c30), _mm256_store_ps(tmp[3] + 8, c31);
  _mm256_store_ps(tmp[4], c40), _mm256_store_ps(tmp[4] + 8, c41);
  _mm256_store_ps(tmp[5], c50), _mm256_store_ps(tmp[5] + 8, c51);
  for (int r = 0; r < rows; ++r) {
    float* row = c + static_cast<std::size_t>(r) * ldc;
    for (int j = 0; j < cols; ++j) row[j] += alpha * tmp[r][j];
  }
}

void gemm_avx2(Trans ta, Trans tb, int m, int n, int k, float alpha, const float* a, int lda, const float* b, int ldb,
               float beta, float* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    float* row = c + static_cast<std::size_t>(i) * ldc;
    if (beta == 0.0f) {
      std::fill(row, row + n, 0.0f);
    } else if (beta != 1.0f) {
      for (int j = 0; j < n; ++j) row[j] *= beta;
    }
  }
  if (m == 0 || n == 0 || k == 0 || alpha == 0.0f) return;

  thread_local std::vector<float> a_pack;
  thread_local std::vector<float> b_pack;
  a_pack.resize(static_cast<std::size_t>(kMc) * kKc);
  b_pack.resize(static_cast<std::size_t>(kKc) * (kNc + kNr));

  for (int jc = 0; jc < n; jc += kNc) {
    const int nc = std::min(kNc, n - jc);
    for (int pc = 0; pc < k; pc += kKc) {
      const int kc = std::min(kKc, k - pc);
      pack_b(tb, b, ldb, pc, kc, jc, nc, b_pack.data());
      for (int ic = 0; ic < m; ic += kMc) {
        const int mc = std::min(kMc, m - ic);
        pack_a(ta, a, lda, ic, mc, pc, kc, a_pack.data());
        for (int jr = 0; jr < nc; jr += kNr) {
          const float* bp = b_pack.data() + static_cast<std::size_t>(jr) * kc;
          for (int ir = 0; ir < mc; ir += kMr) {
            const float* ap = a_pack.data() + static_cast<std::size_t>(ir) * kc;
            float* cp = c + static_cast<std::size_t>(ic + ir) * ldc + jc + jr;
            micro_kernel(kc, ap, bp, cp, ldc, alpha, std::min(kMr, mc - ir), std::min(kNr, nc - jr));
          }
        }
      }
    }
  }
}

double squared_diff_sum_avx2(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    // Widen before subtracting so the result matches a double-precision difference.
    const __m256d lo = _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(a + i)), _mm256_cvtps_pd(_mm_loadu_ps(b + i)));
    const __m256d hi =
        _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(a + i + 4)), _mm256_cvtps_pd(_mm_loadu_ps(b + i + 4)));
    acc0 = _mm256_fmadd_pd(lo, lo, acc0);
    acc1 = _mm256_fmadd_pd(hi, hi, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc;
}

void axpy_avx2(float alpha, const float* x, float* y, std::size_t n) {
  const __m256 va = _mm256_set1_ps(alpha);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), _mm256_mul_ps(va, _mm256_loadu_ps(x + i))));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

// Same operation order as the scalar version, no fused multiply-add: results are bitwise identical.
void adam_update_avx2(float* param, const float* grad, float* m, float* v, std::size_t n, const AdamStep& s) {
  const __m256 b1 = _mm256_set1_ps(s.beta1);
  const __m256 b2 = _mm256_set1_ps(s.beta2);
  const __m256 omb1 = _mm256_set1_ps(1.0f - s.beta1);
  const __m256 omb2 = _mm256_set1_ps(1.0f - s.beta2);
  const __m256 bc1 = _mm256_set1_ps(s.bias_correction1);
  const __m256 bc2 = _mm256_set1_ps(s.bias_correction2);
  const __m256 lr = _mm256_set1_ps(s.learning_rate);
  const __m256 eps = _mm256_set1_ps(s.epsilon);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 g = _mm256_loadu_ps(grad + i);
    const __m256 mi = _mm256_add_ps(_mm256_mul_ps(b1, _mm256_loadu_ps(m + i)), _mm256_mul_ps(omb1, g));
    const __m256 vi =
        _mm256_add_ps(_mm256_mul_ps(b2, _mm256_loadu_ps(v + i)), _mm256_mul_ps(omb2, _mm256_mul_ps(g, g)));
    _mm256_storeu_ps(m + i, mi);
    _mm256_storeu_ps(v + i, vi);
    const __m256 m_hat = _mm256_div_ps(mi, bc1);
    const __m256 v_hat = _mm256_div_ps(vi, bc2);
    const __m256 upd = _mm256_mul_ps(lr, _mm256_div_ps(m_hat, _mm256_add_ps(_mm256_sqrt_ps(v_hat), eps)));
    _mm256_storeu_ps(param + i, _mm256_sub_ps(_mm256_loadu_ps(param + i), upd));
  }
  const float one_minus_b1 = 1.0f - s.beta1;
  const float one_minus_b2 = 1.0f - s.beta2;
  for (; i < n; ++i) {
    const float g = grad[i];
    m[i] = s.beta1 * m[i] + one_minus_b1 * g;
    v[i] = s.beta2 * v[i] + one_minus_b2 * (g * g);
    const float m_hat = m[i] / s.bias_correction1;
    const float v_hat = v[i] / s.bias_correction2;
    param[i] -= s.learning_rate * (m_hat / (std::sqrt(v_hat) + s.epsilon));
  }
}

// exp(x) by range reduction to [-ln2/2, ln2/2] and a degree-5 polynomial (Cephes expf coefficients).
inline __m256 exp_ps(__m256 x) {
  x = _mm256_min_ps(_mm256_max_ps(x, _mm256_set1_ps(-87.3f)), _mm256_set1_ps(88.3f));
  const __m256 fx = _mm256_round_ps(_mm256_mul_ps(x, _mm256_set1_ps(1.44269504088896341f)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_ps(fx, _mm256_set1_ps(0.693359375f), x);
  x = _mm256_fnmadd_ps(fx, _mm256_set1_ps(-2.12194440e-4f), x);
  __m256 y = _mm256_set1_ps(1.9875691500e-4f);
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.3981999507e-3f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(8.3334519073e-3f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(4.1665795894e-2f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.6666665459e-1f));
  y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(5.0000001201e-1f));
  y = _mm256_fmadd_ps(y, _mm256_mul_ps(x, x), _mm256_add_ps(x, _mm256_set1_ps(1.0f)));
  const __m256i pow2 = _mm256_slli_epi32(_mm256_add_epi32(_mm256_cvtps_epi32(fx), _mm256_set1_epi32(127)), 23);
  return _mm256_mul_ps(y, _mm256_castsi256_ps(pow2));
}

void sigmoid_avx2(float* x, std::size_t n) {
  const __m256 one = _mm256_set1_ps(1.0f);
  const __m256 sign = _mm256_set1_ps(-0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(x + i);
    _mm256_storeu_ps(x + i, _mm256_div_ps(one, _mm256_add_ps(one, exp_ps(_mm256_xor_ps(v, sign)))));
  }
  for (; i < n; ++i) x[i] = 1.0f / (1.0f + std::exp(-x[i]));
}

// tanh(x) = sign(x) (1 - e) / (1 + e) with e = exp(-2|x|); no cancellation for large |x|.
void tanh_avx2(float* x, std::size_t n) {
  const __m256 one = _mm256_set1_ps(1.0f);
  const __m256 sign = _mm256_set1_ps(-0.0f);
  const __m256 small = _mm256_set1_ps(0.0625f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(x + i);
    const __m256 a = _mm256_andnot_ps(sign, v);
    const __m256 e = exp_ps(_mm256_mul_ps(a, _mm256_set1_ps(-2.0f)));
    __m256 t = _mm256_div_ps(_mm256_sub_ps(one, e), _mm256_add_ps(one, e));
    // Near zero (1 - e) cancels; use the odd series x - x^3/3 + 2x^5/15 instead.
    const __m256 a2 = _mm256_mul_ps(a, a);
    __m256 poly = _mm256_fmadd_ps(a2, _mm256_set1_ps(2.0f / 15.0f), _mm256_set1_ps(-1.0f / 3.0f));
    poly = _mm256_fmadd_ps(_mm256_mul_ps(poly, a2), a, a);
    t = _mm256_blendv_ps(t, poly, _mm256_cmp_ps(a, small, _CMP_LT_OQ));
    _mm256_storeu_ps(x + i, _mm256_or_ps(t, _mm256_and_ps(v, sign)));
  }
  for (; i < n; ++i) x[i] = std::tanh(x[i]);
}

// Four 8-wide accumulators cover 32 output columns per pass; a broadcast weight
// feeds all four.
void correlate_avx2(const float* x, int channels, int h, int w, const float* weight, const float* bias, int out, int k,
                    float* y) {
  const int ho = h - k + 1, wo = w - k + 1;
  for (int o = 0; o < out; ++o)
    for (int i = 0; i < ho; ++i) {
      float* yrow = y + (static_cast<std::size_t>(o) * ho + i) * wo;
      const float b = bias ? bias[o] : 0.0f;
      int j = 0;
      for (; j + 32 <= wo; j += 32) {
        __m256 a0 = _mm256_set1_ps(b), a1 = a0, a2 = a0, a3 = a0;
        for (int c = 0; c < channels; ++c)
          for (int ky = 0; ky < k; ++ky) {
            const float* xrow = x + (static_cast<std::size_t>(c) * h + i + ky) * w + j;
            const float* wrow = weight + ((static_cast<std::size_t>(o) * channels + c) * k + ky) * k;
            for (int kx = 0; kx < k; ++kx) {
              const __m256 wv = _mm256_set1_ps(wrow[kx]);
              a0 = _mm256_fmadd_ps(wv, _mm256_loadu_ps(xrow + kx), a0);
              a1 = _mm256_fmadd_ps(wv, _mm256_loadu_ps(xrow + kx + 8), a1);
              a2 = _mm256_fmadd_ps(wv, _mm256_loadu_ps(xrow + kx + 16), a2);
              a3 = _mm256_fmadd_ps(wv, _mm256_loadu_ps(xrow + kx + 24), a3);
            }
          }
        _mm256_storeu_ps(yrow + j, a0);
        _mm256_storeu_ps(yrow + j + 8, a1);
        _mm256_storeu_ps(yrow + j + 16, a2);
        _mm256_storeu_ps(yrow + j + 24, a3);
      }
      for (; j + 8 <= wo; j += 8) {
        __m256 a0 = _mm256_set1_ps(b);
        for (int c = 0; c < channels; ++c)
          for (int ky = 0; ky < k; ++ky) {
            const float* xrow = x + (static_cast<std::size_t>(c) * h + i + ky) * w + j;
            const float* wrow = weight + ((static_cast<std::size_t>(o) * channels + c) * k + ky) * k;
            for (int kx = 0; kx < k; ++kx)
              a0 = _mm256_fmadd_ps(_mm256_set1_ps(wrow[kx]), _mm256_loadu_ps(xrow + kx), a0);
          }
        _mm256_storeu_ps(yrow + j, a0);
      }
      for (; j < wo; ++j) {
        float acc = b;
        for (int c = 0; c < channels; ++c)
          for (int ky = 0; ky < k; ++ky) {
            const float* xrow = x + (static_cast<std::size_t>(c) * h + i + ky) * w + j;
            const float* wrow = weight + ((static_cast<std::size_t>(o) * channels + c) * k + ky) * k;
            for (int kx = 0; kx < k; ++kx) acc += wrow[kx] * xrow[kx];
          }
        yrow[j] = acc;
      }
    }
}

constexpr int kMaxTaps = 16;

// One accumulator per horizontal tap so each dy load is reused k times.
void correlate_weight_grad_avx2(const float* x, int channels, int h, int w, const float* dy, int out, int k,
                                float* dw) {
  if (k > kMaxTaps) {
    correlate_weight_grad_reference<float>(x, channels, h, w, dy, out, k, dw);
    return;
  }
  const int ho = h - k + 1, wo = w - k + 1;
  for (int o = 0; o < out; ++o)
    for (int c = 0; c < channels; ++c)
      for (int ky = 0; ky < k; ++ky) {
        __m256 acc[kMaxTaps];
        float tail[kMaxTaps] = {};
        for (int kx = 0; kx < k; ++kx) acc[kx] = _mm256_setzero_ps();
        for (int i = 0; i < ho; ++i) {
          const float* dyrow = dy + (static_cast<std::size_t>(o) * ho + i) * wo;
          const float* xrow = x + (static_cast<std::size_t>(c) * h + i + ky) * w;
          int j = 0;
          for (; j + 8 <= wo; j += 8) {
            const __m256 d = _mm256_loadu_ps(dyrow + j);
            for (int kx = 0; kx < k; ++kx) acc[kx] = _mm256_fmadd_ps(d, _mm256_loadu_ps(xrow + j + kx), acc[kx]);
          }
          for (; j < wo; ++j)
            for (int kx = 0; kx < k; ++kx) tail[kx] += dyrow[j] * xrow[j + kx];
        }
        float* dwrow = dw + ((static_cast<std::size_t>(o) * channels + c) * k + ky) * k;
        for (int kx = 0; kx < k; ++kx) {
          alignas(32) float lanes[8];
          _mm256_store_ps(lanes, acc[kx]);
          dwrow[kx] += ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + ((lanes[4] + lanes[5]) + (lanes[6] + lanes[7])) +
                       tail[kx];
        }
      }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2,        &gemm_avx2,    &squared_diff_sum_avx2, &axpy_avx2,
                                 &adam_update_avx2, &sigmoid_avx2, &tanh_avx2,
                                 &correlate_avx2,   &correlate_weight_grad_avx2};
  return table;
}

}  // namespace textsr::simd::detail

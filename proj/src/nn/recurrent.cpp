// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/nn/recurrent.hpp"

#include <cmath>

#include "textsr/core/error.hpp"
#include "textsr/simd/kernels.hpp"

namespace textsr::nn {
namespace {

using simd::Trans;

void sigmoid_inplace(float* x, std::size_t n) { simd::kernels().sigmoid(x, n); }
void tanh_inplace(float* x, std::size_t n) { simd::kernels().tanh(x, n); }
void sigmoid_inplace(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 / (1.0 + std::exp(-x[i]));
}
void tanh_inplace(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::tanh(x[i]);
}

}  // namespace

template <typename T>
Lstm<T>::Lstm(int input_size, int hidden_size, bool reverse, Rng& rng)
    : input_(input_size),
      hidden_(hidden_size),
      reverse_(reverse),
      w_ih_({4 * hidden_size, input_size}),
      w_hh_({4 * hidden_size, hidden_size}),
      bias_({4 * hidden_size}) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden_size));
  for (auto& v : w_ih_.value.values()) v = static_cast<T>(uniform_real(rng, -bound, bound));
  for (auto& v : w_hh_.value.values()) v = static_cast<T>(uniform_real(rng, -bound, bound));
}

template <typename T>
Tensor<T> Lstm<T>::forward(const Tensor<T>& x) {
  require_shape(x, {-1, -1, input_}, "Lstm input");
  const int steps = x.dim(0), n = x.dim(1), h = hidden_, g4 = 4 * hidden_;
  input_cache_ = x;
  gates_ = Tensor<T>({steps, n, g4});
  cells_ = Tensor<T>({steps, n, h});
  cell_tanh_ = Tensor<T>({steps, n, h});
  hidden_states_ = Tensor<T>({steps, n, h});

  // Input contribution for all steps at once.
  for (int r = 0; r < steps * n; ++r)
    std::copy(bias_.value.data(), bias_.value.data() + g4, gates_.data() + static_cast<std::size_t>(r) * g4);
  simd::gemm(Trans::no, Trans::yes, steps * n, g4, input_, T(1), x.data(), input_, w_ih_.value.data(), input_, T(1),
             gates_.data(), g4);

  const std::size_t step_gates = static_cast<std::size_t>(n) * g4;
  const std::size_t step_state = static_cast<std::size_t>(n) * h;
  const T* h_prev = nullptr;
  const T* c_prev = nullptr;
  for (int k = 0; k < steps; ++k) {
    const int t = reverse_ ? steps - 1 - k : k;
    T* gt = gates_.data() + t * step_gates;
    if (h_prev)
      simd::gemm(Trans::no, Trans::yes, n, g4, h, T(1), h_prev, h, w_hh_.value.data(), h, T(1), gt, g4);
    T* ct = cells_.data() + t * step_state;
    T* tc = cell_tanh_.data() + t * step_state;
    T* ht = hidden_states_.data() + t * step_state;
    for (int s = 0; s < n; ++s) {
      T* g = gt + static_cast<std::size_t>(s) * g4;
      sigmoid_inplace(g, 2 * h);
      tanh_inplace(g + 2 * h, h);
      sigmoid_inplace(g + 3 * h, h);
      for (int j = 0; j < h; ++j) {
        const T cp = c_prev ? c_prev[static_cast<std::size_t>(s) * h + j] : T(0);
        ct[static_cast<std::size_t>(s) * h + j] = g[h + j] * cp + g[j] * g[2 * h + j];
      }
    }
    std::copy(ct, ct + step_state, tc);
    tanh_inplace(tc, step_state);
    for (int s = 0; s < n; ++s)
      for (int j = 0; j < h; ++j)
        ht[static_cast<std::size_t>(s) * h + j] =
            gt[static_cast<std::size_t>(s) * g4 + 3 * h + j] * tc[static_cast<std::size_t>(s) * h + j];
    h_prev = ht;
    c_prev = ct;
  }
  return hidden_states_;
}

template <typename T>
Tensor<T> Lstm<T>::backward(const Tensor<T>& dh_out) {
  if (!dh_out.same_shape(hidden_states_)) throw ShapeError("Lstm grad shape mismatch");
  const int steps = dh_out.dim(0), n = dh_out.dim(1), h = hidden_, g4 = 4 * hidden_;
  const std::size_t step_gates = static_cast<std::size_t>(n) * g4;
  const std::size_t step_state = static_cast<std::size_t>(n) * h;
  Tensor<T> dgates({steps, n, g4});
  std::vector<T> dh_next(step_state, T(0)), dc_next(step_state, T(0));

  for (int k = steps - 1; k >= 0; --k) {
    const int t = reverse_ ? steps - 1 - k : k;
    const int t_prev = reverse_ ? t + 1 : t - 1;  // valid only when k > 0
    const T* g = gates_.data() + t * step_gates;
    const T* tc = cell_tanh_.data() + t * step_state;
    const T* c_prev = k > 0 ? cells_.data() + t_prev * step_state : nullptr;
    const T* dh = dh_out.data() + t * step_state;
    T* dg = dgates.data() + t * step_gates;
    for (int s = 0; s < n; ++s) {
      for (int j = 0; j < h; ++j) {
        const std::size_t si = static_cast<std::size_t>(s) * h + j;
        const std::size_t gi = static_cast<std::size_t>(s) * g4;
        const T i_gate = g[gi + j], f_gate = g[gi + h + j], c_gate = g[gi + 2 * h + j], o_gate = g[gi + 3 * h + j];
        const T tanh_c = tc[si];
        const T dht = dh[si] + dh_next[si];
        const T dct = dc_next[si] + dht * o_gate * (T(1) - tanh_c * tanh_c);
        const T cp = c_prev ? c_prev[si] : T(0);
        dg[gi + j] = dct * c_gate * i_gate * (T(1) - i_gate);
        dg[gi + h + j] = dct * cp * f_gate * (T(1) - f_gate);
        dg[gi + 2 * h + j] = dct * i_gate * (T(1) - c_gate * c_gate);
        dg[gi + 3 * h + j] = dht * tanh_c * o_gate * (T(1) - o_gate);
        dc_next[si] = dct * f_gate;
      }
    }
    if (k > 0)
      simd::gemm(Trans::no, Trans::no, n, h, g4, T(1), dg, g4, w_hh_.value.data(), h, T(0), dh_next.data(), h);
  }

  // Recurrent weight gradient for all steps at once against the previous hidden state (zero at the first step).
  Tensor<T> h_prev({steps, n, h});
  for (int t = 0; t < steps; ++t) {
    const int src = reverse_ ? t + 1 : t - 1;
    if (src < 0 || src >= steps) continue;
    std::copy_n(hidden_states_.data() + src * step_state, step_state, h_prev.data() + t * step_state);
  }
  simd::gemm(Trans::yes, Trans::no, g4, h, steps * n, T(1), dgates.data(), g4, h_prev.data(), h, T(1),
             w_hh_.grad.data(), h);

  simd::gemm(Trans::yes, Trans::no, g4, input_, steps * n, T(1), dgates.data(), g4, input_cache_.data(), input_, T(1),
             w_ih_.grad.data(), input_);
  for (std::size_t r = 0; r < static_cast<std::size_t>(steps) * n; ++r)
    for (int j = 0; j < g4; ++j) bias_.grad[j] += dgates[r * g4 + j];
  Tensor<T> dx({steps, n, input_});
  simd::gemm(Trans::no, Trans::no, steps * n, input_, g4, T(1), dgates.data(), g4, w_ih_.value.data(), input_, T(0),
             dx.data(), input_);
  return dx;
}

template <typename T>
void Lstm<T>::collect(const std::string& prefix, ParameterList<T>& out) {
  out.params.emplace_back(this->join(prefix, "weight_ih"), &w_ih_);
  out.params.emplace_back(this->join(prefix, "weight_hh"), &w_hh_);
  out.params.emplace_back(this->join(prefix, "bias"), &bias_);
}

// ---------------------------------------------------------------- AxisRecurrence

template <typename T>
AxisRecurrence<T>::AxisRecurrence(Axis axis, int channels, int hidden, Rng& rng)
    : axis_(axis), channels_(channels), hidden_(hidden), fwd_(channels, hidden, false, rng), bwd_(channels, hidden, true, rng) {}

template <typename T>
Tensor<T> AxisRecurrence<T>::forward(const Tensor<T>& x) {
  require_shape(x, {-1, channels_, -1, -1}, "AxisRecurrence input");
  input_shape_ = x.shape();
  const int b = x.dim(0), c = channels_, hh = x.dim(2), ww = x.dim(3);
  const bool horiz = axis_ == Axis::horizontal;
  const int steps = horiz ? ww : hh;
  const int lanes = horiz ? hh : ww;
  Tensor<T> seq({steps, b * lanes, c});
  for (int n = 0; n < b; ++n)
    for (int ch = 0; ch < c; ++ch)
      for (int y = 0; y < hh; ++y)
        for (int xx = 0; xx < ww; ++xx) {
          const int t = horiz ? xx : y;
          const int lane = n * lanes + (horiz ? y : xx);
          seq[(static_cast<std::size_t>(t) * b * lanes + lane) * c + ch] = x.at(n, ch, y, xx);
        }
  const Tensor<T> hf = fwd_.forward(seq);
  const Tensor<T> hb = bwd_.forward(seq);
  const int hd = hidden_;
  Tensor<T> out({b, 2 * hd, hh, ww});
  for (int n = 0; n < b; ++n)
    for (int y = 0; y < hh; ++y)
      for (int xx = 0; xx < ww; ++xx) {
        const int t = horiz ? xx : y;
        const int lane = n * lanes + (horiz ? y : xx);
        const std::size_t off = (static_cast<std::size_t>(t) * b * lanes + lane) * hd;
        for (int j = 0; j < hd; ++j) {
          out.at(n, j, y, xx) = hf[off + j];
          out.at(n, hd + j, y, xx) = hb[off + j];
        }
      }
  return out;
}

template <typename T>
Tensor<T> AxisRecurrence<T>::backward(const Tensor<T>& dy) {
  const int b = input_shape_[0], c = channels_, hh = input_shape_[2], ww = input_shape_[3];
  const int hd = hidden_;
  require_shape(dy, {b, 2 * hd, hh, ww}, "AxisRecurrence grad");
  const bool horiz = axis_ == Axis::horizontal;
  const int steps = horiz ? ww : hh;
  const int lanes = horiz ? hh : ww;
  Tensor<T> dhf({steps, b * lanes, hd}), dhb({steps, b * lanes, hd});
  for (int n = 0; n < b; ++n)
    for (int y = 0; y < hh; ++y)
      for (int xx = 0; xx < ww; ++xx) {
        const int t = horiz ? xx : y;
        const int lane = n * lanes + (horiz ? y : xx);
        const std::size_t off = (static_cast<std::size_t>(t) * b * lanes + lane) * hd;
        for (int j = 0; j < hd; ++j) {
          dhf[off + j] = dy.at(n, j, y, xx);
          dhb[off + j] = dy.at(n, hd + j, y, xx);
        }
      }
  Tensor<T> dseq = fwd_.backward(dhf);
  dseq += bwd_.backward(dhb);
  Tensor<T> dx(input_shape_);
  for (int n = 0; n < b; ++n)
    for (int ch = 0; ch < c; ++ch)
      for (int y = 0; y < hh; ++y)
        for (int xx = 0; xx < ww; ++xx) {
          const int t = horiz ? xx : y;
          const int lane = n * lanes + (horiz ? y : xx);
          dx.at(n, ch, y, xx) = dseq[(static_cast<std::size_t>(t) * b * lanes + lane) * c + ch];
        }
  return dx;
}

template <typename T>
void AxisRecurrence<T>::collect(const std::string& prefix, ParameterList<T>& out) {
  fwd_.collect(this->join(prefix, "forward"), out);
  bwd_.collect(this->join(prefix, "backward"), out);
}

template class Lstm<float>;
template class Lstm<double>;
template class AxisRecurrence<float>;
template class AxisRecurrence<double>;

}  // namespace textsr::nn

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/nn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "textsr/core/error.hpp"
#include "textsr/simd/kernels.hpp"

namespace textsr::nn {
namespace {

using simd::Trans;

template <typename T>
void uniform_fill(Tensor<T>& t, double bound, Rng& rng) {
  for (auto& v : t.values()) v = static_cast<T>(uniform_real(rng, -bound, bound));
}

// Rows of `col` are (c, ky, kx); columns are output positions.
template <typename T>
void im2col(const T* x, int channels, int h, int w, int k, int pad, T* col) {
  const int ho = h + 2 * pad - k + 1;
  const int wo = w + 2 * pad - k + 1;
  for (int c = 0; c < channels; ++c) {
    const T* plane = x + static_cast<std::size_t>(c) * h * w;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        T* row = col + ((static_cast<std::size_t>(c) * k + ky) * k + kx) * ho * wo;
        const int x_lo = std::max(0, pad - kx);
        const int x_hi = std::min(wo, w + pad - kx);
        for (int oy = 0; oy < ho; ++oy) {
          T* dst = row + static_cast<std::size_t>(oy) * wo;
          const int iy = oy + ky - pad;
          if (iy < 0 || iy >= h || x_lo >= x_hi) {
            std::fill(dst, dst + wo, T(0));
            continue;
          }
          std::fill(dst, dst + x_lo, T(0));
          std::memcpy(dst + x_lo, plane + static_cast<std::size_t>(iy) * w + (x_lo + kx - pad),
                      sizeof(T) * (x_hi - x_lo));
          std::fill(dst + x_hi, dst + wo, T(0));
        }
      }
    }
  }
}

template <typename T>
void col2im(const T* col, int channels, int h, int w, int k, int pad, T* x) {
  const int ho = h + 2 * pad - k + 1;
  const int wo = w + 2 * pad - k + 1;
  std::fill(x, x + static_cast<std::size_t>(channels) * h * w, T(0));
  for (int c = 0; c < channels; ++c) {
    T* plane = x + static_cast<std::size_t>(c) * h * w;
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const T* row = col + ((static_cast<std::size_t>(c) * k + ky) * k + kx) * ho * wo;
        const int x_lo = std::max(0, pad - kx);
        const int x_hi = std::min(wo, w + pad - kx);
        for (int oy = 0; oy < ho; ++oy) {
          const int iy = oy + ky - pad;
          if (iy < 0 || iy >= h) continue;
          const T* src = row + static_cast<std::size_t>(oy) * wo;
          T* dst = plane + static_cast<std::size_t>(iy) * w;
          for (int ox = x_lo; ox < x_hi; ++ox) dst[ox + kx - pad] += src[ox];
        }
      }
    }
  }
}

constexpr int kDirectMaxOutputs = 4;

}  // namespace

// ---------------------------------------------------------------- Conv2d

template <typename T>
Conv2d<T>::Conv2d(int in_channels, int out_channels, int kernel, int padding, Rng& rng)
    : in_(in_channels),
      out_(out_channels),
      kernel_(kernel),
      padding_(padding),
      weight_({out_channels, in_channels, kernel, kernel}),
      bias_({out_channels}) {
  uniform_fill(weight_.value, 1.0 / std::sqrt(static_cast<double>(in_channels * kernel * kernel)), rng);
}

template <typename T>
bool Conv2d<T>::use_direct() const {
  if (algorithm_ != Algorithm::automatic) return algorithm_ == Algorithm::direct;
  return out_ <= kDirectMaxOutputs && kernel_ > 1;
}

namespace {

// Copies [c, h, w] into the centre of a zero [c, h + 2p, w + 2p] buffer.
template <typename T>
std::vector<T> pad_planes(const T* x, int channels, int h, int w, int p) {
  const int hp = h + 2 * p, wp = w + 2 * p;
  std::vector<T> out(static_cast<std::size_t>(channels) * hp * wp, T(0));
  for (int c = 0; c < channels; ++c)
    for (int y = 0; y < h; ++y)
      std::copy_n(x + (static_cast<std::size_t>(c) * h + y) * w, w,
                  out.data() + (static_cast<std::size_t>(c) * hp + y + p) * wp + p);
  return out;
}

}  // namespace

template <typename T>
void Conv2d<T>::forward_direct(const T* x, int h, int w, T* y) const {
  const auto xp = pad_planes(x, in_, h, w, padding_);
  simd::correlate(xp.data(), in_, h + 2 * padding_, w + 2 * padding_, weight_.value.data(), bias_.value.data(), out_,
                  kernel_, y);
}

// The input gradient is a full correlation of dy with the flipped, transposed kernel.
template <typename T>
void Conv2d<T>::backward_direct(const T* x, const T* dy, int h, int w, T* dx) {
  const int k = kernel_, pad = padding_;
  const int hp = h + 2 * pad, wp = w + 2 * pad;
  const int ho = hp - k + 1, wo = wp - k + 1;
  const auto xp = pad_planes(x, in_, h, w, pad);
  simd::correlate_weight_grad(xp.data(), in_, hp, wp, dy, out_, k, weight_.grad.data());

  std::vector<T> flipped(weight_.value.size());
  for (int o = 0; o < out_; ++o)
    for (int c = 0; c < in_; ++c)
      for (int ky = 0; ky < k; ++ky)
        for (int kx = 0; kx < k; ++kx)
          flipped[((static_cast<std::size_t>(c) * out_ + o) * k + (k - 1 - ky)) * k + (k - 1 - kx)] =
              weight_.value[((static_cast<std::size_t>(o) * in_ + c) * k + ky) * k + kx];
  const auto dyp = pad_planes(dy, out_, ho, wo, k - 1);
  std::vector<T> dxp(static_cast<std::size_t>(in_) * hp * wp);
  simd::correlate(dyp.data(), out_, ho + 2 * (k - 1), wo + 2 * (k - 1), flipped.data(), static_cast<const T*>(nullptr),
                  in_, k, dxp.data());
  for (int c = 0; c < in_; ++c)
    for (int iy = 0; iy < h; ++iy) {
      const T* src = dxp.data() + (static_cast<std::size_t>(c) * hp + iy + pad) * wp + pad;
      T* dst = dx + (static_cast<std::size_t>(c) * h + iy) * w;
      for (int ix = 0; ix < w; ++ix) dst[ix] += src[ix];
    }
}

template <typename T>
Tensor<T> Conv2d<T>::forward(const Tensor<T>& x) {
  require_shape(x, {-1, in_, -1, -1}, "Conv2d input");
  const int n = x.dim(0), h = x.dim(2), w = x.dim(3);
  const int ho = h + 2 * padding_ - kernel_ + 1, wo = w + 2 * padding_ - kernel_ + 1;
  if (ho <= 0 || wo <= 0) throw ShapeError("Conv2d: input smaller than kernel");
  if (use_direct()) {
    Tensor<T> y({n, out_, ho, wo});
    for (int b = 0; b < n; ++b)
      forward_direct(x.data() + static_cast<std::size_t>(b) * in_ * h * w, h, w,
                     y.data() + static_cast<std::size_t>(b) * out_ * ho * wo);
    input_ = x;
    return y;
  }
  const int kdim = in_ * kernel_ * kernel_;
  const int hw = ho * wo;
  const bool pointwise = kernel_ == 1 && padding_ == 0;
  if (!pointwise) col_.resize(static_cast<std::size_t>(kdim) * hw);
  Tensor<T> y({n, out_, ho, wo});
  for (int b = 0; b < n; ++b) {
    const T* xb = x.data() + static_cast<std::size_t>(b) * in_ * h * w;
    const T* col = xb;
    if (!pointwise) {
      im2col(xb, in_, h, w, kernel_, padding_, col_.data());
      col = col_.data();
    }
    T* yb = y.data() + static_cast<std::size_t>(b) * out_ * hw;
    for (int o = 0; o < out_; ++o) std::fill(yb + static_cast<std::size_t>(o) * hw, yb + static_cast<std::size_t>(o + 1) * hw, bias_.value[o]);
    simd::gemm(Trans::no, Trans::no, out_, hw, kdim, T(1), weight_.value.data(), kdim, col, hw, T(1), yb, hw);
  }
  input_ = x;
  return y;
}

template <typename T>
Tensor<T> Conv2d<T>::backward(const Tensor<T>& dy) {
  const int n = input_.dim(0), h = input_.dim(2), w = input_.dim(3);
  const int ho = dy.dim(2), wo = dy.dim(3);
  require_shape(dy, {n, out_, ho, wo}, "Conv2d grad");
  const int kdim = in_ * kernel_ * kernel_;
  const int hw = ho * wo;
  const bool pointwise = kernel_ == 1 && padding_ == 0;
  Tensor<T> dx(input_.shape());
  if (use_direct()) {
    for (int b = 0; b < n; ++b) {
      const T* dyb = dy.data() + static_cast<std::size_t>(b) * out_ * hw;
      for (int o = 0; o < out_; ++o) {
        T acc = T(0);
        for (int i = 0; i < hw; ++i) acc += dyb[static_cast<std::size_t>(o) * hw + i];
        bias_.grad[o] += acc;
      }
      backward_direct(input_.data() + static_cast<std::size_t>(b) * in_ * h * w, dyb, h, w,
                      dx.data() + static_cast<std::size_t>(b) * in_ * h * w);
    }
    return dx;
  }
  std::vector<T> dcol(pointwise ? 0 : static_cast<std::size_t>(kdim) * hw);
  if (!pointwise) col_.resize(static_cast<std::size_t>(kdim) * hw);
  for (int b = 0; b < n; ++b) {
    const T* xb = input_.data() + static_cast<std::size_t>(b) * in_ * h * w;
    const T* dyb = dy.data() + static_cast<std::size_t>(b) * out_ * hw;
    const T* col = xb;
    if (!pointwise) {
      im2col(xb, in_, h, w, kernel_, padding_, col_.data());
      col = col_.data();
    }
    for (int o = 0; o < out_; ++o) {
      T acc = T(0);
      for (int i = 0; i < hw; ++i) acc += dyb[static_cast<std::size_t>(o) * hw + i];
      bias_.grad[o] += acc;
    }
    simd::gemm(Trans::no, Trans::yes, out_, kdim, hw, T(1), dyb, hw, col, hw, T(1), weight_.grad.data(), kdim);
    T* dxb = dx.data() + static_cast<std::size_t>(b) * in_ * h * w;
    if (pointwise) {
      simd::gemm(Trans::yes, Trans::no, kdim, hw, out_, T(1), weight_.value.data(), kdim, dyb, hw, T(0), dxb, hw);
    } else {
      simd::gemm(Trans::yes, Trans::no, kdim, hw, out_, T(1), weight_.value.data(), kdim, dyb, hw, T(0),
                 dcol.data(), hw);
      col2im(dcol.data(), in_, h, w, kernel_, padding_, dxb);
    }
  }
  return dx;
}

template <typename T>
void Conv2d<T>::collect(const std::string& prefix, ParameterList<T>& out) {
  out.params.emplace_back(this->join(prefix, "weight"), &weight_);
  out.params.emplace_back(this->join(prefix, "bias"), &bias_);
}

// ---------------------------------------------------------------- BatchNorm

template <typename T>
BatchNorm<T>::BatchNorm(int channels, double momentum, double eps)
    : channels_(channels),
      momentum_(momentum),
      eps_(eps),
      gamma_({channels}),
      beta_({channels}),
      running_mean_({channels}, T(0)),
      running_var_({channels}, T(1)) {
  gamma_.value.fill(T(1));
}

template <typename T>
Tensor<T> BatchNorm<T>::forward(const Tensor<T>& x) {
  if (x.rank() != 2 && x.rank() != 4) throw ShapeError("BatchNorm expects [N,C] or [N,C,H,W]");
  if (x.dim(1) != channels_) throw ShapeError("BatchNorm channel mismatch: " + shape_string(x.shape()));
  const int n = x.dim(0);
  const std::size_t plane = x.rank() == 4 ? static_cast<std::size_t>(x.dim(2)) * x.dim(3) : 1;
  const std::size_t count = n * plane;
  Tensor<T> y(x.shape());
  xhat_ = Tensor<T>(x.shape());
  inv_std_.assign(channels_, T(0));
  cached_training_ = this->training_;
  for (int c = 0; c < channels_; ++c) {
    double mean, var;
    if (this->training_) {
      double sum = 0.0, sq = 0.0;
      for (int b = 0; b < n; ++b) {
        const T* p = x.data() + (static_cast<std::size_t>(b) * channels_ + c) * plane;
        for (std::size_t i = 0; i < plane; ++i) sum += p[i];
      }
      mean = sum / static_cast<double>(count);
      for (int b = 0; b < n; ++b) {
        const T* p = x.data() + (static_cast<std::size_t>(b) * channels_ + c) * plane;
        for (std::size_t i = 0; i < plane; ++i) sq += (p[i] - mean) * (p[i] - mean);
      }
      var = sq / static_cast<double>(count);
      const double unbiased = count > 1 ? sq / static_cast<double>(count - 1) : var;
      running_mean_[c] = static_cast<T>((1.0 - momentum_) * running_mean_[c] + momentum_ * mean);
      running_var_[c] = static_cast<T>((1.0 - momentum_) * running_var_[c] + momentum_ * unbiased);
    } else {
      mean = running_mean_[c];
      var = running_var_[c];
    }
    const double inv_std = 1.0 / std::sqrt(var + eps_);
    inv_std_[c] = static_cast<T>(inv_std);
    const T g = gamma_.value[c], bt = beta_.value[c];
    for (int b = 0; b < n; ++b) {
      const std::size_t off = (static_cast<std::size_t>(b) * channels_ + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        const T xh = static_cast<T>((x[off + i] - mean) * inv_std);
        xhat_[off + i] = xh;
        y[off + i] = g * xh + bt;
      }
    }
  }
  return y;
}

template <typename T>
Tensor<T> BatchNorm<T>::backward(const Tensor<T>& dy) {
  if (!dy.same_shape(xhat_)) throw ShapeError("BatchNorm grad shape mismatch");
  const int n = dy.dim(0);
  const std::size_t plane = dy.rank() == 4 ? static_cast<std::size_t>(dy.dim(2)) * dy.dim(3) : 1;
  const double count = static_cast<double>(n * plane);
  Tensor<T> dx(dy.shape());
  for (int c = 0; c < channels_; ++c) {
    double sum_dy = 0.0, sum_dy_xhat = 0.0;
    for (int b = 0; b < n; ++b) {
      const std::size_t off = (static_cast<std::size_t>(b) * channels_ + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        sum_dy += dy[off + i];
        sum_dy_xhat += static_cast<double>(dy[off + i]) * xhat_[off + i];
      }
    }
    gamma_.grad[c] += static_cast<T>(sum_dy_xhat);
    beta_.grad[c] += static_cast<T>(sum_dy);
    const double scale = static_cast<double>(gamma_.value[c]) * inv_std_[c];
    for (int b = 0; b < n; ++b) {
      const std::size_t off = (static_cast<std::size_t>(b) * channels_ + c) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        if (cached_training_) {
          dx[off + i] = static_cast<T>(scale * (dy[off + i] - sum_dy / count - xhat_[off + i] * sum_dy_xhat / count));
        } else {
          dx[off + i] = static_cast<T>(scale * dy[off + i]);
        }
      }
    }
  }
  return dx;
}

template <typename T>
void BatchNorm<T>::collect(const std::string& prefix, ParameterList<T>& out) {
  out.params.emplace_back(this->join(prefix, "weight"), &gamma_);
  out.params.emplace_back(this->join(prefix, "bias"), &beta_);
  out.buffers.emplace_back(this->join(prefix, "running_mean"), &running_mean_);
  out.buffers.emplace_back(this->join(prefix, "running_var"), &running_var_);
}

// ---------------------------------------------------------------- PRelu

template <typename T>
PRelu<T>::PRelu() : slope_({1}) {
  slope_.value[0] = T(0.25);
}

template <typename T>
Tensor<T> PRelu<T>::forward(const Tensor<T>& x) {
  input_ = x;
  Tensor<T> y(x.shape());
  const T a = slope_.value[0];
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > T(0) ? x[i] : a * x[i];
  return y;
}

template <typename T>
Tensor<T> PRelu<T>::backward(const Tensor<T>& dy) {
  if (!dy.same_shape(input_)) throw ShapeError("PRelu grad shape mismatch");
  Tensor<T> dx(dy.shape());
  const T a = slope_.value[0];
  double da = 0.0;
  for (std::size_t i = 0; i < dy.size(); ++i) {
    if (input_[i] > T(0)) {
      dx[i] = dy[i];
    } else {
      dx[i] = a * dy[i];
      da += static_cast<double>(input_[i]) * dy[i];
    }
  }
  slope_.grad[0] += static_cast<T>(da);
  return dx;
}

template <typename T>
void PRelu<T>::collect(const std::string& prefix, ParameterList<T>& out) {
  out.params.emplace_back(this->join(prefix, "weight"), &slope_);
}

// ---------------------------------------------------------------- Relu

template <typename T>
Tensor<T> Relu<T>::forward(const Tensor<T>& x) {
  output_ = Tensor<T>(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) output_[i] = std::max(x[i], T(0));
  return output_;
}

template <typename T>
Tensor<T> Relu<T>::backward(const Tensor<T>& dy) {
  if (!dy.same_shape(output_)) throw ShapeError("Relu grad shape mismatch");
  Tensor<T> dx(dy.shape());
  for (std::size_t i = 0; i < dy.size(); ++i) dx[i] = output_[i] > T(0) ? dy[i] : T(0);
  return dx;
}

// ---------------------------------------------------------------- MaxPool

template <typename T>
Tensor<T> MaxPool<T>::forward(const Tensor<T>& x) {
  require_shape(x, {-1, -1, -1, -1}, "MaxPool input");
  const int n = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
  const int ho = h / kh_, wo = w / kw_;
  if (ho == 0 || wo == 0) throw ShapeError("MaxPool: input smaller than window");
  input_shape_ = x.shape();
  Tensor<T> y({n, c, ho, wo});
  argmax_.assign(y.size(), 0);
  std::size_t o = 0;
  for (int b = 0; b < n; ++b)
    for (int ch = 0; ch < c; ++ch)
      for (int oy = 0; oy < ho; ++oy)
        for (int ox = 0; ox < wo; ++ox, ++o) {
          T best = -std::numeric_limits<T>::infinity();
          std::size_t best_idx = 0;
          for (int dy = 0; dy < kh_; ++dy)
            for (int dx = 0; dx < kw_; ++dx) {
              const std::size_t idx = ((static_cast<std::size_t>(b) * c + ch) * h + oy * kh_ + dy) * w + ox * kw_ + dx;
              if (x[idx] > best) best = x[idx], best_idx = idx;
            }
          y[o] = best;
          argmax_[o] = best_idx;
        }
  return y;
}

template <typename T>
Tensor<T> MaxPool<T>::backward(const Tensor<T>& dy) {
  if (dy.size() != argmax_.size()) throw ShapeError("MaxPool grad shape mismatch");
  Tensor<T> dx(input_shape_);
  for (std::size_t o = 0; o < dy.size(); ++o) dx[argmax_[o]] += dy[o];
  return dx;
}

// ---------------------------------------------------------------- Linear

template <typename T>
Linear<T>::Linear(int in_features, int out_features, Rng& rng)
    : in_(in_features), out_(out_features), weight_({out_features, in_features}), bias_({out_features}) {
  uniform_fill(weight_.value, 1.0 / std::sqrt(static_cast<double>(in_features)), rng);
}

template <typename T>
Tensor<T> Linear<T>::forward(const Tensor<T>& x) {
  require_shape(x, {-1, in_}, "Linear input");
  const int n = x.dim(0);
  Tensor<T> y({n, out_});
  for (int b = 0; b < n; ++b) std::copy(bias_.value.data(), bias_.value.data() + out_, y.data() + static_cast<std::size_t>(b) * out_);
  simd::gemm(Trans::no, Trans::yes, n, out_, in_, T(1), x.data(), in_, weight_.value.data(), in_, T(1), y.data(), out_);
  input_ = x;
  return y;
}

template <typename T>
Tensor<T> Linear<T>::backward(const Tensor<T>& dy) {
  const int n = input_.dim(0);
  require_shape(dy, {n, out_}, "Linear grad");
  simd::gemm(Trans::yes, Trans::no, out_, in_, n, T(1), dy.data(), out_, input_.data(), in_, T(1),
             weight_.grad.data(), in_);
  for (int b = 0; b < n; ++b)
    for (int o = 0; o < out_; ++o) bias_.grad[o] += dy[static_cast<std::size_t>(b) * out_ + o];
  Tensor<T> dx({n, in_});
  simd::gemm(Trans::no, Trans::no, n, in_, out_, T(1), dy.data(), out_, weight_.value.data(), in_, T(0), dx.data(), in_);
  return dx;
}

template <typename T>
void Linear<T>::collect(const std::string& prefix, ParameterList<T>& out) {
  out.params.emplace_back(this->join(prefix, "weight"), &weight_);
  out.params.emplace_back(this->join(prefix, "bias"), &bias_);
}

// ---------------------------------------------------------------- PixelShuffle

template <typename T>
Tensor<T> PixelShuffle<T>::forward(const Tensor<T>& x) {
  require_shape(x, {-1, -1, -1, -1}, "PixelShuffle input");
  const int n = x.dim(0), cin = x.dim(1), h = x.dim(2), w = x.dim(3);
  if (cin % (r_ * r_) != 0) throw ShapeError("PixelShuffle: channels not divisible by factor^2");
  const int c = cin / (r_ * r_);
  Tensor<T> y({n, c, h * r_, w * r_});
  for (int b = 0; b < n; ++b)
    for (int ch = 0; ch < c; ++ch)
      for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
          for (int yy = 0; yy < h; ++yy)
            for (int xx = 0; xx < w; ++xx) y.at(b, ch, yy * r_ + i, xx * r_ + j) = x.at(b, ch * r_ * r_ + i * r_ + j, yy, xx);
  return y;
}

template <typename T>
Tensor<T> PixelShuffle<T>::backward(const Tensor<T>& dy) {
  const int n = dy.dim(0), c = dy.dim(1), h = dy.dim(2) / r_, w = dy.dim(3) / r_;
  Tensor<T> dx({n, c * r_ * r_, h, w});
  for (int b = 0; b < n; ++b)
    for (int ch = 0; ch < c; ++ch)
      for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
          for (int yy = 0; yy < h; ++yy)
            for (int xx = 0; xx < w; ++xx) dx.at(b, ch * r_ * r_ + i * r_ + j, yy, xx) = dy.at(b, ch, yy * r_ + i, xx * r_ + j);
  return dx;
}

// ---------------------------------------------------------------- ScaledTanh

template <typename T>
Tensor<T> ScaledTanh<T>::forward(const Tensor<T>& x) {
  output_ = Tensor<T>(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) output_[i] = (std::tanh(x[i]) + T(1)) * T(0.5);
  return output_;
}

template <typename T>
Tensor<T> ScaledTanh<T>::backward(const Tensor<T>& dy) {
  if (!dy.same_shape(output_)) throw ShapeError("ScaledTanh grad shape mismatch");
  Tensor<T> dx(dy.shape());
  // y = (t + 1) / 2  =>  dy/dx = (1 - t^2) / 2 = 2 y (1 - y)
  for (std::size_t i = 0; i < dy.size(); ++i) dx[i] = dy[i] * T(2) * output_[i] * (T(1) - output_[i]);
  return dx;
}

#define TEXTSR_INSTANTIATE(T)       \
  template class Conv2d<T>;         \
  template class BatchNorm<T>;      \
  template class PRelu<T>;          \
  template class Relu<T>;           \
  template class MaxPool<T>;        \
  template class Linear<T>;         \
  template class PixelShuffle<T>;   \
  template class ScaledTanh<T>;

TEXTSR_INSTANTIATE(float)
TEXTSR_INSTANTIATE(double)

}  // namespace textsr::nn

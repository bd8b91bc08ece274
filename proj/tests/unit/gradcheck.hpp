// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

// Finite-difference helpers shared by the layer tests. The scalar objective
// is a fixed random projection L = sum(w * f(x)), so dL/dy = w.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "textsr/core/rng.hpp"
#include "textsr/nn/module.hpp"

namespace textsr::testing {

using DTensor = nn::Tensor<double>;

inline DTensor random_tensor(nn::Shape shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
  DTensor t(std::move(shape));
  for (auto& v : t.values()) v = uniform_real(rng, lo, hi);
  return t;
}

inline double dot(const DTensor& a, const DTensor& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double rel_error(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-3}); }

struct GradCheckResult {
  double max_input_error = 0.0;
  double max_param_error = 0.0;
};

/// `forward` must be a pure function of x and the parameters (use eval-mode
/// or batch-statistics layers consistently). `backward` consumes dL/dy.
inline GradCheckResult grad_check(const std::function<DTensor(const DTensor&)>& forward,
                                  const std::function<DTensor(const DTensor&)>& backward, DTensor x,
                                  nn::ParameterList<double> params, Rng& rng, double h = 1e-6,
                                  std::size_t max_probes = 40) {
  const DTensor y = forward(x);
  const DTensor w = random_tensor(y.shape(), rng);
  params.zero_grad();
  const DTensor dx = backward(w);
  GradCheckResult result;

  auto probe = [&](double& value) {
    const double saved = value;
    value = saved + h;
    const double up = dot(forward(x), w);
    value = saved - h;
    const double down = dot(forward(x), w);
    value = saved;
    return (up - down) / (2.0 * h);
  };
  auto stride_for = [&](std::size_t n) { return std::max<std::size_t>(1, n / max_probes); };

  for (std::size_t i = 0; i < x.size(); i += stride_for(x.size()))
    result.max_input_error = std::max(result.max_input_error, rel_error(probe(x[i]), dx[i]));
  for (auto& [name, p] : params.params)
    for (std::size_t i = 0; i < p->value.size(); i += stride_for(p->value.size()))
      result.max_param_error = std::max(result.max_param_error, rel_error(probe(p->value[i]), p->grad[i]));
  return result;
}

}  // namespace textsr::testing

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/train/optimizer.hpp"

#include <cmath>

#include "textsr/simd/kernels.hpp"

namespace textsr::train {

Adam::Adam(nn::ParameterList<float> params, AdamOptions options) : params_(std::move(params)), opt_(options) {
  for (const auto& [name, p] : params_.params) {
    m_.emplace_back(p->value.shape());
    v_.emplace_back(p->value.shape());
  }
}

void Adam::step() {
  ++t_;
  const simd::AdamStep s{static_cast<float>(opt_.learning_rate),
                         static_cast<float>(opt_.beta1),
                         static_cast<float>(opt_.beta2),
                         static_cast<float>(opt_.epsilon),
                         static_cast<float>(1.0 - std::pow(opt_.beta1, static_cast<double>(t_))),
                         static_cast<float>(1.0 - std::pow(opt_.beta2, static_cast<double>(t_)))};
  const auto update = simd::kernels().adam_update;
  for (std::size_t i = 0; i < params_.params.size(); ++i) {
    auto* p = params_.params[i].second;
    update(p->value.data(), p->grad.data(), m_[i].data(), v_[i].data(), p->value.size(), s);
  }
}

std::vector<std::pair<std::string, nn::Tensor<float>*>> Adam::state() {
  std::vector<std::pair<std::string, nn::Tensor<float>*>> out;
  for (std::size_t i = 0; i < params_.params.size(); ++i) {
    out.emplace_back("adam.m." + params_.params[i].first, &m_[i]);
    out.emplace_back("adam.v." + params_.params[i].first, &v_[i]);
  }
  return out;
}

}  // namespace textsr::train

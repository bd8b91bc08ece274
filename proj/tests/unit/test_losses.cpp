// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "gradcheck.hpp"
#include "textsr/core/error.hpp"
#include "textsr/losses/losses.hpp"

using namespace textsr;
using namespace textsr::losses;
using textsr::testing::DTensor;
using textsr::testing::random_tensor;

TEST_CASE("gradient field uses forward differences with a zero trailing edge") {
  DTensor row({1, 1, 3}, {0.0, 1.0, 0.0});
  const auto g = gradient_field(row);
  CHECK(g.gx[0] == 1.0);
  CHECK(g.gx[1] == -1.0);
  CHECK(g.gx[2] == 0.0);
  for (double v : g.gy.values()) CHECK(v == 0.0);

  DTensor checker({1, 4, 4});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) checker[i * 4 + j] = (i + j) % 2;
  const auto c = gradient_field(checker);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(c.gx[i * 4 + j]) == 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(c.gy[i * 4 + j]) == 1.0);
}

TEST_CASE("gradient profile loss on the two-pixel example") {
  DTensor hr({1, 1, 2}, {0.0, 1.0}), sr({1, 1, 2}, {0.0, 0.0});
  CHECK(gradient_profile_loss(sr, hr) == 0.25);
  CHECK(gradient_profile_loss(hr, sr) == 0.25);
  CHECK(gradient_profile_loss(hr, hr) == 0.0);
}

TEST_CASE("gradient profile loss is shift invariant and scale covariant") {
  Rng rng = make_rng(31);
  const DTensor a = random_tensor({3, 6, 7}, rng, 0, 1), b = random_tensor({3, 6, 7}, rng, 0, 1);
  DTensor a2 = a, b2 = b, a3 = a, b3 = b;
  for (std::size_t i = 0; i < a.size(); ++i) a2[i] += 0.3, b2[i] += 0.3, a3[i] *= 2.5, b3[i] *= 2.5;
  const double base = gradient_profile_loss(a, b);
  CHECK(gradient_profile_loss(a2, b2) == doctest::Approx(base).epsilon(1e-12));
  CHECK(gradient_profile_loss(a3, b3) == doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("loss gradients agree with finite differences") {
  Rng rng = make_rng(32);
  TrainConfig cfg;
  cfg.weight_gp_loss = 0.5;
  for (int trial = 0; trial < 5; ++trial) {
    DTensor sr = random_tensor({3, 8, 8}, rng, 0, 1);
    const DTensor hr = random_tensor({3, 8, 8}, rng, 0, 1);
    DTensor grad;
    total_loss(sr, hr, cfg, &grad);
    double worst = 0;
    const double h = 1e-7;
    for (std::size_t i = 0; i < sr.size(); ++i) {
      const double saved = sr[i];
      sr[i] = saved + h;
      const double up = total_loss(sr, hr, cfg).total;
      sr[i] = saved - h;
      const double down = total_loss(sr, hr, cfg).total;
      sr[i] = saved;
      worst = std::max(worst, testing::rel_error((up - down) / (2 * h), grad[i]));
    }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("total loss combines the weighted parts") {
  Rng rng = make_rng(33);
  const DTensor sr = random_tensor({3, 5, 5}, rng, 0, 1), hr = random_tensor({3, 5, 5}, rng, 0, 1);
  TrainConfig cfg;
  const auto parts = total_loss(sr, hr, cfg);
  CHECK(parts.total == doctest::Approx(parts.pixel + 1e-4 * parts.gp).epsilon(1e-14));
  cfg.weight_gp_loss = 0.0;
  const auto no_gp = total_loss(sr, hr, cfg);
  CHECK(no_gp.total == no_gp.pixel);
  CHECK(total_loss(sr, sr, cfg).total == 0.0);
}

TEST_CASE("loss shape mismatch is rejected") {
  DTensor a({1, 2, 2}), b({1, 2, 3});
  CHECK_THROWS_AS(gradient_profile_loss(a, b), ShapeError);
  CHECK_THROWS_AS(mse_loss(a, b), ShapeError);
}

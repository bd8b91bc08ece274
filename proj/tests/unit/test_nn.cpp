// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "gradcheck.hpp"
#include "textsr/nn/layers.hpp"
#include "textsr/nn/recurrent.hpp"
#include "textsr/nn/tps.hpp"

using namespace textsr;
using namespace textsr::nn;
using textsr::testing::DTensor;
using textsr::testing::grad_check;
using textsr::testing::random_tensor;

namespace {

template <typename Layer>
testing::GradCheckResult check_layer(Layer& layer, DTensor x, Rng& rng) {
  return grad_check([&](const DTensor& in) { return layer.forward(in); },
                    [&](const DTensor& dy) { return layer.backward(dy); }, std::move(x), layer.parameters(), rng);
}

}  // namespace

TEST_CASE("conv2d matches a direct convolution") {
  Rng rng = make_rng(1);
  Conv2d<double> conv(2, 3, 3, 1, rng);
  for (auto& b : conv.bias().value.values()) b = uniform_real(rng, -1, 1);
  const DTensor x = random_tensor({2, 2, 5, 6}, rng);
  const DTensor y = conv.forward(x);
  REQUIRE(y.shape() == Shape{2, 3, 5, 6});
  for (int n = 0; n < 2; ++n)
    for (int o = 0; o < 3; ++o)
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 6; ++j) {
          double acc = conv.bias().value[o];
          for (int c = 0; c < 2; ++c)
            for (int ky = 0; ky < 3; ++ky)
              for (int kx = 0; kx < 3; ++kx) {
                const int yy = i + ky - 1, xx = j + kx - 1;
                if (yy < 0 || yy >= 5 || xx < 0 || xx >= 6) continue;
                acc += conv.weight().value[((o * 2 + c) * 3 + ky) * 3 + kx] * x.at(n, c, yy, xx);
              }
          CHECK(y.at(n, o, i, j) == doctest::Approx(acc).epsilon(1e-12));
        }
}

TEST_CASE("layer gradients agree with finite differences") {
  Rng rng = make_rng(2);
  SUBCASE("conv 3x3") {
    Conv2d<double> conv(2, 3, 3, 1, rng);
    auto r = check_layer(conv, random_tensor({2, 2, 4, 5}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
    CHECK(r.max_param_error < 1e-6);
  }
  SUBCASE("conv 1x1") {
    Conv2d<double> conv(3, 2, 1, 0, rng);
    auto r = check_layer(conv, random_tensor({1, 3, 3, 4}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
    CHECK(r.max_param_error < 1e-6);
  }
  SUBCASE("batch norm in training mode") {
    BatchNorm<double> bn(3);
    auto r = check_layer(bn, random_tensor({2, 3, 3, 3}, rng), rng);
    CHECK(r.max_input_error < 1e-5);
    CHECK(r.max_param_error < 1e-5);
  }
  SUBCASE("batch norm on 2d input") {
    BatchNorm<double> bn(4);
    auto r = check_layer(bn, random_tensor({5, 4}, rng), rng);
    CHECK(r.max_input_error < 1e-5);
  }
  SUBCASE("prelu") {
    PRelu<double> act;
    auto r = check_layer(act, random_tensor({2, 2, 3, 3}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
    CHECK(r.max_param_error < 1e-6);
  }
  SUBCASE("linear") {
    Linear<double> fc(6, 4, rng);
    auto r = check_layer(fc, random_tensor({3, 6}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
    CHECK(r.max_param_error < 1e-6);
  }
  SUBCASE("pixel shuffle") {
    PixelShuffle<double> ps(2);
    auto r = check_layer(ps, random_tensor({1, 8, 2, 3}, rng), rng);
    CHECK(r.max_input_error < 1e-8);
  }
  SUBCASE("scaled tanh") {
    ScaledTanh<double> t;
    auto r = check_layer(t, random_tensor({1, 3, 2, 2}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
  }
  SUBCASE("max pool") {
    MaxPool<double> pool(2, 2);
    auto r = check_layer(pool, random_tensor({1, 2, 4, 6}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
  }
  SUBCASE("lstm") {
    Lstm<double> lstm(3, 4, false, rng);
    for (auto& b : lstm.bias().value.values()) b = uniform_real(rng, -0.5, 0.5);
    auto r = check_layer(lstm, random_tensor({5, 2, 3}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
    CHECK(r.max_param_error < 1e-6);
  }
  SUBCASE("reverse lstm") {
    Lstm<double> lstm(3, 2, true, rng);
    auto r = check_layer(lstm, random_tensor({4, 3, 3}, rng), rng);
    CHECK(r.max_input_error < 1e-6);
    CHECK(r.max_param_error < 1e-6);
  }
  SUBCASE("axis recurrence, both axes") {
    for (Axis axis : {Axis::horizontal, Axis::vertical}) {
      AxisRecurrence<double> rec(axis, 4, 2, rng);
      auto r = check_layer(rec, random_tensor({2, 4, 3, 5}, rng), rng);
      CHECK(r.max_input_error < 1e-6);
      CHECK(r.max_param_error < 1e-6);
    }
  }
}

TEST_CASE("pixel shuffle follows the channel-major sub-pixel layout") {
  PixelShuffle<double> ps(2);
  DTensor x({1, 4, 1, 1});
  for (int c = 0; c < 4; ++c) x[c] = c;
  const DTensor y = ps.forward(x);
  REQUIRE(y.shape() == Shape{1, 1, 2, 2});
  CHECK(y.at(0, 0, 0, 0) == 0.0);
  CHECK(y.at(0, 0, 0, 1) == 1.0);
  CHECK(y.at(0, 0, 1, 0) == 2.0);
  CHECK(y.at(0, 0, 1, 1) == 3.0);
}

TEST_CASE("batch norm uses running statistics in eval mode") {
  BatchNorm<double> bn(1);
  Rng rng = make_rng(3);
  DTensor x = random_tensor({4, 1, 2, 2}, rng, 2.0, 4.0);
  bn.forward(x);
  bn.set_training(false);
  const double mean = bn.running_mean()[0], var = bn.running_var()[0];
  const DTensor y = bn.forward(x);
  CHECK(y[0] == doctest::Approx((x[0] - mean) / std::sqrt(var + 1e-5)));
}

TEST_CASE("horizontal recurrence is equivariant to row permutations") {
  Rng rng = make_rng(4);
  AxisRecurrence<double> rec(Axis::horizontal, 3, 2, rng);
  const DTensor x = random_tensor({1, 3, 4, 5}, rng);
  const int perm[4] = {2, 0, 3, 1};
  DTensor xp(x.shape());
  for (int c = 0; c < 3; ++c)
    for (int h = 0; h < 4; ++h)
      for (int w = 0; w < 5; ++w) xp.at(0, c, h, w) = x.at(0, c, perm[h], w);
  const DTensor y = rec.forward(x), yp = rec.forward(xp);
  double max_diff = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int h = 0; h < 4; ++h)
      for (int w = 0; w < 5; ++w) max_diff = std::max(max_diff, std::abs(yp.at(0, c, h, w) - y.at(0, c, perm[h], w)));
  CHECK(max_diff < 1e-12);
}

TEST_CASE("vertical recurrence is equivariant to column permutations") {
  Rng rng = make_rng(5);
  AxisRecurrence<double> rec(Axis::vertical, 2, 3, rng);
  const DTensor x = random_tensor({2, 2, 3, 4}, rng);
  const int perm[4] = {3, 1, 0, 2};
  DTensor xp(x.shape());
  for (int n = 0; n < 2; ++n)
    for (int c = 0; c < 2; ++c)
      for (int h = 0; h < 3; ++h)
        for (int w = 0; w < 4; ++w) xp.at(n, c, h, w) = x.at(n, c, h, perm[w]);
  const DTensor y = rec.forward(x), yp = rec.forward(xp);
  double max_diff = 0.0;
  for (int n = 0; n < 2; ++n)
    for (int c = 0; c < 6; ++c)
      for (int h = 0; h < 3; ++h)
        for (int w = 0; w < 4; ++w)
          max_diff = std::max(max_diff, std::abs(yp.at(n, c, h, w) - y.at(n, c, h, perm[w])));
  CHECK(max_diff < 1e-12);
}

TEST_CASE("a forward sequence reversed equals the reverse cell on reversed input") {
  Rng rng = make_rng(6);
  Lstm<double> fwd(2, 3, false, rng);
  Rng rng2 = make_rng(6);
  Lstm<double> bwd(2, 3, true, rng2);
  const DTensor x = random_tensor({4, 1, 2}, rng);
  DTensor xr(x.shape());
  for (int t = 0; t < 4; ++t)
    for (int i = 0; i < 2; ++i) xr[t * 2 + i] = x[(3 - t) * 2 + i];
  const DTensor a = fwd.forward(x), b = bwd.forward(xr);
  for (int t = 0; t < 4; ++t)
    for (int j = 0; j < 3; ++j) CHECK(a[t * 3 + j] == doctest::Approx(b[(3 - t) * 3 + j]).epsilon(1e-12));
}

TEST_CASE("pixel centre normalisation round-trips") {
  CHECK(pixel_to_normalized(0, 4) == doctest::Approx(-0.75));
  CHECK(pixel_to_normalized(3, 4) == doctest::Approx(0.75));
  for (int i = 0; i < 10; ++i) CHECK(normalized_to_pixel(pixel_to_normalized(i, 10), 10) == doctest::Approx(i));
}

TEST_CASE("fiducial points lie on two rows inside the margin") {
  const auto p = fiducial_points(20);
  REQUIRE(p.size() == 40);
  for (int i = 0; i < 10; ++i) {
    CHECK(p[2 * i + 1] == doctest::Approx(-0.9));
    CHECK(p[2 * (i + 10) + 1] == doctest::Approx(0.9));
  }
  CHECK(p[0] == doctest::Approx(-0.9));
  CHECK(p[2 * 9] == doctest::Approx(0.9));
  CHECK_THROWS(fiducial_points(5));
}

TEST_CASE("tps with source = target points gives the identity grid") {
  TpsGrid<double> tps(6, 10, 8);
  DTensor control({1, 8, 2}, std::vector<double>(tps.target_points()));
  const DTensor grid = tps.forward(control);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 10; ++j) {
      CHECK(grid[(i * 10 + j) * 2] == doctest::Approx(pixel_to_normalized(j, 10)).epsilon(1e-9));
      CHECK(grid[(i * 10 + j) * 2 + 1] == doctest::Approx(pixel_to_normalized(i, 6)).epsilon(1e-9));
    }
}

TEST_CASE("tps reproduces an affine map of the control points exactly") {
  TpsGrid<double> tps(4, 8, 6);
  const auto& t = tps.target_points();
  DTensor control({1, 6, 2});
  for (int k = 0; k < 6; ++k) {
    control[2 * k] = 0.8 * t[2 * k] + 0.1 * t[2 * k + 1] + 0.05;
    control[2 * k + 1] = -0.2 * t[2 * k] + 0.9 * t[2 * k + 1] - 0.1;
  }
  const DTensor grid = tps.forward(control);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) {
      const double u = pixel_to_normalized(j, 8), v = pixel_to_normalized(i, 4);
      CHECK(grid[(i * 8 + j) * 2] == doctest::Approx(0.8 * u + 0.1 * v + 0.05).epsilon(1e-9));
      CHECK(grid[(i * 8 + j) * 2 + 1] == doctest::Approx(-0.2 * u + 0.9 * v - 0.1).epsilon(1e-9));
    }
}

TEST_CASE("tps and grid sampler gradients agree with finite differences") {
  Rng rng = make_rng(7);
  TpsGrid<double> tps(3, 5, 4);
  GridSampler<double> sampler;
  const DTensor input = random_tensor({1, 2, 4, 6}, rng);
  DTensor control({1, 4, 2}, std::vector<double>(tps.target_points()));
  for (auto& v : control.values()) v += uniform_real(rng, -0.15, 0.15);
  auto fwd = [&](const DTensor& c) { return sampler.forward(input, tps.forward(c), 3, 5); };
  auto bwd = [&](const DTensor& dy) { return tps.backward(sampler.backward(dy).second); };
  auto r = grad_check(fwd, bwd, control, {}, rng);
  CHECK(r.max_input_error < 1e-5);

  DTensor grid = tps.forward(control);
  auto fwd_in = [&](const DTensor& in) { return sampler.forward(in, grid, 3, 5); };
  auto bwd_in = [&](const DTensor& dy) { return sampler.backward(dy).first; };
  auto r2 = grad_check(fwd_in, bwd_in, input, {}, rng);
  CHECK(r2.max_input_error < 1e-6);
}

TEST_CASE("grid sampler with an identity grid copies the input") {
  Rng rng = make_rng(8);
  const DTensor input = random_tensor({2, 3, 4, 7}, rng);
  DTensor grid({2, 28, 2});
  for (int n = 0; n < 2; ++n)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 7; ++j) {
        grid[((n * 28) + i * 7 + j) * 2] = pixel_to_normalized(j, 7);
        grid[((n * 28) + i * 7 + j) * 2 + 1] = pixel_to_normalized(i, 4);
      }
  GridSampler<double> sampler;
  const DTensor out = sampler.forward(input, grid, 4, 7);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(input[i]).epsilon(1e-12));
}

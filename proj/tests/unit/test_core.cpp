// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "textsr/core/config.hpp"
#include "textsr/core/error.hpp"
#include "textsr/core/image.hpp"
#include "textsr/core/record.hpp"
#include "textsr/core/rng.hpp"

using namespace textsr;

TEST_CASE("config parsing") {
  auto [m, t] = parse_config("num_srb=5, hidden_units=32\n# comment\nweight_gp_loss = 1e-4\n");
  CHECK(m == ModelConfig{});
  CHECK(t.weight_gp_loss == 1e-4);
  CHECK_THROWS_AS(parse_config("num_srb=0"), ConfigError);
  CHECK_THROWS_AS(parse_config("bogus=1"), ConfigError);
  CHECK_THROWS_AS(parse_config("num_srb=five"), ConfigError);
  CHECK_THROWS_AS(parse_config("hidden_units=16"), ConfigError);
  CHECK_NOTHROW(parse_config("hidden_units=16, feature_channels=32"));
  CHECK_THROWS_AS(parse_config("learning_rate=0"), ConfigError);
  try {
    parse_config("num_srb=x");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("num_srb") != std::string::npos);
  }
}

TEST_CASE("config serialisation round-trips") {
  ModelConfig m;
  m.num_srb = 7;
  m.hidden_units = 64;
  m.feature_channels = 128;
  m.use_mask = false;
  TrainConfig t;
  t.learning_rate = 3.7e-4;
  t.weight_gp_loss = 0.1 + 0.2;
  t.seed = 18446744073709551557ull;
  t.synthetic_lr = true;
  auto [m2, t2] = parse_config(serialize(m) + "\n" + serialize(t));
  CHECK(m2 == m);
  CHECK(t2 == t);
}

TEST_CASE("grayscale conversion") {
  Image red(3, 2, 2);
  for (auto& v : red.plane(0)) v = 1.0f;
  const Image gray_red = to_grayscale(red), gray_white = to_grayscale(Image(3, 2, 2, 1.0f)),
              gray_black = to_grayscale(Image(3, 2, 2, 0.0f));
  for (float v : gray_red.values()) CHECK(v == doctest::Approx(0.299));
  for (float v : gray_white.values()) CHECK(v == doctest::Approx(1.0));
  for (float v : gray_black.values()) CHECK(v == 0.0f);
  CHECK_THROWS_AS(to_grayscale(Image(1, 2, 2)), ShapeError);

  Rng rng = make_rng(1);
  Image a(3, 3, 3), b(3, 3, 3), mix(3, 3, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.values()[i] = static_cast<float>(uniform_real(rng, 0, 1));
    b.values()[i] = static_cast<float>(uniform_real(rng, 0, 1));
    mix.values()[i] = 0.3f * a.values()[i] + 0.7f * b.values()[i];
  }
  const Image ga = to_grayscale(a), gb = to_grayscale(b), gm = to_grayscale(mix);
  for (std::size_t i = 0; i < ga.size(); ++i)
    CHECK(gm.values()[i] == doctest::Approx(0.3 * ga.values()[i] + 0.7 * gb.values()[i]).epsilon(1e-6));
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a = make_rng(5), b = make_rng(5), c = make_rng(5, 1);
  const auto x = a(), y = b(), z = c();
  CHECK(x == y);
  CHECK(x != z);
  for (int i = 0; i < 100; ++i) {
    const int v = uniform_int(a, 3, 5);
    CHECK((v >= 3 && v <= 5));
  }
}

TEST_CASE("record enums round-trip through text") {
  for (auto s : {Subset::easy, Subset::medium, Subset::hard, Subset::train}) CHECK(parse_subset(to_string(s)) == s);
  for (auto s : {Source::realsr, Source::srraw, Source::synthetic}) CHECK(parse_source(to_string(s)) == s);
  for (auto d : {Direction::horizontal, Direction::vertical_plus, Direction::vertical_minus, Direction::top_down,
                 Direction::curve, Direction::ignored})
    CHECK(parse_direction(to_string(d)) == d);
  CHECK_THROWS_AS(parse_source("flickr"), DataError);
}

TEST_CASE("record validation") {
  TextPairRecord r;
  r.lr = Image(3, 16, 64);
  r.hr = Image(3, 32, 128);
  r.focal_lr_mm = 35;
  r.focal_hr_mm = 70;
  CHECK_NOTHROW(r.validate());
  r.focal_hr_mm = 20;
  CHECK_THROWS_AS(r.validate(), DataError);
  r.focal_hr_mm = 70;
  r.hr = Image(3, 32, 120);
  CHECK_THROWS_AS(r.validate(), DataError);
}

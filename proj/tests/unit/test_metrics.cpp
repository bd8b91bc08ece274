// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "textsr/core/error.hpp"
#include "textsr/core/rng.hpp"
#include "textsr/metrics/metrics.hpp"

using namespace textsr;
using namespace textsr::metrics;

namespace {

Image random_image(int c, int h, int w, Rng& rng) {
  Image img(c, h, w);
  for (auto& v : img.values()) v = static_cast<float>(uniform_real(rng, 0, 1));
  return img;
}

}  // namespace

TEST_CASE("psnr closed forms") {
  Image black(3, 4, 4, 0.0f), white(3, 4, 4, 1.0f), grey(3, 4, 4, 0.1f);
  CHECK(std::isinf(psnr(black, black)));
  CHECK(psnr(black, white) == doctest::Approx(0.0));
  CHECK(psnr(black, grey) == doctest::Approx(20.0).epsilon(1e-6));
  CHECK_THROWS_AS(psnr(black, Image(3, 4, 5)), ShapeError);
}

TEST_CASE("psnr decreases with noise level") {
  Rng rng = make_rng(41);
  const Image a = random_image(3, 16, 16, rng);
  double last = std::numeric_limits<double>::infinity();
  for (double sigma : {0.01, 0.05, 0.2}) {
    Image b = a;
    Rng noise = make_rng(42);
    for (auto& v : b.values()) v += static_cast<float>(sigma * normal(noise));
    const double p = psnr(a, b);
    CHECK(p < last);
    last = p;
  }
}

TEST_CASE("ssim properties") {
  Rng rng = make_rng(43);
  const Image a = random_image(3, 20, 24, rng), b = random_image(3, 20, 24, rng);
  CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
  CHECK(ssim(a, b) < 1.0);
  CHECK(ssim(a, b) >= -1.0);
  const double expected = (kSsimC1 * kSsimC2) / ((1.0 + kSsimC1) * kSsimC2);
  CHECK(ssim(Image(3, 12, 12, 0.0f), Image(3, 12, 12, 1.0f)) == doctest::Approx(expected).epsilon(1e-9));
  CHECK_THROWS_AS(ssim(Image(1, 10, 30), Image(1, 10, 30)), ShapeError);
}

TEST_CASE("report averages weight subsets by count") {
  MetricsAccumulator acc;
  acc.add_scores(Subset::easy, 10.0, 0.5);
  acc.add_scores(Subset::easy, 10.0, 0.5);
  acc.add_scores(Subset::hard, 20.0, 0.7);
  acc.add_scores(Subset::hard, 20.0, 0.7);
  auto r = acc.report();
  CHECK(r.average.psnr_db == doctest::Approx(15.0));
  CHECK(r.per_subset.size() == 2);
  CHECK(r.per_subset.count(Subset::medium) == 0);

  MetricsAccumulator tbl;
  const std::pair<Subset, int> counts[] = {{Subset::easy, 1619}, {Subset::medium, 1411}, {Subset::hard, 1343}};
  const double scores[] = {22.0, 19.0, 17.0};
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < counts[s].second; ++i) tbl.add_scores(counts[s].first, scores[s], 0.5);
  const auto rep = tbl.report();
  CHECK(rep.average.n == 4373);
  CHECK(rep.average.psnr_db == doctest::Approx((1619 * 22.0 + 1411 * 19.0 + 1343 * 17.0) / 4373.0).epsilon(1e-12));
}

TEST_CASE("identical single pair reports infinite psnr") {
  Rng rng = make_rng(44);
  const Image a = random_image(3, 16, 16, rng);
  const auto rep = aggregate_report({{a, a, Subset::easy}});
  CHECK(rep.per_subset.at(Subset::easy).psnr_infinite());
  CHECK(rep.per_subset.at(Subset::easy).ssim == doctest::Approx(1.0));
  CHECK(rep.to_json().find("\"inf\"") != std::string::npos);
  CHECK_THROWS(aggregate_report({}));
}

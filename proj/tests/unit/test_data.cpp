// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "tempdir.hpp"
#include "textsr/core/error.hpp"
#include "textsr/core/rng.hpp"
#include "textsr/data/allocation.hpp"
#include "textsr/data/batch.hpp"
#include "textsr/data/image_io.hpp"
#include "textsr/data/manifest.hpp"
#include "textsr/data/toy.hpp"
#include "textsr/data/transforms.hpp"
#include "textsr/metrics/metrics.hpp"

using namespace textsr;
using namespace textsr::data;

namespace {

Image random_image(int c, int h, int w, Rng& rng) {
  Image img(c, h, w);
  for (auto& v : img.values()) v = static_cast<float>(uniform_real(rng, 0, 1));
  return img;
}

Image gray_rgb(int h, int w, std::initializer_list<float> values) {
  Image img(3, h, w);
  int i = 0;
  for (float v : values) {
    for (int c = 0; c < 3; ++c) img.plane(c)[i] = v;
    ++i;
  }
  return img;
}

// Non-separable evaluation of the same resampling rule, one output pixel at a time.
double keys(double x) {
  x = std::abs(x);
  if (x < 1) return 1.5 * x * x * x - 2.5 * x * x + 1;
  if (x < 2) return -0.5 * x * x * x + 2.5 * x * x - 4 * x + 2;
  return 0;
}

double oracle_resize_pixel(const Image& img, int c, int oy, int ox, int oh, int ow) {
  auto weights = [](int in, int out, int i) {
    const double scale = double(in) / out, fs = std::max(scale, 1.0), centre = (i + 0.5) * scale;
    std::vector<double> w(in, 0.0);
    double total = 0;
    for (int j = 0; j < in; ++j) {
      if (std::abs(j + 0.5 - centre) >= 2 * fs) continue;
      w[j] = keys((j + 0.5 - centre) / fs);
      total += w[j];
    }
    for (double& v : w) v /= total;
    return w;
  };
  const auto wy = weights(img.height(), oh, oy), wx = weights(img.width(), ow, ox);
  double s = 0;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) s += wy[y] * wx[x] * img.at(c, y, x);
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace

TEST_CASE("subset allocation examples and grid") {
  CHECK(allocate_subset(Source::realsr, 50) == Subset::easy);
  CHECK(allocate_subset(Source::srraw, 100) == Subset::medium);
  CHECK(allocate_subset(Source::srraw, 35) == Subset::hard);
  CHECK(allocate_subset(Source::srraw, 50) == Subset::hard);
  CHECK_THROWS_AS(allocate_subset(Source::synthetic, 50), DataError);
  CHECK_THROWS_AS(allocate_subset(Source::realsr, 0), DataError);
  int mismatches = 0;
  for (double f = 0.5; f <= 240; f += 0.5) {
    mismatches += allocate_subset(Source::realsr, f) != Subset::easy;
    mismatches += allocate_subset(Source::srraw, f) != (f > 50 ? Subset::medium : Subset::hard);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("height buckets partition the positive integers") {
  CHECK(bucket_by_height(7) == HeightBucket::discard);
  CHECK(bucket_by_height(8) == HeightBucket::lr_group);
  CHECK(bucket_by_height(15) == HeightBucket::lr_group);
  CHECK(bucket_by_height(16) == HeightBucket::hr_group);
  CHECK(bucket_by_height(20) == HeightBucket::hr_group);
  CHECK(bucket_by_height(32) == HeightBucket::hr_group);
  CHECK(bucket_by_height(33) == HeightBucket::oversize);
  CHECK(bucket_by_height(1) == HeightBucket::discard);
  CHECK(bucket_target_height(HeightBucket::lr_group) == 16);
  CHECK(bucket_target_height(HeightBucket::hr_group) == 32);
}

TEST_CASE("bicubic resize") {
  Rng rng = make_rng(3);
  SUBCASE("identity") {
    const Image img = random_image(3, 32, 128, rng);
    const Image out = resize_bicubic(img, 32, 128);
    for (std::size_t i = 0; i < img.size(); ++i) CHECK(std::abs(out.values()[i] - img.values()[i]) < 1e-6);
  }
  SUBCASE("constant") {
    const Image img(3, 11, 37, 0.37f);
    for (auto [h, w] : {std::pair{16, 64}, std::pair{5, 9}, std::pair{32, 128}}) {
      const Image out = resize_bicubic(img, h, w);
      CHECK(out.height() == h);
      CHECK(out.width() == w);
      for (float v : out.values()) CHECK(v == doctest::Approx(0.37).epsilon(1e-6));
    }
  }
  SUBCASE("matches direct evaluation") {
    const Image img = random_image(1, 10, 40, rng);
    for (auto [h, w] : {std::pair{16, 64}, std::pair{5, 20}, std::pair{7, 13}}) {
      const Image out = resize_bicubic(img, h, w);
      double worst = 0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) worst = std::max(worst, std::abs(out.at(0, y, x) - oracle_resize_pixel(img, 0, y, x, h, w)));
      CHECK(worst < 1e-6);
    }
  }
  SUBCASE("stripes average out") {
    Image hr(3, 32, 128);
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 128; ++x) hr.at(c, y, x) = x % 2 ? 1.0f : 0.0f;
    const Image lr = make_synthetic_lr(hr);
    CHECK(lr.height() == 16);
    CHECK(lr.width() == 64);
    for (int y = 0; y < 16; ++y)
      for (int x = 2; x < 62; ++x) CHECK(lr.at(0, y, x) == doctest::Approx(0.5).epsilon(1e-6));
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 64; ++x) CHECK(std::abs(lr.at(0, y, x) - oracle_resize_pixel(hr, 0, y, x, 16, 64)) < 1e-6);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(resize_bicubic(Image(), 4, 4), DataError);
    CHECK_THROWS_AS(make_synthetic_lr(Image(3, 5, 8)), DataError);
  }
}

TEST_CASE("synthetic LR loses information") {
  Rng rng = make_rng(8);
  const Image hr = random_image(3, 32, 128, rng);
  const Image up = resize_bicubic(make_synthetic_lr(hr), 32, 128);
  const double p = metrics::psnr(up, hr);
  CHECK(std::isfinite(p));
  CHECK(p < metrics::psnr(hr, hr));
}

TEST_CASE("normalize_pair produces canonical shapes") {
  Rng rng = make_rng(4);
  const auto [lr, hr] = normalize_pair(random_image(3, 10, 40, rng), random_image(3, 24, 90, rng));
  CHECK(lr.height() == 16);
  CHECK(lr.width() == 64);
  CHECK(hr.height() == 32);
  CHECK(hr.width() == 128);
  CHECK_THROWS_AS(normalize_pair(Image(3, 0, 0), hr), DataError);
}

TEST_CASE("rotations") {
  Rng rng = make_rng(5);
  const Image img = random_image(3, 4, 7, rng);
  const Image cw = rotate90_cw(img);
  CHECK(cw.height() == 7);
  CHECK(cw.width() == 4);
  // The first row becomes the last column, read top to bottom.
  for (int x = 0; x < 7; ++x) CHECK(cw.at(0, x, 3) == img.at(0, 0, x));
  CHECK(rotate90_ccw(cw) == img);
  CHECK(rotate180(rotate180(img)) == img);
  CHECK(rotate90_cw(cw) == rotate180(img));
  CHECK(orient_horizontal(img, Direction::curve) == img);
  CHECK(orient_horizontal(img, Direction::vertical_minus) == rotate90_ccw(img));
  CHECK_THROWS_AS(orient_horizontal(img, Direction::ignored), DataError);
}

TEST_CASE("binary mask") {
  SUBCASE("constant gives zeros") {
    const Image m = make_binary_mask(Image(3, 4, 4, 0.6f));
    for (float v : m.values()) CHECK(v == 0.0f);
  }
  SUBCASE("minority side is marked") {
    const Image m = make_binary_mask(gray_rgb(2, 2, {0.2f, 0.2f, 0.2f, 0.8f}));
    CHECK(std::vector<float>(m.values().begin(), m.values().end()) == std::vector<float>{0, 0, 0, 1});
    const Image dark = make_binary_mask(gray_rgb(2, 2, {0.8f, 0.8f, 0.8f, 0.2f}));
    CHECK(std::vector<float>(dark.values().begin(), dark.values().end()) == std::vector<float>{0, 0, 0, 1});
  }
  SUBCASE("tie goes to the brighter side") {
    const Image m = make_binary_mask(gray_rgb(1, 2, {0.1f, 0.9f}));
    CHECK(m.values()[0] == 0.0f);
    CHECK(m.values()[1] == 1.0f);
  }
  SUBCASE("polarity inversion") {
    Rng rng = make_rng(6);
    for (int trial = 0; trial < 50; ++trial) {
      const int h = 2 * uniform_int(rng, 2, 8) + 1, w = 2 * uniform_int(rng, 2, 16) + 1;
      const float lo = static_cast<float>(uniform_real(rng, 0, 0.4)), hi = static_cast<float>(uniform_real(rng, 0.6, 1));
      const double p = uniform_real(rng, 0.05, 0.95);
      Image img(3, h, w), inv(3, h, w);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const float v = uniform_real(rng, 0, 1) < p ? hi : lo;
          for (int c = 0; c < 3; ++c) img.at(c, y, x) = v, inv.at(c, y, x) = 1.0f - v;
        }
      const Image a = make_binary_mask(img), b = make_binary_mask(inv);
      CHECK(a == b);
      for (float v : a.values()) CHECK((v == 0.0f || v == 1.0f));
    }
  }
}

TEST_CASE("misalignment") {
  Rng rng = make_rng(7);
  const Image lr = random_image(3, 16, 64, rng);
  CHECK(misalign_window(16, 64) == std::pair{14, 58});

  Rng a = make_rng(99), b = make_rng(99);
  const Image x = misalign_augment(lr, a), y = misalign_augment(lr, b);
  CHECK(x == y);
  CHECK(x.same_shape(lr));
  for (float v : x.values()) CHECK((v >= 0.0f && v <= 1.0f));

  Image corner(3, 14, 58);
  for (int c = 0; c < 3; ++c)
    for (int yy = 0; yy < 14; ++yy)
      for (int xx = 0; xx < 58; ++xx) corner.at(c, yy, xx) = lr.at(c, yy, xx);
  CHECK(misalign_crop(lr, 0, 0) == resize_bicubic(corner, 16, 64));
  CHECK_THROWS_AS(misalign_crop(lr, 3, 0), DataError);

  const Image flat(3, 16, 64, 0.25f);
  const Image flat_out = misalign_augment(flat, a);
  for (float v : flat_out.values()) CHECK(v == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("png round trip") {
  testing::TempDir dir;
  Rng rng = make_rng(9);
  Image img = random_image(3, 5, 7, rng);
  for (auto& v : img.values()) v = std::round(v * 255.0f) / 255.0f;
  write_png(dir / "a.png", img);
  CHECK(read_png(dir / "a.png") == img);

  const Image gray = take_channels(img, 1);
  write_png(dir / "g.png", gray);
  const Image rgb = read_rgb(dir / "g.png");
  CHECK(rgb.channels() == 3);
  for (int c = 0; c < 3; ++c) CHECK(std::equal(rgb.plane(c).begin(), rgb.plane(c).end(), gray.values().begin()));

  CHECK_THROWS_AS(write_png(dir / "bad.png", Image(4, 2, 2)), ShapeError);
  CHECK_THROWS_AS(read_png(dir / "missing.png"), DataError);
}

TEST_CASE("manifest and batches") {
  testing::TempDir dir;
  const auto records = make_toy_records(10, 11, true);
  const DatasetManifest written = write_toy_dataset(records, dir / "manifest.jsonl");
  const DatasetManifest m = load_manifest(dir / "manifest.jsonl");
  CHECK(m.records == written.records);
  CHECK(m.subset_counts().at(Subset::easy) == 4);
  CHECK(m.subset_counts().at(Subset::medium) == 3);

  const auto loaded = load_records(m);
  REQUIRE(loaded.size() == 10);
  CHECK(loaded[3].text == records[3].text);
  CHECK(metrics::psnr(loaded[3].hr, records[3].hr) > 45);
  CHECK(load_records(m, Subset::hard).size() == 3);

  SUBCASE("batch sizes") {
    BatchIterator it(loaded, {.batch_size = 4, .shuffle = false, .use_mask = true});
    std::vector<int> sizes;
    Batch b;
    while (it.next(b)) {
      sizes.push_back(b.size());
      CHECK(b.lr.shape() == nn::Shape{b.size(), 4, 16, 64});
      CHECK(b.hr.shape() == nn::Shape{b.size(), 3, 32, 128});
    }
    CHECK(sizes == std::vector<int>{4, 4, 2});
    CHECK(it.num_batches() == 3);
  }
  SUBCASE("shuffle is seeded") {
    auto order = [&](std::uint64_t seed, int epoch) {
      BatchIterator it(loaded, {.batch_size = 3, .shuffle = true, .seed = seed, .use_mask = false});
      it.start_epoch(epoch);
      std::vector<std::size_t> ids;
      Batch b;
      while (it.next(b)) ids.insert(ids.end(), b.ids.begin(), b.ids.end());
      return ids;
    };
    CHECK(order(5, 0) == order(5, 0));
    CHECK(order(5, 0) != order(5, 1));
    auto sorted = order(5, 2);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
  }
  SUBCASE("subset filter") {
    BatchIterator it(loaded, {.batch_size = 16, .use_mask = false, .subset = Subset::easy});
    Batch b;
    REQUIRE(it.next(b));
    CHECK(b.size() == 4);
    for (Subset s : b.subsets) CHECK(s == Subset::easy);
    CHECK_FALSE(it.next(b));
  }
  SUBCASE("augmentation is reproducible") {
    BatchOptions opt{.batch_size = 5, .seed = 3, .use_mask = true, .misalign = true, .synthetic_lr = true};
    BatchIterator a(loaded, opt), c(loaded, opt);
    Batch x, y;
    REQUIRE(a.next(x));
    REQUIRE(c.next(y));
    CHECK(x.lr.storage() == y.lr.storage());
    CHECK(x.ids == y.ids);
  }
  SUBCASE("missing file names the row") {
    std::filesystem::remove(dir / "hr/000004.png");
    try {
      load_manifest(dir / "manifest.jsonl");
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(":5:") != std::string::npos);
    }
  }
}

TEST_CASE("toy rendering") {
  const Image m = render_text_mask("AB");
  float ink = 0;
  for (float v : m.values()) ink += v;
  int bits = 0;
  for (char c : std::string("AB"))
    for (auto row : ToyFont::rows(c)) bits += __builtin_popcount(row);
  CHECK(ink == bits * 9);
  CHECK_THROWS_AS(ToyFont::rows('?'), DataError);

  std::set<std::string> texts;
  const auto recs = make_toy_records(20, 1);
  for (const auto& r : recs) {
    CHECK(r.text.size() >= 3);
    CHECK(r.text.size() <= 6);
    CHECK(r.lr == make_synthetic_lr(r.hr));
    CHECK(r.subset == Subset::train);
    texts.insert(r.text);
  }
  CHECK(texts.size() > 15);
  CHECK(make_toy_records(5, 1)[4].hr == recs[4].hr);
}

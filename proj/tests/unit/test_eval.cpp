// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "textsr/core/error.hpp"
#include "textsr/core/rng.hpp"
#include "textsr/data/toy.hpp"
#include "textsr/data/transforms.hpp"
#include "textsr/eval/accuracy.hpp"
#include "textsr/eval/compare.hpp"

using namespace textsr;
using namespace textsr::eval;

namespace {

// Looks the image up among known samples and returns its label.
class OracleRecognizer : public Recognizer {
 public:
  explicit OracleRecognizer(std::vector<std::pair<Image, std::string>> known) : known_(std::move(known)) {}
  std::string recognize(const Image& img) override {
    for (const auto& [k, text] : known_)
      if (k == img) return text;
    throw std::runtime_error("unknown image");
  }

 private:
  std::vector<std::pair<Image, std::string>> known_;
};

class ConstantRecognizer : public Recognizer {
 public:
  explicit ConstantRecognizer(std::string s) : s_(std::move(s)) {}
  std::string recognize(const Image&) override { return s_; }

 private:
  std::string s_;
};

std::vector<EvalSample> toy_samples(std::size_t n, std::uint64_t seed) {
  std::vector<EvalSample> out;
  for (auto& r : data::make_toy_records(n, seed, true)) out.push_back({r.hr, r.text, r.subset});
  return out;
}

}  // namespace

TEST_CASE("text normalisation") {
  CHECK(normalize_text("Star!") == "star");
  CHECK(normalize_text("510-401-4657") == "5104014657");
  CHECK(normalize_text("") == "");
  CHECK(normalize_text("caf\xc3\xa9 Bar") == "cafbar");
  for (std::string s : {"Star!", "A b-C", "..x.."}) CHECK(normalize_text(normalize_text(s)) == normalize_text(s));
}

TEST_CASE("accuracy with trivial recognizers") {
  const auto samples = toy_samples(9, 2);
  ConstantRecognizer empty("");
  CHECK(accuracy(empty, samples).overall().accuracy() == 0.0);

  std::vector<std::pair<Image, std::string>> known;
  for (const auto& s : samples) known.emplace_back(s.image, s.text);
  OracleRecognizer oracle(known);
  const auto r = accuracy(oracle, samples);
  CHECK(r.overall().accuracy() == 1.0);
  CHECK(r.per_subset.at(Subset::easy).total == 3);

  // Unknown images throw and count as misses.
  OracleRecognizer partial(std::vector(known.begin(), known.begin() + 4));
  CHECK(accuracy(partial, samples).overall().correct == 4);
  CHECK_THROWS_AS(accuracy(empty, {}), std::invalid_argument);
}

TEST_CASE("toy recognizer reads toy renderings") {
  auto samples = toy_samples(60, 3);
  ToyRecognizer rec;
  std::size_t recount = 0;
  for (const auto& s : samples) recount += normalize_text(rec.recognize(s.image)) == normalize_text(s.text);
  const auto r = accuracy(rec, samples);
  CHECK(r.overall().correct == recount);
  CHECK(r.overall().accuracy() >= 0.95);
  CHECK(accuracy(rec, samples, 3).overall().correct == recount);

  std::reverse(samples.begin(), samples.end());
  CHECK(accuracy(rec, samples).overall().correct == recount);

  // Lowercase labels still match.
  samples[0].text = normalize_text(samples[0].text);
  CHECK(accuracy(rec, samples).overall().correct == recount);
}

TEST_CASE("external recognizer process") {
  const auto samples = toy_samples(4, 4);
  SUBCASE("replies are read line by line") {
    auto rec = make_recognizer("external:while read p; do test -f \"$p\" && echo Hello; done");
    CHECK(rec->recognize(samples[0].image) == "Hello");
    CHECK(rec->recognize(samples[1].image) == "Hello");
  }
  SUBCASE("a dead child counts as a miss") {
    auto rec = make_recognizer("external:exit 0");
    CHECK_THROWS_AS(rec->recognize(samples[0].image), DataError);
    CHECK(accuracy(*rec, samples).overall().correct == 0);
  }
  CHECK_THROWS_AS(make_recognizer("bogus"), ConfigError);
}

TEST_CASE("condition comparison") {
  const auto records = data::make_toy_records(12, 5, true);
  BicubicResolver identity;
  ToyRecognizer rec;
  const auto table = compare_conditions(identity, records, rec);
  for (Subset s : {Subset::easy, Subset::medium, Subset::hard}) {
    CHECK(table.improvement(s) == 0.0);
    CHECK(table.rows.at("sr_output").per_subset.at(s).correct == table.rows.at("bicubic_lr").per_subset.at(s).correct);
  }
  CHECK(table.rows.at("hr").overall().accuracy() >= table.rows.at("bicubic_lr").overall().accuracy());
  CHECK(table.to_text().find("improvement") != std::string::npos);
  CHECK(table.to_json().find("\"sr_output\"") != std::string::npos);

  std::vector<std::pair<Image, std::string>> known;
  std::vector<Image> lrs;
  for (const auto& r : records) lrs.push_back(r.lr);
  const auto up = identity.upscale(lrs);
  for (std::size_t i = 0; i < records.size(); ++i) {
    known.emplace_back(records[i].hr, records[i].text);
    known.emplace_back(up[i], records[i].text);
  }
  OracleRecognizer oracle(known);
  const auto perfect = compare_conditions(identity, records, oracle);
  for (const auto& [name, row] : perfect.rows) CHECK(row.overall().accuracy() == 1.0);
}

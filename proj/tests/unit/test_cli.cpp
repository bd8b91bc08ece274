// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <png.h>

#include <set>
#include <sstream>

#include "tempdir.hpp"
#include "textsr/cli/cli.hpp"
#include "textsr/data/image_io.hpp"
#include "textsr/data/manifest.hpp"
#include "textsr/data/transforms.hpp"

using namespace textsr;
namespace fs = std::filesystem;

namespace {

int tool(std::vector<std::string> args) {
  args.insert(args.begin(), "textsr");
  args.insert(args.begin() + 1, {"--log-level", "error"});
  return cli::run(args);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json run_record(const fs::path& p) {
  auto j = nlohmann::json::parse(slurp(p));
  j.erase("timestamp");
  return j;
}

Image flat(int c, int h, int w, float v) { return Image(c, h, w, v); }

void write_tiny_configs(const testing::TempDir& dir) {
  std::ofstream(dir / "model.cfg") << "hidden_units = 4\nfeature_channels = 8\nnum_srb = 1\nuse_alignment = false\n";
  std::ofstream(dir / "train.cfg") << "batch_size = 4\nepochs = 1\nlearning_rate = 0.001\n";
}

}  // namespace

TEST_CASE("sha256 digest") {
  testing::TempDir dir;
  std::ofstream(dir / "abc.txt") << "abc";
  CHECK(cli::sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("usage errors") {
  CHECK(tool({}) == cli::kUsage);
  CHECK(tool({"frobnicate"}) == cli::kUsage);
  CHECK(tool({"train", "--manifest", "/nonexistent/manifest.jsonl", "--out", "x"}) == cli::kUsage);
}

TEST_CASE("prepare from annotations") {
  testing::TempDir dir;
  auto rgb = [](int h, int w) {
    Image img(3, h, w, 0.2f);
    for (int x = 0; x < w; x += 3) img.at(0, h / 2, x) = 0.9f;
    return img;
  };
  data::write_png(dir / "raw/hr0.png", rgb(24, 100));
  data::write_png(dir / "raw/lr0.png", rgb(12, 50));
  data::write_png(dir / "raw/hr1.png", rgb(100, 24));  // vertical text
  data::write_png(dir / "raw/lr1.png", rgb(50, 12));
  data::write_png(dir / "raw/hr2.png", rgb(40, 100));  // too tall
  data::write_png(dir / "raw/lr2.png", rgb(20, 50));
  std::ofstream(dir / "raw/ann.jsonl")
      << R"({"lr_path":"lr0.png","hr_path":"hr0.png","text":"abc","source":"RealSR","focal_lr_mm":28,"focal_hr_mm":56})" "\n"
      << R"({"lr_path":"lr1.png","hr_path":"hr1.png","text":"up","source":"SR-RAW","focal_lr_mm":70,"focal_hr_mm":140,"direction":"vertical_plus"})" "\n"
      << R"({"lr_path":"lr1.png","hr_path":"hr1.png","text":"tr","source":"SR-RAW","focal_lr_mm":35,"focal_hr_mm":70,"direction":"vertical_minus","split":"train"})" "\n"
      << R"({"lr_path":"lr2.png","hr_path":"hr2.png","text":"big","source":"SR-RAW","focal_lr_mm":35,"focal_hr_mm":70})" "\n"
      << R"({"lr_path":"lr0.png","hr_path":"hr0.png","text":"?","source":"RealSR","focal_lr_mm":28,"focal_hr_mm":56,"direction":"ignored"})" "\n";

  REQUIRE(tool({"prepare", "--input", (dir / "raw/ann.jsonl").string(), "--out", (dir / "out/manifest.jsonl").string()}) == cli::kOk);
  const auto m = data::load_manifest(dir / "out/manifest.jsonl");
  REQUIRE(m.records.size() == 3);
  CHECK(m.records[0].subset == Subset::easy);
  CHECK(m.records[1].subset == Subset::medium);
  CHECK(m.records[1].direction == Direction::horizontal);
  CHECK(m.records[2].subset == Subset::train);
  const Image hr = data::read_png(dir / "out" / m.records[1].hr_path);
  CHECK(hr.height() == 32);
  CHECK(hr.width() == 128);
  CHECK(fs::exists(dir / "out/run_prepare.json"));

  std::ofstream(dir / "raw/bad.jsonl") << R"({"lr_path":"nope.png","hr_path":"hr0.png","text":"x","source":"RealSR","focal_lr_mm":28,"focal_hr_mm":56})" "\n";
  CHECK(tool({"prepare", "--input", (dir / "raw/bad.jsonl").string(), "--out", (dir / "bad/manifest.jsonl").string()}) ==
        cli::kDataError);
}

TEST_CASE("toy pipeline, idempotence and run records") {
  testing::TempDir dir;
  write_tiny_configs(dir);
  const std::string manifest = (dir / "toy/manifest.jsonl").string();
  REQUIRE(tool({"--seed", "1", "prepare", "--toy", "8", "--toy-test", "--out", manifest}) == cli::kOk);
  const auto before = fs::last_write_time(manifest);
  REQUIRE(tool({"--seed", "2", "prepare", "--toy", "9", "--out", manifest}) == cli::kOk);
  CHECK(fs::last_write_time(manifest) == before);
  CHECK(data::load_manifest(manifest).records.size() == 8);

  auto train = [&](const std::string& out, const std::string& seed) {
    return tool({"--seed", seed, "train", "--model-config", (dir / "model.cfg").string(), "--train-config",
                 (dir / "train.cfg").string(), "--manifest", manifest, "--subset", "all", "--out", (dir / out).string()});
  };
  REQUIRE(train("a", "5") == cli::kOk);
  REQUIRE(train("b", "5") == cli::kOk);
  REQUIRE(train("c", "6") == cli::kOk);
  auto ra = run_record(dir / "a/run_train.json"), rb = run_record(dir / "b/run_train.json"),
       rc = run_record(dir / "c/run_train.json");
  ra.erase("command"), rb.erase("command");
  CHECK(ra == rb);
  CHECK(ra["inputs"].contains(manifest));
  nlohmann::json diff = nlohmann::json::diff(run_record(dir / "a/run_train.json"), rc);
  std::set<std::string> changed;
  for (const auto& op : diff) changed.insert(op["path"].get<std::string>());
  // The seed also lands in the serialised training config.
  CHECK(changed == std::set<std::string>{"/command", "/seed", "/configs/train"});
  CHECK(slurp(dir / "a/checkpoint.tsrn") == slurp(dir / "b/checkpoint.tsrn"));

  const auto ckpt_time = fs::last_write_time(dir / "a/checkpoint.tsrn");
  REQUIRE(train("a", "5") == cli::kOk);
  CHECK(fs::last_write_time(dir / "a/checkpoint.tsrn") == ckpt_time);

  const std::string ckpt = (dir / "a/checkpoint.tsrn").string();
  REQUIRE(tool({"eval", "--checkpoint", ckpt, "--manifest", manifest, "--out", (dir / "report").string()}) == cli::kOk);
  const auto report = nlohmann::json::parse(slurp(dir / "report/report.json"));
  CHECK(report["accuracy"].contains("improvement"));
  CHECK(report["metrics"].contains("average"));
  CHECK(tool({"eval", "--checkpoint", (dir / "missing.tsrn").string(), "--manifest", manifest, "--out",
              (dir / "r2").string()}) == cli::kDataError);

  SUBCASE("infer") {
    data::write_png(dir / "in/one.png", flat(3, 16, 64, 0.3f));
    data::write_png(dir / "in/two.png", flat(3, 10, 40, 0.6f));
    data::write_png(dir / "in/gray.png", flat(1, 16, 64, 0.6f));
    REQUIRE(tool({"infer", "--checkpoint", ckpt, "--input", (dir / "in/one.png").string(), "--out", (dir / "single").string()}) ==
            cli::kOk);
    const Image sr = data::read_png(dir / "single/one.png");
    CHECK(sr.channels() == 3);
    CHECK(sr.height() == 32);
    CHECK(sr.width() == 128);

    REQUIRE(tool({"infer", "--checkpoint", ckpt, "--input", (dir / "in").string(), "--out", (dir / "many").string()}) == cli::kOk);
    int n = 0;
    for (const auto& e : fs::directory_iterator(dir / "many")) n += e.path().extension() == ".png";
    CHECK(n == 3);
    CHECK(fs::exists(dir / "many/two.png"));

    REQUIRE(tool({"metrics", "--sr", (dir / "many").string(), "--hr", (dir / "many").string(), "--out",
                  (dir / "m/metrics.json").string()}) == cli::kOk);
    CHECK(slurp(dir / "m/metrics.json").find("inf") != std::string::npos);
  }
  SUBCASE("metrics against a manifest") {
    REQUIRE(tool({"infer", "--checkpoint", ckpt, "--input", (dir / "toy/lr").string(), "--out", (dir / "sr").string()}) ==
            cli::kOk);
    REQUIRE(tool({"metrics", "--pred", (dir / "sr").string(), "--gt", manifest, "--out", (dir / "m/report.json").string()}) ==
            cli::kOk);
    const auto m = nlohmann::json::parse(slurp(dir / "m/report.json"));
    CHECK(m.contains("average"));
    const std::string text = slurp(dir / "m/report.txt");
    CHECK(text.find("easy") != std::string::npos);
    CHECK(text.find("hard") != std::string::npos);
  }
  SUBCASE("alpha channel input is rejected") {
    // Build an RGBA PNG by hand through libpng's simplified API via a 4-channel raw file.
    std::vector<unsigned char> px(16 * 64 * 4, 200);
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = 64;
    img.height = 16;
    img.format = PNG_FORMAT_RGBA;
    fs::create_directories(dir / "rgba");
    REQUIRE(png_image_write_to_file(&img, (dir / "rgba/a.png").c_str(), 0, px.data(), 0, nullptr));
    CHECK(tool({"infer", "--checkpoint", ckpt, "--input", (dir / "rgba/a.png").string(), "--out", (dir / "o").string()}) ==
          cli::kDataError);
    CHECK(tool({"infer", "--checkpoint", ckpt, "--input", (dir / "rgba").string(), "--out", (dir / "o2").string()}) == cli::kOk);
    CHECK_FALSE(fs::exists(dir / "o2/a.png"));
  }
}

TEST_CASE("diverging training exits with the numerical code") {
  testing::TempDir dir;
  write_tiny_configs(dir);
  std::ofstream(dir / "train.cfg") << "batch_size = 4\nepochs = 20\nlearning_rate = 1e30\n";
  const std::string manifest = (dir / "toy/manifest.jsonl").string();
  REQUIRE(tool({"prepare", "--toy", "4", "--out", manifest}) == cli::kOk);
  CHECK(tool({"train", "--model-config", (dir / "model.cfg").string(), "--train-config", (dir / "train.cfg").string(),
              "--manifest", manifest, "--out", (dir / "run").string()}) == cli::kNumerical);
}

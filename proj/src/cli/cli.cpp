// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/cli/cli.hpp"

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "textsr/core/error.hpp"
#include "textsr/data/allocation.hpp"
#include "textsr/data/batch.hpp"
#include "textsr/data/image_io.hpp"
#include "textsr/data/manifest.hpp"
#include "textsr/data/toy.hpp"
#include "textsr/data/transforms.hpp"
#include "textsr/eval/compare.hpp"
#include "textsr/metrics/metrics.hpp"
#include "textsr/train/checkpoint.hpp"
#include "textsr/train/trainer.hpp"

namespace textsr::cli {
namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += {kHex[digest[i] >> 4], kHex[digest[i] & 15]};
  return out;
}

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  bool force = false;
  std::string log_level = "info";
  std::string command_line;
};

/// Provenance written next to each command's outputs.
class RunRecord {
 public:
  RunRecord(const Globals& g, std::string subcommand) : j_{{"subcommand", std::move(subcommand)}} {
    j_["command"] = g.command_line;
    j_["version"] = TEXTSR_VERSION;
    j_["seed"] = g.seed ? json(*g.seed) : json(nullptr);
    j_["inputs"] = json::object();
    j_["configs"] = json::object();
  }

  void input(const fs::path& path) {
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) j_["inputs"][f.string()] = sha256_file(f);
    } else {
      j_["inputs"][path.string()] = sha256_file(path);
    }
  }
  void config(const std::string& name, const std::string& text) { j_["configs"][name] = text; }
  void set(const std::string& key, json value) { j_[key] = std::move(value); }

  void write(const fs::path& dir) {
    j_["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
    fs::create_directories(dir);
    const auto path = dir / ("run_" + j_["subcommand"].get<std::string>() + ".json");
    std::ofstream(path) << j_.dump(2) << '\n';
  }

 private:
  json j_;
};

fs::path parent_or_cwd(const fs::path& p) { return p.has_parent_path() ? p.parent_path() : fs::path("."); }

bool skip_existing(const Globals& g, const fs::path& output) {
  if (g.force || !fs::exists(output)) return false;
  spdlog::info("{} already exists; pass --force to regenerate", output.string());
  return true;
}

// ---- prepare ----------------------------------------------------------------

struct PrepareArgs {
  fs::path input;
  fs::path out;
  std::size_t toy = 0;
  bool toy_test = false;
};

int cmd_prepare(const Globals& g, const PrepareArgs& a) {
  if (skip_existing(g, a.out)) return kOk;
  RunRecord record(g, "prepare");
  const fs::path out_dir = parent_or_cwd(a.out);

  if (a.toy > 0) {
    const auto records = data::make_toy_records(a.toy, g.seed.value_or(0), a.toy_test);
    data::write_toy_dataset(records, a.out);
    record.set("toy_pairs", a.toy);
    record.write(out_dir);
    spdlog::info("wrote {} toy pairs to {}", a.toy, a.out.string());
    return kOk;
  }
  if (a.input.empty()) throw CLI::ValidationError("--input", "required unless --toy is given");
  record.input(a.input);

  std::ifstream in(a.input);
  if (!in) throw DataError("cannot open annotations " + a.input.string());
  const fs::path root = parent_or_cwd(a.input);
  data::DatasetManifest manifest;
  manifest.root = out_dir;
  std::map<std::string, int> skipped;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = a.input.string() + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(where + ": " + e.what());
    }
    try {
      const Direction dir = parse_direction(j.value("direction", "horizontal"));
      if (dir == Direction::ignored) {
        ++skipped["ignored direction"];
        continue;
      }
      Image lr = data::orient_horizontal(data::read_rgb(root / j.at("lr_path").get<std::string>()), dir);
      Image hr = data::orient_horizontal(data::read_rgb(root / j.at("hr_path").get<std::string>()), dir);
      if (data::bucket_by_height(hr.height()) != data::HeightBucket::hr_group) {
        ++skipped["HR height outside 16-32"];
        continue;
      }
      if (data::bucket_by_height(lr.height()) != data::HeightBucket::lr_group) {
        ++skipped["LR height outside 8-15"];
        continue;
      }
      const Source source = parse_source(j.at("source").get<std::string>());
      const double focal_lr = j.at("focal_lr_mm").get<double>();
      const double focal_hr = j.at("focal_hr_mm").get<double>();
      const std::string split = j.value("split", "test");
      Subset subset;
      if (split == "train")
        subset = Subset::train;
      else if (split == "test")
        subset = data::allocate_subset(source, focal_lr);
      else
        throw DataError("unknown split '" + split + "'");

      auto [lr_n, hr_n] = data::normalize_pair(lr, hr);
      char name[32];
      std::snprintf(name, sizeof(name), "%06zu.png", manifest.records.size());
      data::ManifestRow row{"lr/" + std::string(name), "hr/" + std::string(name), j.at("text").get<std::string>(),
                            source, focal_lr, focal_hr, Direction::horizontal, subset};
      data::write_png(out_dir / row.lr_path, lr_n);
      data::write_png(out_dir / row.hr_path, hr_n);
      manifest.records.push_back(std::move(row));
    } catch (const json::exception& e) {
      throw DataError(where + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  data::save_manifest(manifest, a.out);
  for (const auto& [why, n] : skipped) spdlog::info("skipped {} annotation(s): {}", n, why);
  for (const auto& [s, n] : manifest.subset_counts()) spdlog::info("{}: {} pairs", to_string(s), n);
  record.set("pairs", manifest.records.size());
  record.write(out_dir);
  return kOk;
}

// ---- train ------------------------------------------------------------------

struct TrainArgs {
  fs::path model_config;
  fs::path train_config;
  fs::path manifest;
  fs::path out;
  std::string subset = "train";
  int max_steps = -1;
};

std::optional<Subset> parse_subset_filter(const std::string& s) {
  if (s == "all") return std::nullopt;
  return parse_subset(s);
}

int cmd_train(const Globals& g, const TrainArgs& a) {
  ModelConfig mcfg = a.model_config.empty() ? ModelConfig{} : load_model_config(a.model_config);
  TrainConfig tcfg = a.train_config.empty() ? TrainConfig{} : load_train_config(a.train_config);
  if (g.seed) tcfg.seed = *g.seed;
  if (a.max_steps >= 0) tcfg.max_steps = a.max_steps;
  tcfg.validate();

  train::TrainerOptions opt{.out_dir = a.out};
  const fs::path ckpt = a.out / "checkpoint.tsrn";
  if (fs::exists(ckpt)) {
    if (g.force) {
      fs::remove(ckpt);
      fs::remove(a.out / "loss_log.jsonl");
    } else {
      const auto info = train::read_checkpoint_info(ckpt);
      if (!(info.model == mcfg) || !(info.train == tcfg))
        throw ConfigError(ckpt.string() + " was written with different settings; pass --force to start over");
      if (info.epoch >= tcfg.epochs || (tcfg.max_steps > 0 && info.step >= tcfg.max_steps)) {
        spdlog::info("{} is already complete; pass --force to retrain", ckpt.string());
        return kOk;
      }
    }
  }

  RunRecord record(g, "train");
  record.input(a.manifest);
  record.config("model", serialize(mcfg));
  record.config("train", serialize(tcfg));

  const auto manifest = data::load_manifest(a.manifest);
  const auto records = data::load_records(manifest, parse_subset_filter(a.subset));
  if (records.empty()) throw DataError("no '" + a.subset + "' rows in " + a.manifest.string());
  train::Trainer trainer(mcfg, tcfg, records, opt);
  const auto history = trainer.run();
  if (!history.empty())
    spdlog::info("finished at step {}: pixel {:.6g} total {:.6g}", history.back().step, history.back().loss.pixel,
                 history.back().loss.total);
  record.set("steps", trainer.steps_taken());
  record.write(a.out);
  return kOk;
}

// ---- eval -------------------------------------------------------------------

struct EvalArgs {
  fs::path checkpoint;
  fs::path manifest;
  std::string recognizer = "toy";
  fs::path out;
  std::string subset = "test";
};

int cmd_eval(const Globals& g, const EvalArgs& a) {
  const fs::path report_json = a.out / "report.json";
  if (skip_existing(g, report_json)) return kOk;
  if (!fs::exists(a.checkpoint)) throw DataError("checkpoint not found: " + a.checkpoint.string());
  RunRecord record(g, "eval");
  record.input(a.checkpoint);
  record.input(a.manifest);
  record.set("recognizer", a.recognizer);

  auto net = train::load_model(a.checkpoint);
  const auto manifest = data::load_manifest(a.manifest);
  std::vector<TextPairRecord> records;
  for (auto& r : data::load_records(manifest))
    if (a.subset == "all" || (a.subset == "test" ? r.subset != Subset::train : to_string(r.subset) == a.subset))
      records.push_back(std::move(r));
  if (records.empty()) throw DataError("no rows selected by --subset " + a.subset);

  eval::ModelResolver resolver(*net);
  auto recognizer = eval::make_recognizer(a.recognizer);
  const auto table = eval::compare_conditions(resolver, records, *recognizer);

  std::vector<Image> lrs;
  for (const auto& r : records) lrs.push_back(r.lr);
  const auto sr = resolver.upscale(lrs);
  metrics::MetricsAccumulator acc;
  for (std::size_t i = 0; i < records.size(); ++i) acc.add(sr[i], records[i].hr, records[i].subset);
  for (const auto& [s, r] : table.rows.at("sr_output").per_subset) acc.set_accuracy(s, r.accuracy());
  const auto report = acc.report();

  fs::create_directories(a.out);
  std::ofstream(report_json) << json{{"accuracy", json::parse(table.to_json())}, {"metrics", json::parse(report.to_json())}}.dump(2)
                             << '\n';
  std::ofstream(a.out / "report.txt") << table.to_text() << '\n' << report.to_text();
  std::printf("%s\n%s", table.to_text().c_str(), report.to_text().c_str());
  record.write(a.out);
  return kOk;
}

// ---- infer ------------------------------------------------------------------

struct InferArgs {
  fs::path checkpoint;
  fs::path input;
  fs::path out;
};

Image read_model_input(const fs::path& path) {
  Image img = data::read_png(path);
  if (img.channels() == 2 || img.channels() == 4)
    throw DataError(path.string() + ": images with an alpha channel are not accepted; the mask channel is computed internally");
  if (img.channels() == 1) img = data::read_rgb(path);
  if (img.height() != 16 || img.width() != 64) img = data::resize_bicubic(img, 16, 64);
  return img;
}

int cmd_infer(const Globals& g, const InferArgs& a) {
  const bool dir_mode = fs::is_directory(a.input);
  std::vector<fs::path> inputs;
  if (dir_mode) {
    for (const auto& e : fs::directory_iterator(a.input))
      if (e.is_regular_file() && e.path().extension() == ".png") inputs.push_back(e.path());
    std::sort(inputs.begin(), inputs.end());
  } else {
    if (!fs::exists(a.input)) throw DataError("input not found: " + a.input.string());
    inputs.push_back(a.input);
  }

  auto net = train::load_model(a.checkpoint);
  eval::ModelResolver resolver(*net);
  RunRecord record(g, "infer");
  record.input(a.checkpoint);
  record.input(a.input);

  std::size_t written = 0, skipped = 0;
  for (const auto& path : inputs) {
    const fs::path target = a.out / path.filename();
    if (skip_existing(g, target)) continue;
    Image lr;
    try {
      lr = read_model_input(path);
    } catch (const DataError& e) {
      if (!dir_mode) throw;
      spdlog::warn("skipping {}", e.what());
      ++skipped;
      continue;
    }
    data::write_png(target, resolver.upscale({lr}).front());
    ++written;
  }
  spdlog::info("wrote {} image(s), skipped {}", written, skipped);
  record.set("written", written);
  record.write(a.out);
  return kOk;
}

// ---- metrics ----------------------------------------------------------------

struct MetricsArgs {
  fs::path sr;
  fs::path hr;
  fs::path manifest;
  fs::path out;
};

int cmd_metrics(const Globals& g, const MetricsArgs& a) {
  if (!a.out.empty() && skip_existing(g, a.out)) return kOk;
  RunRecord record(g, "metrics");
  record.input(a.sr);
  metrics::MetricsAccumulator acc;
  if (!a.manifest.empty()) {
    record.input(a.manifest);
    const auto m = data::load_manifest(a.manifest);
    for (std::size_t i = 0; i < m.records.size(); ++i) {
      const auto& row = m.records[i];
      const Image sr = data::read_rgb(a.sr / fs::path(row.lr_path).filename());
      acc.add(sr, data::load_record(m, i).hr, row.subset);
    }
  } else {
    if (a.hr.empty()) throw CLI::ValidationError("--hr", "either --hr or --manifest is required");
    record.input(a.hr);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(a.sr))
      if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) acc.add(data::read_rgb(f), data::read_rgb(a.hr / f.filename()), Subset::train);
  }
  if (acc.empty()) throw DataError("no image pairs found");
  const auto report = acc.report();
  std::printf("%s", report.to_text().c_str());
  if (!a.out.empty()) {
    if (a.out.has_parent_path()) fs::create_directories(a.out.parent_path());
    if (a.out.extension() == ".txt") {
      std::ofstream(a.out) << report.to_text();
    } else {
      std::ofstream(a.out) << report.to_json() << '\n';
      std::ofstream(fs::path(a.out).replace_extension(".txt")) << report.to_text();
    }
    record.write(parent_or_cwd(a.out));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Text image super-resolution toolkit"};
  app.require_subcommand(1);
  Globals g;
  // Global flags are recorded separately, so the command is the rest.
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& s = args[i];
    if (s == "--force" || s.rfind("--seed=", 0) == 0 || s.rfind("--log-level=", 0) == 0) continue;
    if (s == "--seed" || s == "--log-level") {
      ++i;
      continue;
    }
    g.command_line += (g.command_line.empty() ? "" : " ") + s;
  }
  app.add_option("--seed", g.seed, "Random seed (overrides configuration files)");
  app.add_flag("--force", g.force, "Overwrite existing outputs");
  app.add_option("--log-level", g.log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));
  app.set_version_flag("--version", TEXTSR_VERSION);

  PrepareArgs pa;
  auto* prepare = app.add_subcommand("prepare", "Build a manifest of normalised pairs from annotations");
  prepare->add_option("--input", pa.input, "Annotation file, one JSON object per line");
  prepare->add_option("--out", pa.out, "Manifest to write; images go next to it")->required();
  prepare->add_option("--toy", pa.toy, "Generate this many synthetic pairs instead of reading annotations");
  prepare->add_flag("--toy-test", pa.toy_test, "Spread toy pairs over the easy/medium/hard subsets");

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Train a model");
  train->add_option("--model-config", ta.model_config, "Model settings (key = value)")->check(CLI::ExistingFile);
  train->add_option("--train-config", ta.train_config, "Training settings (key = value)")->check(CLI::ExistingFile);
  train->add_option("--manifest", ta.manifest, "Training manifest")->required()->check(CLI::ExistingFile);
  train->add_option("--out", ta.out, "Output directory")->required();
  train->add_option("--subset", ta.subset, "Rows to train on: train, easy, medium, hard or all");
  train->add_option("--max-steps", ta.max_steps, "Stop after this many optimizer steps");

  EvalArgs ea;
  auto* evalc = app.add_subcommand("eval", "Recognition accuracy and image metrics of a checkpoint");
  evalc->add_option("--checkpoint", ea.checkpoint, "Model checkpoint")->required();
  evalc->add_option("--manifest", ea.manifest, "Evaluation manifest")->required()->check(CLI::ExistingFile);
  evalc->add_option("--recognizer", ea.recognizer, "toy or external:<command>");
  evalc->add_option("--out", ea.out, "Report directory")->required();
  evalc->add_option("--subset", ea.subset, "test (all but train), all, or one subset name");

  InferArgs ia;
  auto* infer = app.add_subcommand("infer", "Super-resolve PNG images");
  infer->add_option("--checkpoint", ia.checkpoint, "Model checkpoint")->required()->check(CLI::ExistingFile);
  infer->add_option("--input", ia.input, "PNG file or directory of PNGs")->required();
  infer->add_option("--out", ia.out, "Output directory")->required();

  MetricsArgs ma;
  auto* metricsc = app.add_subcommand("metrics", "PSNR and SSIM of super-resolved images");
  metricsc->add_option("--sr,--pred", ma.sr, "Directory of super-resolved PNGs")->required()->check(CLI::ExistingDirectory);
  metricsc->add_option("--hr", ma.hr, "Directory of ground-truth PNGs with matching names");
  metricsc->add_option("--manifest,--gt", ma.manifest, "Manifest giving ground truth and subsets")->check(CLI::ExistingFile);
  metricsc->add_option("--out", ma.out, "Report path; text if it ends in .txt, else JSON with a .txt copy");

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  spdlog::set_level(spdlog::level::from_str(g.log_level));

  try {
    if (*prepare) return cmd_prepare(g, pa);
    if (*train) return cmd_train(g, ta);
    if (*evalc) return cmd_eval(g, ea);
    if (*infer) return cmd_infer(g, ia);
    if (*metricsc) return cmd_metrics(g, ma);
  } catch (const CLI::Error& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const NumericalError& e) {
    spdlog::error("{}", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kDataError;
  }
  return kUsage;
}

}  // namespace textsr::cli

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/eval/recognizer.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cmath>
#include <limits>
#include <vector>

#include "textsr/core/error.hpp"
#include "textsr/data/image_io.hpp"
#include "textsr/data/toy.hpp"
#include "textsr/data/transforms.hpp"

namespace textsr::eval {

std::string normalize_text(std::string_view s) {
  std::string out;
  for (unsigned char c : s)
    if (std::isalnum(c) && c < 128) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

namespace {

using data::ToyFont;

constexpr int kCellW = ToyFont::kGlyphWidth * ToyFont::kScale;
constexpr int kCellH = ToyFont::kGlyphHeight * ToyFont::kScale;

bool glyph_ink(char c, int y, int x) {
  const auto& rows = ToyFont::rows(c);
  const int gy = y / ToyFont::kScale, gx = x / ToyFont::kScale;
  return rows[gy] >> (ToyFont::kGlyphWidth - 1 - gx) & 1;
}

// Normalised cross-correlation of a cell against a glyph template; its sign
// tells the text polarity.
double cell_ncc(const std::vector<double>& gray, int left, char c) {
  const int top = ToyFont::text_top();
  double sp = 0, st = 0, spp = 0, stt = 0, spt = 0;
  for (int y = 0; y < kCellH; ++y)
    for (int x = 0; x < kCellW; ++x) {
      const double p = gray[static_cast<std::size_t>(top + y) * ToyFont::kCanvasWidth + left + x];
      const double t = glyph_ink(c, y, x) ? 1.0 : 0.0;
      sp += p, st += t, spp += p * p, stt += t * t, spt += p * t;
    }
  const double n = kCellW * kCellH;
  const double cov = spt - sp * st / n, vp = spp - sp * sp / n, vt = stt - st * st / n;
  if (vp <= 1e-12 || vt <= 1e-12) return 0.0;
  return cov / std::sqrt(vp * vt);
}

// Residual of gray ~ a + b * mask.
double fit_residual(const std::vector<double>& gray, const Image& mask) {
  const auto m = mask.values();
  const double n = static_cast<double>(gray.size());
  double sg = 0, sm = 0, smm = 0, sgm = 0, sgg = 0;
  for (std::size_t i = 0; i < gray.size(); ++i) {
    sg += gray[i], sm += m[i], smm += m[i] * m[i], sgm += gray[i] * m[i], sgg += gray[i] * gray[i];
  }
  const double vm = smm - sm * sm / n;
  const double vg = sgg - sg * sg / n;
  if (vm <= 0) return vg;
  const double cov = sgm - sg * sm / n;
  return vg - cov * cov / vm;
}

}  // namespace

std::string ToyRecognizer::recognize(const Image& rgb) {
  if (rgb.channels() != 3) throw ShapeError("recognizer expects an RGB image");
  Image canvas = rgb;
  if (canvas.height() != ToyFont::kCanvasHeight || canvas.width() != ToyFont::kCanvasWidth)
    canvas = data::resize_bicubic(canvas, ToyFont::kCanvasHeight, ToyFont::kCanvasWidth);
  const Image g = to_grayscale(canvas);
  const std::vector<double> gray(g.values().begin(), g.values().end());

  const std::string_view alphabet = ToyFont::alphabet();
  std::string best_text;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int len = 1; len <= ToyFont::kMaxLength; ++len) {
    // Polarity is shared by all characters, so try both and keep the better.
    for (double sign : {1.0, -1.0}) {
      std::string text;
      for (int slot = 0; slot < len; ++slot) {
        const int left = ToyFont::slot_left(len, slot);
        char pick = alphabet.front();
        double score = -std::numeric_limits<double>::infinity();
        for (char c : alphabet) {
          const double s = sign * cell_ncc(gray, left, c);
          if (s > score) score = s, pick = c;
        }
        text.push_back(pick);
      }
      const double r = fit_residual(gray, data::render_text_mask(text));
      if (r < best_residual) best_residual = r, best_text = text;
    }
  }
  return best_text;
}

ProcessRecognizer::ProcessRecognizer(std::string command) : command_(std::move(command)) {
  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0) throw DataError("cannot create pipes for recognizer");
  ::signal(SIGPIPE, SIG_IGN);

  pid_ = ::fork();
  if (pid_ < 0) throw DataError("cannot start recognizer process");
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]), ::close(in_pipe[1]), ::close(out_pipe[0]), ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  ::fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  to_child_ = ::fdopen(in_pipe[1], "w");
  from_child_ = ::fdopen(out_pipe[0], "r");

  scratch_ = std::filesystem::temp_directory_path() / ("textsr_recognizer_" + std::to_string(::getpid()) + "_" +
                                                      std::to_string(pid_));
  std::filesystem::create_directories(scratch_);
}

ProcessRecognizer::~ProcessRecognizer() { shutdown(); }

void ProcessRecognizer::shutdown() {
  if (to_child_) std::fclose(to_child_), to_child_ = nullptr;
  if (from_child_) std::fclose(from_child_), from_child_ = nullptr;
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
  std::error_code ec;
  std::filesystem::remove_all(scratch_, ec);
}

std::string ProcessRecognizer::recognize(const Image& rgb) {
  std::lock_guard lock(mutex_);
  if (!to_child_ || !from_child_) throw DataError("recognizer process is not running");
  const auto path = scratch_ / ("request_" + std::to_string(requests_++) + ".png");
  data::write_png(path, rgb);
  const std::string request = path.string() + "\n";
  if (std::fputs(request.c_str(), to_child_) < 0 || std::fflush(to_child_) != 0)
    throw DataError("recognizer process '" + command_ + "' stopped accepting requests");

  std::string reply;
  int ch;
  while ((ch = std::fgetc(from_child_)) != EOF && ch != '\n') reply.push_back(static_cast<char>(ch));
  std::filesystem::remove(path);
  if (ch == EOF) throw DataError("recognizer process '" + command_ + "' closed its output");
  if (!reply.empty() && reply.back() == '\r') reply.pop_back();
  return reply;
}

std::unique_ptr<Recognizer> make_recognizer(std::string_view spec) {
  if (spec == "toy") return std::make_unique<ToyRecognizer>();
  constexpr std::string_view kExternal = "external:";
  if (spec.substr(0, kExternal.size()) == kExternal && spec.size() > kExternal.size())
    return std::make_unique<ProcessRecognizer>(std::string(spec.substr(kExternal.size())));
  throw ConfigError("unknown recognizer '" + std::string(spec) + "', expected toy or external:<command>");
}

}  // namespace textsr::eval

// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sys/types.h>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "textsr/core/image.hpp"

namespace textsr::eval {

/// Lowercase, with everything except ASCII letters and digits removed.
std::string normalize_text(std::string_view s);

class Recognizer {
 public:
  virtual ~Recognizer() = default;
  /// Reads the text in an RGB crop. May throw; callers treat that as a miss.
  virtual std::string recognize(const Image& rgb) = 0;
  /// Whether recognize() may be called from several threads at once.
  virtual bool thread_safe() const { return false; }
};

/// Template matcher for images drawn with the toy font. The crop is resized
/// to 32x128; for each possible string length the best glyph per character
/// slot is chosen by normalised cross-correlation, and the length whose full
/// rendering best explains the image (least-squares fit of two intensity
/// levels) wins. Only the generator alphabet is considered.
class ToyRecognizer final : public Recognizer {
 public:
  std::string recognize(const Image& rgb) override;
  bool thread_safe() const override { return true; }
};

/// Runs `/bin/sh -c command` once and talks to it line by line: each request
/// is the path of a PNG file, each reply is the predicted string.
class ProcessRecognizer final : public Recognizer {
 public:
  explicit ProcessRecognizer(std::string command);
  ~ProcessRecognizer() override;
  ProcessRecognizer(const ProcessRecognizer&) = delete;
  ProcessRecognizer& operator=(const ProcessRecognizer&) = delete;

  std::string recognize(const Image& rgb) override;

 private:
  void shutdown();

  std::string command_;
  std::filesystem::path scratch_;
  pid_t pid_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
  std::size_t requests_ = 0;
  std::mutex mutex_;
};

/// "toy" or "external:<shell command>". Throws ConfigError otherwise.
std::unique_ptr<Recognizer> make_recognizer(std::string_view spec);

}  // namespace textsr::eval

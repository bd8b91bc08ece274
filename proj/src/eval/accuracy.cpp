// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/eval/accuracy.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <stdexcept>
#include <thread>

namespace textsr::eval {

SubsetAccuracy AccuracyResult::overall() const {
  SubsetAccuracy all;
  for (const auto& [subset, acc] : per_subset) {
    all.correct += acc.correct;
    all.total += acc.total;
  }
  return all;
}

AccuracyResult accuracy(Recognizer& recognizer, const std::vector<EvalSample>& samples, int workers) {
  if (samples.empty()) throw std::invalid_argument("accuracy needs at least one sample");
  std::vector<char> hit(samples.size(), 0);

  auto score = [&](std::size_t i) {
    try {
      hit[i] = normalize_text(recognizer.recognize(samples[i].image)) == normalize_text(samples[i].text);
    } catch (const std::exception& e) {
      spdlog::warn("recognizer failed on sample {} ('{}'): {}", i, samples[i].text, e.what());
    }
  };

  if (workers > 1 && recognizer.thread_safe()) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < samples.size();) score(i);
      });
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < samples.size(); ++i) score(i);
  }

  AccuracyResult result;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto& s = result.per_subset[samples[i].subset];
    ++s.total;
    s.correct += hit[i];
  }
  return result;
}

}  // namespace textsr::eval

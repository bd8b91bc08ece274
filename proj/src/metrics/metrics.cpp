// Copyright (C) 2026 The textsr Authors
// SPDX-License-Identifier: Apache-2.0

#include "textsr/metrics/metrics.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "textsr/core/error.hpp"
#include "textsr/simd/kernels.hpp"

namespace textsr::metrics {
namespace {

std::array<double, kSsimWindow> gaussian_taps() {
  std::array<double, kSsimWindow> taps{};
  double sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - kSsimWindow / 2;
    taps[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable 'valid' filtering of a single plane held in doubles.
std::vector<double> filter_valid(const std::vector<double>& src, int h, int w) {
  static const auto taps = gaussian_taps();
  const int ho = h - kSsimWindow + 1, wo = w - kSsimWindow + 1;
  std::vector<double> tmp(static_cast<std::size_t>(h) * wo);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < wo; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += taps[k] * src[static_cast<std::size_t>(y) * w + x + k];
      tmp[static_cast<std::size_t>(y) * wo + x] = acc;
    }
  std::vector<double> out(static_cast<std::size_t>(ho) * wo);
  for (int y = 0; y < ho; ++y)
    for (int x = 0; x < wo; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += taps[k] * tmp[static_cast<std::size_t>(y + k) * wo + x];
      out[static_cast<std::size_t>(y) * wo + x] = acc;
    }
  return out;
}

std::vector<double> luminance(const Image& img) {
  if (img.channels() == 1) return {img.values().begin(), img.values().end()};
  if (img.channels() != 3) throw ShapeError("ssim expects 1- or 3-channel images");
  std::vector<double> out(img.plane_size());
  auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
  return out;
}

std::string format_psnr(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

}  // namespace

double psnr(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw ShapeError("psnr: shape mismatch");
  if (a.empty()) throw ShapeError("psnr: empty image");
  const double mse = simd::squared_diff_sum(a.values(), b.values()) / static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw ShapeError("ssim: shape mismatch");
  const int h = a.height(), w = a.width();
  if (h < kSsimWindow || w < kSsimWindow) throw ShapeError("ssim: image smaller than the 11x11 window");
  const std::vector<double> x = luminance(a), y = luminance(b);
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xx[i] = x[i] * x[i], yy[i] = y[i] * y[i], xy[i] = x[i] * y[i];
  const auto mu_x = filter_valid(x, h, w), mu_y = filter_valid(y, h, w);
  const auto e_xx = filter_valid(xx, h, w), e_yy = filter_valid(yy, h, w), e_xy = filter_valid(xy, h, w);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i], my = mu_y[i];
    const double vx = e_xx[i] - mx * mx, vy = e_yy[i] - my * my, cov = e_xy[i] - mx * my;
    sum += ((2.0 * mx * my + kSsimC1) * (2.0 * cov + kSsimC2)) / ((mx * mx + my * my + kSsimC1) * (vx + vy + kSsimC2));
  }
  return sum / static_cast<double>(mu_x.size());
}

bool SubsetMetrics::psnr_infinite() const { return std::isinf(psnr_db); }

void MetricsAccumulator::add(const Image& sr, const Image& hr, Subset subset) {
  add_scores(subset, psnr(sr, hr), ssim(sr, hr));
}

void MetricsAccumulator::add_scores(Subset subset, double psnr_db, double ssim_value) {
  auto& s = sums_[subset];
  s.psnr += psnr_db;
  s.ssim += ssim_value;
  ++s.n;
}

void MetricsAccumulator::set_accuracy(Subset subset, double accuracy) { sums_[subset].accuracy = accuracy; }

MetricsReport MetricsAccumulator::report() const {
  MetricsReport report;
  double psnr_w = 0.0, ssim_w = 0.0, acc_w = 0.0;
  std::size_t total = 0, acc_total = 0;
  for (const auto& [subset, s] : sums_) {
    if (s.n == 0) continue;
    SubsetMetrics m;
    m.n = s.n;
    m.psnr_db = s.psnr / static_cast<double>(s.n);
    m.ssim = s.ssim / static_cast<double>(s.n);
    m.accuracy = s.accuracy;
    report.per_subset[subset] = m;
    psnr_w += m.psnr_db * static_cast<double>(s.n);
    ssim_w += m.ssim * static_cast<double>(s.n);
    total += s.n;
    if (s.accuracy) acc_w += *s.accuracy * static_cast<double>(s.n), acc_total += s.n;
  }
  if (total > 0) {
    report.average.n = total;
    report.average.psnr_db = psnr_w / static_cast<double>(total);
    report.average.ssim = ssim_w / static_cast<double>(total);
    if (acc_total > 0) report.average.accuracy = acc_w / static_cast<double>(acc_total);
  }
  return report;
}

MetricsReport aggregate_report(const std::vector<ScoredPair>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("aggregate_report: no pairs");
  MetricsAccumulator acc;
  for (const auto& p : pairs) acc.add(p.sr, p.hr, p.subset);
  return acc.report();
}

std::string MetricsReport::to_text() const {
  std::ostringstream out;
  out << std::left << std::setw(10) << "subset" << std::right << std::setw(8) << "n" << std::setw(10) << "PSNR"
      << std::setw(10) << "SSIM" << std::setw(10) << "accuracy" << "\n";
  auto row = [&out](std::string_view name, const SubsetMetrics& m) {
    out << std::left << std::setw(10) << name << std::right << std::setw(8) << m.n << std::setw(10)
        << format_psnr(m.psnr_db) << std::setw(10) << std::fixed << std::setprecision(4) << m.ssim;
    if (m.accuracy)
      out << std::setw(9) << std::setprecision(1) << *m.accuracy * 100.0 << "%";
    else
      out << std::setw(10) << "-";
    out << "\n";
  };
  for (const auto& [subset, m] : per_subset) row(to_string(subset), m);
  row("average", average);
  return out.str();
}

std::string MetricsReport::to_json() const {
  auto entry = [](const SubsetMetrics& m) {
    nlohmann::json j;
    j["n"] = m.n;
    j["psnr_db"] = m.psnr_infinite() ? nlohmann::json("inf") : nlohmann::json(m.psnr_db);
    j["ssim"] = m.ssim;
    if (m.accuracy) j["accuracy"] = *m.accuracy;
    return j;
  };
  nlohmann::json j;
  for (const auto& [subset, m] : per_subset) j["subsets"][std::string(to_string(subset))] = entry(m);
  j["average"] = entry(average);
  return j.dump(2);
}

}  // namespace textsr::metrics

// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#include "cvrender/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cvr {

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void check_dims(const Image& a, const Image& b, const char* what) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

double luminance(const Vec3& c) { return 0.299 * c.x() + 0.587 * c.y() + 0.114 * c.z(); }

std::array<double, kWindow> gaussian_kernel() {
  std::array<double, kWindow> k{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double x = i - (kWindow - 1) / 2.0;
    k[i] = std::exp(-x * x / (2.0 * kWindowSigma * kWindowSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable valid-region convolution: output is (w - 10) x (h - 10).
std::vector<double> convolve_valid(const std::vector<double>& in, int w, int h) {
  const auto kernel = gaussian_kernel();
  const int ow = w - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += kernel[i] * in[static_cast<std::size_t>(y) * w + x + i];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  const int oh = h - kWindow + 1;
  std::vector<double> out(static_cast<std::size_t>(ow) * oh, 0.0);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += kernel[i] * rows[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double mse(const Image& a, const Image& b) {
  check_dims(a, b, "mse");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    acc += (a.pixels[i] - b.pixels[i]).squaredNorm();
  }
  return acc / (3.0 * static_cast<double>(a.pixels.size()));
}

double mse_masked(const Image& a, const Image& b) {
  check_dims(a, b, "mse_masked");
  double acc = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    if (a.validity[i] && b.validity[i]) {
      acc += (a.pixels[i] - b.pixels[i]).squaredNorm();
      ++n;
    }
  }
  return n == 0 ? 0.0 : acc / (3.0 * static_cast<double>(n));
}

double psnr(const Image& a, const Image& b) {
  const double err = mse(a, b);
  if (err <= 0.0) return 99.0;
  return std::min(99.0, 10.0 * std::log10(1.0 / err));
}

double ssim(const Image& a, const Image& b) {
  check_dims(a, b, "ssim");
  if (a.width < kWindow || a.height < kWindow) {
    throw std::invalid_argument("ssim: image smaller than the 11x11 window");
  }
  const std::size_t n = a.pixels.size();
  std::vector<double> la(n), lb(n), laa(n), lbb(n), lab(n);
  for (std::size_t i = 0; i < n; ++i) {
    la[i] = luminance(a.pixels[i]);
    lb[i] = luminance(b.pixels[i]);
    laa[i] = la[i] * la[i];
    lbb[i] = lb[i] * lb[i];
    lab[i] = la[i] * lb[i];
  }
  const auto mu_a = convolve_valid(la, a.width, a.height);
  const auto mu_b = convolve_valid(lb, a.width, a.height);
  const auto m_aa = convolve_valid(laa, a.width, a.height);
  const auto m_bb = convolve_valid(lbb, a.width, a.height);
  const auto m_ab = convolve_valid(lab, a.width, a.height);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double var_a = m_aa[i] - mu_a[i] * mu_a[i];
    const double var_b = m_bb[i] - mu_b[i] * mu_b[i];
    const double cov = m_ab[i] - mu_a[i] * mu_b[i];
    const double num = (2.0 * mu_a[i] * mu_b[i] + kC1) * (2.0 * cov + kC2);
    const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + kC1) * (var_a + var_b + kC2);
    total += num / den;
  }
  return total / static_cast<double>(mu_a.size());
}

MetricReport compare_images(const Image& rendered, const Image& reference) {
  MetricReport r;
  r.mse = mse(rendered, reference);
  r.psnr = psnr(rendered, reference);
  r.ssim = ssim(rendered, reference);
  r.valid_pixel_fraction = rendered.valid_fraction();
  return r;
}

}  // namespace cvr

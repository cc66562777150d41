// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cvrender/renderer.hpp"

namespace cvr {

struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
  double mse = 0.0;
  double valid_pixel_fraction = 0.0;
};

/// Mean squared error over every RGB channel of every pixel.
double mse(const Image& a, const Image& b);

/// MSE restricted to pixels valid in both images. Returns 0 when the
/// intersection is empty.
double mse_masked(const Image& a, const Image& b);

/// 10 * log10(1 / mse) with peak 1.0, capped at 99 dB (the cap also stands
/// in for +infinity on identical images).
double psnr(const Image& a, const Image& b);

/// Mean local structural similarity on Rec. 601 luminance with the
/// reference parameterization: 11x11 Gaussian window (sigma 1.5),
/// C1 = 0.01^2, C2 = 0.03^2. Throws if either dimension is under the
/// window size.
double ssim(const Image& a, const Image& b);

MetricReport compare_images(const Image& rendered, const Image& reference);

}  // namespace cvr

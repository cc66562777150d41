// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cvrender/field.hpp"
#include "cvrender/geometry.hpp"

namespace cvr {

enum class MaskMode { Continuous, Binary };

/// Per-pixel visibility of one cost volume from a novel view, in [0, 1].
struct VisibilityMask2D {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  VisibilityMask2D() = default;
  VisibilityMask2D(int w, int h, double fill = 0.0);

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Residual uncovered mass per pixel, starts at all ones.
struct CoverageMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  static CoverageMap ones(int w, int h);

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Fraction of the volume's member views whose frusta contain the point.
double visibility_score_3d(const Vec3& point, const CostVolume& cv);

/// 1 if any member view sees the point, else 0. Dominates the continuous
/// score pointwise.
double visibility_score_binary(const Vec3& point, const CostVolume& cv);

double visibility_score(const Vec3& point, const CostVolume& cv, MaskMode mode);

/// Volume-renders the 3D visibility scores along novel-view rays: the
/// scores act as a pseudo-density, so a pixel approaches 1 only where the
/// volume both covers the ray and covers enough of its length. Output is
/// clamped to [0, 1]. Sampling is stratified and seeded per pixel.
VisibilityMask2D render_visibility_mask(const Camera& novel, const CostVolume& cv, int samples,
                                        MaskMode mode = MaskMode::Continuous,
                                        std::uint64_t seed = 0, int threads = 1);

/// Sum over pixels of coverage * mask (the greedy selection gain).
double coverage_ratio(const CoverageMap& coverage, const VisibilityMask2D& mask);

/// Elementwise coverage * (1 - mask).
CoverageMap update_coverage(const CoverageMap& coverage, const VisibilityMask2D& mask);

}  // namespace cvr

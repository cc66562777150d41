// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cvrender/field.hpp"
#include "cvrender/geometry.hpp"
#include "cvrender/selection.hpp"
#include "cvrender/visibility.hpp"

namespace cvr {

enum class FusionMode { Baseline, Combined3D, DensityMultiplier, Blend2D };

/// Rendered RGB buffer in linear [0, 1]. `validity` marks pixels where at
/// least one cost volume contributed; invalid pixels hold the background
/// color. `alpha` is the accumulated rendering weight (opacity) per pixel,
/// kept unclamped for diagnostics.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<Vec3> pixels;
  std::vector<std::uint8_t> validity;
  std::vector<double> alpha;

  Image() = default;
  Image(int w, int h, const Vec3& fill = Vec3::Zero(), bool valid = false);

  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  const Vec3& at(int x, int y) const { return pixels[index(x, y)]; }
  Vec3& at(int x, int y) { return pixels[index(x, y)]; }
  bool valid_at(int x, int y) const { return validity[index(x, y)] != 0; }
  double valid_fraction() const;
};

struct RenderConfig {
  int samples_per_ray = 256;
  FusionMode fusion_mode = FusionMode::Combined3D;
  MaskMode mask_mode = MaskMode::Continuous;
  double epsilon = 1e-6;  // weight cutoff for the normalized visibility split
  Vec3 background = Vec3::Zero();
};

/// Normalizes a set of per-volume visibility scores in place so they sum
/// to one. If the raw sum is at or below epsilon the scores are zeroed:
/// such a point belongs to no volume and must act as empty space. Returns
/// the raw sum.
double normalize_visibility_weights(std::span<double> scores, double epsilon);

/// Plain emission-absorption ray marching of one cost volume: each sample
/// contributes its color weighted by local opacity and the transmittance
/// accumulated so far. Samples outside the reference frustum act as empty
/// space. Requires config.fusion_mode == Baseline.
Image render_baseline(const Camera& novel, const CostVolume& cv, const RenderConfig& config,
                      std::uint64_t seed, int threads = 1);

/// Emission-absorption rendering of one cost volume with its visibility
/// scores folded in: sample contributions are scaled by the score and the
/// transmittance product picks up the score as an extra extinction factor.
/// Scores of zero are legal; the product form needs no logarithms.
Image render_single_masked(const Camera& novel, const CostVolume& cv, const RenderConfig& config,
                           std::uint64_t seed, int threads = 1);

/// Combined rendering across the support set. All volumes share the same
/// quadrature points per ray. At each point the visibility scores are
/// normalized into a partition of unity; the shared transmittance then
/// attenuates by the weight-mixed extinction of the volumes, and each
/// volume contributes color in proportion to its weight. Points where the
/// total visibility is at or below epsilon are treated as empty space.
/// Requires a nonempty support and config.fusion_mode == Combined3D.
Image render_combined(const Camera& novel, const SupportSet& support,
                      const std::vector<CostVolume>& volumes, const RenderConfig& config,
                      std::uint64_t seed, int threads = 1);

/// Alternative fusion schemes, for comparison against render_combined:
///  - DensityMultiplier: scales each volume's densities by its visibility
///    scores, renders each volume on its own, then blends the images with
///    per-pixel normalized 2D visibility masks.
///  - Blend2D: renders each volume via render_single_masked and blends the
///    images the same way.
/// Pixels with zero total mask weight get the background.
Image render_fusion_ablation(const Camera& novel, const SupportSet& support,
                             const std::vector<CostVolume>& volumes, const RenderConfig& config,
                             std::uint64_t seed, int threads = 1);

}  // namespace cvr

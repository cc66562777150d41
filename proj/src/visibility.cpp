// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#include "cvrender/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvrender/parallel.hpp"
#include "cvrender/sampling.hpp"

namespace cvr {

VisibilityMask2D::VisibilityMask2D(int w, int h, double fill) : width(w), height(h) {
  if (w < 1 || h < 1) throw std::invalid_argument("VisibilityMask2D: dimensions must be >= 1");
  values.assign(static_cast<std::size_t>(w) * h, fill);
}

CoverageMap CoverageMap::ones(int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("CoverageMap: dimensions must be >= 1");
  CoverageMap m;
  m.width = w;
  m.height = h;
  m.values.assign(static_cast<std::size_t>(w) * h, 1.0);
  return m;
}

double visibility_score_3d(const Vec3& point, const CostVolume& cv) {
  int seen = 0;
  for (const Camera& member : cv.members) {
    if (project(member, point).inside) ++seen;
  }
  return static_cast<double>(seen) / static_cast<double>(cv.members.size());
}

double visibility_score_binary(const Vec3& point, const CostVolume& cv) {
  for (const Camera& member : cv.members) {
    if (project(member, point).inside) return 1.0;
  }
  return 0.0;
}

double visibility_score(const Vec3& point, const CostVolume& cv, MaskMode mode) {
  return mode == MaskMode::Continuous ? visibility_score_3d(point, cv)
                                      : visibility_score_binary(point, cv);
}

VisibilityMask2D render_visibility_mask(const Camera& novel, const CostVolume& cv, int samples,
                                        MaskMode mode, std::uint64_t seed, int threads) {
  if (samples < 1) throw std::invalid_argument("render_visibility_mask: samples must be >= 1");
  const int w = novel.intrinsics.width;
  const int h = novel.intrinsics.height;
  VisibilityMask2D mask(w, h);

  parallel_for(h, thread_count(threads), [&](int py) {
    for (int px = 0; px < w; ++px) {
      const Ray ray = generate_ray(novel, Vec2(px + 0.5, py + 0.5));
      const RaySamples quad = stratified_samples(seed, px, py, ray.near, ray.far, samples);
      double transmittance = 1.0;
      double acc = 0.0;
      for (int j = 0; j < samples; ++j) {
        const Vec3 point = ray.origin + quad.t[j] * ray.direction;
        const double m = visibility_score(point, cv, mode);
        const double a = std::exp(-m * quad.delta[j]);
        acc += transmittance * (1.0 - a) * m;
        transmittance *= a;
      }
      mask.at(px, py) = std::clamp(acc, 0.0, 1.0);
    }
  });
  return mask;
}

namespace {
void check_same_shape(int aw, int ah, int bw, int bh, const char* what) {
  if (aw != bw || ah != bh) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}
}  // namespace

double coverage_ratio(const CoverageMap& coverage, const VisibilityMask2D& mask) {
  check_same_shape(coverage.width, coverage.height, mask.width, mask.height, "coverage_ratio");
  double sum = 0.0;
  for (std::size_t i = 0; i < coverage.values.size(); ++i) {
    sum += coverage.values[i] * mask.values[i];
  }
  return sum;
}

CoverageMap update_coverage(const CoverageMap& coverage, const VisibilityMask2D& mask) {
  check_same_shape(coverage.width, coverage.height, mask.width, mask.height, "update_coverage");
  CoverageMap out = coverage;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = coverage.values[i] * (1.0 - mask.values[i]);
  }
  return out;
}

}  // namespace cvr

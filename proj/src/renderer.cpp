// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#include "cvrender/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvrender/parallel.hpp"
#include "cvrender/sampling.hpp"

namespace cvr {

Image::Image(int w, int h, const Vec3& fill, bool valid) : width(w), height(h) {
  if (w < 1 || h < 1) throw std::invalid_argument("Image: dimensions must be >= 1");
  pixels.assign(static_cast<std::size_t>(w) * h, fill);
  validity.assign(pixels.size(), valid ? 1 : 0);
  alpha.assign(pixels.size(), 0.0);
}

double Image::valid_fraction() const {
  std::size_t n = 0;
  for (std::uint8_t v : validity) n += v != 0;
  return static_cast<double>(n) / static_cast<double>(validity.size());
}

double normalize_visibility_weights(std::span<double> scores, double epsilon) {
  double sum = 0.0;
  for (double s : scores) sum += s;
  if (sum > epsilon) {
    for (double& s : scores) s /= sum;
  } else {
    for (double& s : scores) s = 0.0;
  }
  return sum;
}

namespace {

Vec3 clamp01(const Vec3& c) {
  return Vec3(std::clamp(c.x(), 0.0, 1.0), std::clamp(c.y(), 0.0, 1.0),
              std::clamp(c.z(), 0.0, 1.0));
}

void finish_pixel(Image& img, int px, int py, const Vec3& color, double alpha, bool valid,
                  const Vec3& background) {
  const std::size_t i = img.index(px, py);
  img.pixels[i] = valid ? clamp01(color) : background;
  img.validity[i] = valid ? 1 : 0;
  img.alpha[i] = alpha;
}

// Renders one cost volume with an optional per-sample density scale drawn
// from its visibility scores (the DensityMultiplier ablation); scale_mode
// nullptr renders densities as stored.
Image march_single(const Camera& novel, const CostVolume& cv, const RenderConfig& config,
                   std::uint64_t seed, int threads, const MaskMode* scale_mode) {
  const int w = novel.intrinsics.width;
  const int h = novel.intrinsics.height;
  Image img(w, h);

  parallel_for(h, thread_count(threads), [&](int py) {
    for (int px = 0; px < w; ++px) {
      const Ray ray = generate_ray(novel, Vec2(px + 0.5, py + 0.5));
      const RaySamples quad =
          stratified_samples(seed, px, py, ray.near, ray.far, config.samples_per_ray);
      double transmittance = 1.0;
      double alpha_acc = 0.0;
      Vec3 color = Vec3::Zero();
      bool any_valid = false;
      for (int j = 0; j < config.samples_per_ray; ++j) {
        const Vec3 point = ray.origin + quad.t[j] * ray.direction;
        const VolumeSample s = sample_cost_volume(cv, point);
        any_valid = any_valid || s.valid;
        double sigma = s.valid ? s.sigma : 0.0;
        if (scale_mode != nullptr) sigma *= visibility_score(point, cv, *scale_mode);
        const double a = std::exp(-sigma * quad.delta[j]);
        const double weight = transmittance * (1.0 - a);
        color += weight * s.color;
        alpha_acc += weight;
        transmittance *= a;
      }
      finish_pixel(img, px, py, color, alpha_acc, any_valid, config.background);
    }
  });
  return img;
}

void check_support(const SupportSet& support, const std::vector<CostVolume>& volumes) {
  if (support.indices.empty()) {
    throw std::invalid_argument("render: support set is empty");
  }
  for (int i : support.indices) {
    if (i < 0 || i >= static_cast<int>(volumes.size())) {
      throw std::invalid_argument("render: support index out of range");
    }
  }
}

// Blends per-volume renders with per-pixel normalized 2D visibility masks.
Image blend_by_masks(const Camera& novel, const SupportSet& support,
                     const std::vector<CostVolume>& volumes, const RenderConfig& config,
                     std::uint64_t seed, int threads, const std::vector<Image>& layers) {
  const int w = novel.intrinsics.width;
  const int h = novel.intrinsics.height;
  const int k = static_cast<int>(support.indices.size());

  std::vector<VisibilityMask2D> masks;
  masks.reserve(k);
  for (int i : support.indices) {
    masks.push_back(render_visibility_mask(novel, volumes[i], config.samples_per_ray,
                                           config.mask_mode, seed, threads));
  }

  Image img(w, h);
  parallel_for(h, thread_count(threads), [&](int py) {
    std::vector<double> weight(k);
    for (int px = 0; px < w; ++px) {
      for (int c = 0; c < k; ++c) weight[c] = masks[c].at(px, py);
      const double total = normalize_visibility_weights(weight, config.epsilon);
      if (total <= config.epsilon) {
        finish_pixel(img, px, py, Vec3::Zero(), 0.0, false, config.background);
        continue;
      }
      Vec3 color = Vec3::Zero();
      double alpha_acc = 0.0;
      for (int c = 0; c < k; ++c) {
        const std::size_t i = layers[c].index(px, py);
        color += weight[c] * layers[c].pixels[i];
        alpha_acc += weight[c] * layers[c].alpha[i];
      }
      finish_pixel(img, px, py, color, alpha_acc, true, config.background);
    }
  });
  return img;
}

}  // namespace

Image render_baseline(const Camera& novel, const CostVolume& cv, const RenderConfig& config,
                      std::uint64_t seed, int threads) {
  if (config.fusion_mode != FusionMode::Baseline) {
    throw std::invalid_argument("render_baseline: config.fusion_mode must be Baseline");
  }
  return march_single(novel, cv, config, seed, threads, nullptr);
}

Image render_single_masked(const Camera& novel, const CostVolume& cv, const RenderConfig& config,
                           std::uint64_t seed, int threads) {
  const int w = novel.intrinsics.width;
  const int h = novel.intrinsics.height;
  Image img(w, h);

  parallel_for(h, thread_count(threads), [&](int py) {
    for (int px = 0; px < w; ++px) {
      const Ray ray = generate_ray(novel, Vec2(px + 0.5, py + 0.5));
      const RaySamples quad =
          stratified_samples(seed, px, py, ray.near, ray.far, config.samples_per_ray);
      double transmittance = 1.0;
      double alpha_acc = 0.0;
      Vec3 color = Vec3::Zero();
      bool covered = false;
      for (int j = 0; j < config.samples_per_ray; ++j) {
        const Vec3 point = ray.origin + quad.t[j] * ray.direction;
        const double m = visibility_score(point, cv, config.mask_mode);
        covered = covered || m > 0.0;
        const VolumeSample s = sample_cost_volume(cv, point);
        const double sigma = s.valid ? s.sigma : 0.0;
        const double a = std::exp(-sigma * quad.delta[j]);
        const double weight = transmittance * (1.0 - a) * m;
        color += weight * s.color;
        alpha_acc += weight;
        transmittance *= a * m;
      }
      finish_pixel(img, px, py, color, alpha_acc, covered, config.background);
    }
  });
  return img;
}

Image render_combined(const Camera& novel, const SupportSet& support,
                      const std::vector<CostVolume>& volumes, const RenderConfig& config,
                      std::uint64_t seed, int threads) {
  if (config.fusion_mode != FusionMode::Combined3D) {
    throw std::invalid_argument("render_combined: config.fusion_mode must be Combined3D");
  }
  check_support(support, volumes);
  const int w = novel.intrinsics.width;
  const int h = novel.intrinsics.height;
  const int k = static_cast<int>(support.indices.size());
  Image img(w, h);

  parallel_for(h, thread_count(threads), [&](int py) {
    std::vector<double> score(k);
    for (int px = 0; px < w; ++px) {
      const Ray ray = generate_ray(novel, Vec2(px + 0.5, py + 0.5));
      const RaySamples quad =
          stratified_samples(seed, px, py, ray.near, ray.far, config.samples_per_ray);
      double transmittance = 1.0;
      double alpha_acc = 0.0;
      Vec3 color = Vec3::Zero();
      bool covered = false;
      for (int j = 0; j < config.samples_per_ray; ++j) {
        const Vec3 point = ray.origin + quad.t[j] * ray.direction;
        for (int c = 0; c < k; ++c) {
          score[c] = visibility_score(point, volumes[support.indices[c]], config.mask_mode);
        }
        const double total = normalize_visibility_weights(score, config.epsilon);
        if (total <= config.epsilon) continue;  // no volume owns this point
        covered = true;
        // Mixture step: the ray attenuates by the weight-mixed extinction
        // of the volumes, so a lone fully-weighted volume reproduces the
        // single-volume series exactly.
        double step = 0.0;
        for (int c = 0; c < k; ++c) {
          const VolumeSample s = sample_cost_volume(volumes[support.indices[c]], point);
          const double sigma = s.valid ? s.sigma : 0.0;
          const double a = std::exp(-sigma * quad.delta[j]);
          const double weight = transmittance * (1.0 - a) * score[c];
          color += weight * s.color;
          alpha_acc += weight;
          step += a * score[c];
        }
        transmittance *= step;
      }
      finish_pixel(img, px, py, color, alpha_acc, covered, config.background);
    }
  });
  return img;
}

Image render_fusion_ablation(const Camera& novel, const SupportSet& support,
                             const std::vector<CostVolume>& volumes, const RenderConfig& config,
                             std::uint64_t seed, int threads) {
  if (config.fusion_mode != FusionMode::DensityMultiplier &&
      config.fusion_mode != FusionMode::Blend2D) {
    throw std::invalid_argument(
        "render_fusion_ablation: config.fusion_mode must be DensityMultiplier or Blend2D");
  }
  check_support(support, volumes);

  std::vector<Image> layers;
  layers.reserve(support.indices.size());
  for (int i : support.indices) {
    if (config.fusion_mode == FusionMode::DensityMultiplier) {
      layers.push_back(march_single(novel, volumes[i], config, seed, threads, &config.mask_mode));
    } else {
      layers.push_back(render_single_masked(novel, volumes[i], config, seed, threads));
    }
  }
  return blend_by_masks(novel, support, volumes, config, seed, threads, layers);
}

}  // namespace cvr

// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cvrender/geometry.hpp"

namespace cvr {

/// Constant-density primitive of the analytic ground-truth field.
struct Primitive {
  enum class Shape { Sphere, Box };

  Shape shape;
  Vec3 center = Vec3::Zero();  // sphere
  double radius = 0.0;
  Vec3 box_min = Vec3::Zero();  // axis-aligned box
  Vec3 box_max = Vec3::Zero();
  double density = 0.0;
  Vec3 color = Vec3::Zero();

  static Primitive sphere(const Vec3& center, double radius, double density, const Vec3& color);
  static Primitive box(const Vec3& min, const Vec3& max, double density, const Vec3& color);

  bool contains(const Vec3& point) const;
};

/// Analytic emission-absorption field: densities add where primitives
/// overlap and colors mix density-weighted.
struct SceneField {
  std::vector<Primitive> primitives;
  Vec3 background = Vec3::Zero();
};

struct FieldSample {
  double sigma;
  Vec3 color;
};

FieldSample eval_scene_field(const SceneField& scene, const Vec3& point);

struct GridResolution {
  int nu;  // columns across the reference image
  int nv;  // rows
  int nd;  // uniform depth slices in [near, far]
};

/// Member-view quorum corruption: voxels seen by fewer than `quorum`
/// members get their density replaced by `sigma_value`, emulating wrong
/// geometry where the input views lack coverage. quorum = 0 means all
/// members are required.
struct CorruptionOptions {
  bool enabled = true;
  int quorum = 0;
  double sigma_value = 0.0;
};

/// Frustum-aligned voxel grid of (density, color). The grid is
/// parameterized by (pixel-u, pixel-v, depth) in the reference camera,
/// plane-sweep style, with voxel centers at (i + 0.5) spacing in each
/// axis and depth sliced uniformly between the reference near/far planes.
struct CostVolume {
  struct Voxel {
    double sigma;
    Vec3 color;
  };

  Camera reference;
  std::vector<Camera> members;
  GridResolution resolution;
  std::vector<Voxel> grid;  // index (iu, iv, id) -> (id * nv + iv) * nu + iu
  Vec3 background = Vec3::Zero();

  std::size_t index(int iu, int iv, int id) const {
    return (static_cast<std::size_t>(id) * resolution.nv + iv) * resolution.nu + iu;
  }

  /// World position of a voxel center.
  Vec3 voxel_center(int iu, int iv, int id) const;
};

CostVolume build_cost_volume(const SceneField& scene, const Camera& reference,
                             const std::vector<Camera>& members, const GridResolution& resolution,
                             const CorruptionOptions& corruption = {}, int threads = 1);

struct VolumeSample {
  double sigma;
  Vec3 color;
  bool valid;
};

/// Trilinear lookup in (pixel-u, pixel-v, depth) space. valid=false (with
/// sigma 0) for points outside the reference frustum; inside, coordinates
/// are clamped to the voxel-center lattice at the boundary.
VolumeSample sample_cost_volume(const CostVolume& cv, const Vec3& point);

}  // namespace cvr

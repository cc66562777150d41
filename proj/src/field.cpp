// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#include "cvrender/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvrender/parallel.hpp"

namespace cvr {

namespace {

void check_color(const Vec3& c, const char* what) {
  for (int i = 0; i < 3; ++i) {
    if (!(c[i] >= 0.0 && c[i] <= 1.0)) {
      throw std::invalid_argument(std::string(what) + ": color components must be in [0, 1]");
    }
  }
}

}  // namespace

Primitive Primitive::sphere(const Vec3& center, double radius, double density, const Vec3& color) {
  if (!(radius > 0.0)) throw std::invalid_argument("Primitive::sphere: radius must be positive");
  if (!(density >= 0.0)) throw std::invalid_argument("Primitive::sphere: density must be >= 0");
  check_color(color, "Primitive::sphere");
  Primitive p;
  p.shape = Shape::Sphere;
  p.center = center;
  p.radius = radius;
  p.density = density;
  p.color = color;
  return p;
}

Primitive Primitive::box(const Vec3& min, const Vec3& max, double density, const Vec3& color) {
  if (!(min.x() < max.x() && min.y() < max.y() && min.z() < max.z())) {
    throw std::invalid_argument("Primitive::box: min must be strictly below max per axis");
  }
  if (!(density >= 0.0)) throw std::invalid_argument("Primitive::box: density must be >= 0");
  check_color(color, "Primitive::box");
  Primitive p;
  p.shape = Shape::Box;
  p.box_min = min;
  p.box_max = max;
  p.density = density;
  p.color = color;
  return p;
}

bool Primitive::contains(const Vec3& point) const {
  if (shape == Shape::Sphere) {
    return (point - center).squaredNorm() <= radius * radius;
  }
  return point.x() >= box_min.x() && point.x() <= box_max.x() &&
         point.y() >= box_min.y() && point.y() <= box_max.y() &&
         point.z() >= box_min.z() && point.z() <= box_max.z();
}

FieldSample eval_scene_field(const SceneField& scene, const Vec3& point) {
  double sigma = 0.0;
  Vec3 weighted = Vec3::Zero();
  for (const Primitive& p : scene.primitives) {
    if (p.contains(point)) {
      sigma += p.density;
      weighted += p.density * p.color;
    }
  }
  if (sigma == 0.0) {
    return {0.0, scene.background};
  }
  return {sigma, weighted / sigma};
}

Vec3 CostVolume::voxel_center(int iu, int iv, int id) const {
  const CameraIntrinsics& k = reference.intrinsics;
  const double u = (static_cast<double>(iu) + 0.5) * static_cast<double>(k.width) / resolution.nu;
  const double v = (static_cast<double>(iv) + 0.5) * static_cast<double>(k.height) / resolution.nv;
  const double z = reference.near +
                   (static_cast<double>(id) + 0.5) * (reference.far - reference.near) / resolution.nd;
  const Vec3 cam(z * (u - k.principal_x) / k.focal_x, z * (v - k.principal_y) / k.focal_y, z);
  return reference.pose.rotation.transpose() * (cam - reference.pose.translation);
}

CostVolume build_cost_volume(const SceneField& scene, const Camera& reference,
                             const std::vector<Camera>& members, const GridResolution& resolution,
                             const CorruptionOptions& corruption, int threads) {
  if (members.empty()) {
    throw std::invalid_argument("build_cost_volume: member view list is empty");
  }
  if (resolution.nu < 2 || resolution.nv < 2 || resolution.nd < 2) {
    throw std::invalid_argument("build_cost_volume: every resolution component must be >= 2");
  }
  CostVolume cv{reference, members, resolution, {}, scene.background};
  cv.grid.resize(static_cast<std::size_t>(resolution.nu) * resolution.nv * resolution.nd);

  const int quorum = corruption.quorum > 0 ? corruption.quorum : static_cast<int>(members.size());
  parallel_for(resolution.nd, thread_count(threads), [&](int id) {
    for (int iv = 0; iv < resolution.nv; ++iv) {
      for (int iu = 0; iu < resolution.nu; ++iu) {
        const Vec3 world = cv.voxel_center(iu, iv, id);
        const FieldSample s = eval_scene_field(scene, world);
        CostVolume::Voxel voxel{s.sigma, s.color};
        if (corruption.enabled) {
          int seen = 0;
          for (const Camera& member : members) {
            if (project(member, world).inside) ++seen;
          }
          if (seen < quorum) voxel.sigma = corruption.sigma_value;
        }
        cv.grid[cv.index(iu, iv, id)] = voxel;
      }
    }
  });
  return cv;
}

VolumeSample sample_cost_volume(const CostVolume& cv, const Vec3& point) {
  const Projection proj = project(cv.reference, point);
  if (!proj.inside) {
    return {0.0, cv.background, false};
  }
  const CameraIntrinsics& k = cv.reference.intrinsics;
  const GridResolution& res = cv.resolution;

  // Continuous lattice coordinates; voxel centers sit at integers.
  const double gu = proj.pixel.x() * res.nu / static_cast<double>(k.width) - 0.5;
  const double gv = proj.pixel.y() * res.nv / static_cast<double>(k.height) - 0.5;
  const double gd =
      (proj.depth - cv.reference.near) * res.nd / (cv.reference.far - cv.reference.near) - 0.5;

  const auto cell = [](double g, int n, int& i0, double& frac) {
    const double c = std::clamp(g, 0.0, static_cast<double>(n - 1));
    i0 = std::min(static_cast<int>(c), n - 2);
    frac = c - static_cast<double>(i0);
  };
  int iu, iv, id;
  double fu, fv, fd;
  cell(gu, res.nu, iu, fu);
  cell(gv, res.nv, iv, fv);
  cell(gd, res.nd, id, fd);

  double sigma = 0.0;
  Vec3 color = Vec3::Zero();
  for (int du = 0; du < 2; ++du) {
    for (int dv = 0; dv < 2; ++dv) {
      for (int dd = 0; dd < 2; ++dd) {
        const double w = (du ? fu : 1.0 - fu) * (dv ? fv : 1.0 - fv) * (dd ? fd : 1.0 - fd);
        const CostVolume::Voxel& vox = cv.grid[cv.index(iu + du, iv + dv, id + dd)];
        sigma += w * vox.sigma;
        color += w * vox.color;
      }
    }
  }
  return {sigma, color, true};
}

}  // namespace cvr

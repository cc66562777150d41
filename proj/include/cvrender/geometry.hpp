// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace cvr {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pinhole intrinsics. Pixel (x, y) addresses the continuous image plane;
/// the center of integer pixel (i, j) is at (i + 0.5, j + 0.5).
struct CameraIntrinsics {
  double focal_x;
  double focal_y;
  double principal_x;
  double principal_y;
  int width;
  int height;

  CameraIntrinsics(double fx, double fy, double cx, double cy, int w, int h);
};

/// Rigid world-to-camera transform: p_cam = R * p_world + t.
/// R must be orthonormal with det +1 (checked to 1e-9 on construction).
struct CameraPose {
  Mat3 rotation;
  Vec3 translation;

  CameraPose(const Mat3& r, const Vec3& t);

  /// Pose with the camera at `eye` looking toward `target`, +z forward,
  /// +y down the image (so `up` is the world up direction).
  static CameraPose look_at(const Vec3& eye, const Vec3& target, const Vec3& up);
};

struct Camera {
  CameraIntrinsics intrinsics;
  CameraPose pose;
  double near;
  double far;

  Camera(const CameraIntrinsics& k, const CameraPose& p, double near_plane, double far_plane);

  /// Camera center in world coordinates (-R^T t).
  Vec3 center() const;
};

/// Ray r(t) = origin + t * direction, with `direction` unit length and the
/// marched segment restricted to t in [near, far] (distances along the ray).
struct Ray {
  Vec3 origin;
  Vec3 direction;
  double near;
  double far;

  Ray(const Vec3& o, const Vec3& d, double near_t, double far_t);
};

struct Projection {
  Vec2 pixel;    // undefined content when depth <= 0
  double depth;  // z in the camera frame
  bool inside;   // depth in [near, far] and pixel in [0, W) x [0, H)
};

/// Projects a world point through the pinhole model. Points behind the
/// camera yield inside=false rather than an error.
Projection project(const Camera& camera, const Vec3& point);

/// Ray through a continuous pixel coordinate. Throws std::invalid_argument
/// for pixels outside [0, W) x [0, H).
Ray generate_ray(const Camera& camera, const Vec2& pixel);

/// Euclidean distance between the two camera centers.
double pose_distance(const Camera& a, const Camera& b);

/// Camera covering the same view at 1/factor resolution (used for
/// reduced-resolution visibility masks). factor >= 1.
Camera downscale(const Camera& camera, int factor);

}  // namespace cvr

// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#include "cvrender/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace cvr {

namespace {
constexpr double kOrthoTol = 1e-9;
}

CameraIntrinsics::CameraIntrinsics(double fx, double fy, double cx, double cy, int w, int h)
    : focal_x(fx), focal_y(fy), principal_x(cx), principal_y(cy), width(w), height(h) {
  if (!(focal_x > 0.0) || !(focal_y > 0.0)) {
    throw std::invalid_argument("CameraIntrinsics: focal lengths must be positive");
  }
  if (width < 1 || height < 1) {
    throw std::invalid_argument("CameraIntrinsics: image dimensions must be >= 1");
  }
}

CameraPose::CameraPose(const Mat3& r, const Vec3& t) : rotation(r), translation(t) {
  const Mat3 residual = rotation.transpose() * rotation - Mat3::Identity();
  if (residual.cwiseAbs().maxCoeff() > kOrthoTol) {
    throw std::invalid_argument("CameraPose: rotation is not orthonormal");
  }
  if (std::abs(rotation.determinant() - 1.0) > kOrthoTol) {
    throw std::invalid_argument("CameraPose: rotation must have determinant +1");
  }
}

CameraPose CameraPose::look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
  const Vec3 forward = (target - eye).normalized();
  Vec3 right = forward.cross(up);
  if (right.norm() < 1e-12) {
    throw std::invalid_argument("CameraPose::look_at: up is parallel to the view direction");
  }
  right.normalize();
  const Vec3 down = forward.cross(right);  // +y runs down the image

  Mat3 r;
  r.row(0) = right.transpose();
  r.row(1) = down.transpose();
  r.row(2) = forward.transpose();
  return CameraPose(r, -(r * eye));
}

Camera::Camera(const CameraIntrinsics& k, const CameraPose& p, double near_plane, double far_plane)
    : intrinsics(k), pose(p), near(near_plane), far(far_plane) {
  if (!(0.0 < near && near < far)) {
    throw std::invalid_argument("Camera: requires 0 < near < far");
  }
}

Vec3 Camera::center() const { return -(pose.rotation.transpose() * pose.translation); }

Ray::Ray(const Vec3& o, const Vec3& d, double near_t, double far_t)
    : origin(o), direction(d), near(near_t), far(far_t) {
  if (std::abs(direction.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("Ray: direction must be unit length");
  }
  if (!(near < far)) {
    throw std::invalid_argument("Ray: requires near < far");
  }
}

Projection project(const Camera& camera, const Vec3& point) {
  const Vec3 cam = camera.pose.rotation * point + camera.pose.translation;
  Projection out;
  out.depth = cam.z();
  if (out.depth <= 0.0) {
    out.pixel = Vec2(-1.0, -1.0);
    out.inside = false;
    return out;
  }
  const CameraIntrinsics& k = camera.intrinsics;
  out.pixel.x() = k.focal_x * cam.x() / cam.z() + k.principal_x;
  out.pixel.y() = k.focal_y * cam.y() / cam.z() + k.principal_y;
  out.inside = out.depth >= camera.near && out.depth <= camera.far &&
               out.pixel.x() >= 0.0 && out.pixel.x() < static_cast<double>(k.width) &&
               out.pixel.y() >= 0.0 && out.pixel.y() < static_cast<double>(k.height);
  return out;
}

Ray generate_ray(const Camera& camera, const Vec2& pixel) {
  const CameraIntrinsics& k = camera.intrinsics;
  if (!(pixel.x() >= 0.0 && pixel.x() < static_cast<double>(k.width) &&
        pixel.y() >= 0.0 && pixel.y() < static_cast<double>(k.height))) {
    throw std::invalid_argument("generate_ray: pixel outside image bounds");
  }
  const Vec3 dir_cam((pixel.x() - k.principal_x) / k.focal_x,
                     (pixel.y() - k.principal_y) / k.focal_y, 1.0);
  const Vec3 dir_world = (camera.pose.rotation.transpose() * dir_cam).normalized();
  return Ray(camera.center(), dir_world, camera.near, camera.far);
}

double pose_distance(const Camera& a, const Camera& b) { return (a.center() - b.center()).norm(); }

Camera downscale(const Camera& camera, int factor) {
  if (factor < 1) {
    throw std::invalid_argument("downscale: factor must be >= 1");
  }
  const CameraIntrinsics& k = camera.intrinsics;
  const double f = static_cast<double>(factor);
  const CameraIntrinsics scaled(k.focal_x / f, k.focal_y / f, k.principal_x / f,
                                k.principal_y / f, std::max(1, k.width / factor),
                                std::max(1, k.height / factor));
  return Camera(scaled, camera.pose, camera.near, camera.far);
}

}  // namespace cvr

// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvrender/field.hpp"
#include "cvrender/geometry.hpp"
#include "cvrender/renderer.hpp"

namespace cvr {

/// Scene/config file problem. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SelectionStrategy { Greedy, NearestPose, MaxVisibility };
enum class PoolPolicy { Sliding, Exhaustive };

struct VolumeParams {
  int members_per_volume = 3;  // input views per cost volume
  GridResolution resolution = {64, 64, 64};
  bool corruption = true;
  int quorum = 0;  // 0 = all members required
  double corruption_sigma = 0.0;
  PoolPolicy pool_policy = PoolPolicy::Sliding;
  int nearest_inputs = 6;  // capped at the available input count on load
};

struct RenderParams {
  int samples_per_ray = 256;
  int support_size = 4;  // capped at the candidate count on load
  FusionMode fusion_mode = FusionMode::Combined3D;
  MaskMode mask_mode = MaskMode::Continuous;
  int mask_downsample = 4;  // selection masks only; final renders are full resolution
  double epsilon = 1e-6;
  SelectionStrategy selection = SelectionStrategy::Greedy;
  std::vector<int> novel_indices;  // empty = render every novel view
};

struct SceneConfig {
  int schema = 1;
  std::uint64_t seed = 0;
  SceneField scene;
  std::vector<Camera> inputs;
  std::vector<Camera> novel;
  VolumeParams volume;
  RenderParams render;

  /// Inputs considered per novel view after the nearest-N restriction.
  int effective_nearest() const;
  /// Candidate cost volumes per novel view under the configured policy.
  int candidate_count() const;
  RenderConfig render_config() const;
};

SceneConfig parse_scene_config(const std::string& path);
SceneConfig parse_scene_config_text(const std::string& text);

/// Canonical re-serialization: defaults materialized, poses as explicit
/// rotation/translation. emit(parse(emit(x))) == emit(x).
std::string emit_scene_config(const SceneConfig& config);

const char* to_string(SelectionStrategy s);
const char* to_string(PoolPolicy p);
const char* to_string(FusionMode m);
const char* to_string(MaskMode m);

}  // namespace cvr

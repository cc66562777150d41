// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#include "cvrender/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cvr {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& kind, const std::string& path, const std::string& msg) {
  throw ConfigError(kind + " at " + path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail("unknown key", path, "'" + item.key() + "'");
    }
  }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail("missing key", path, "'" + key + "'");
  return obj.at(key);
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail("type error", path, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail("type error", path, "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail("type error", path, "expected a boolean");
  return v.get<bool>();
}

Vec3 get_vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail("type error", path, "expected an array of 3 numbers");
  return Vec3(get_number(v[0], path), get_number(v[1], path), get_number(v[2], path));
}

Vec3 get_color(const json& v, const std::string& path) {
  const Vec3 c = get_vec3(v, path);
  for (int i = 0; i < 3; ++i) {
    if (!(c[i] >= 0.0 && c[i] <= 1.0)) fail("range error", path, "color components must be in [0, 1]");
  }
  return c;
}

Primitive parse_primitive(const json& v, const std::string& path) {
  if (!v.is_object()) fail("type error", path, "expected an object");
  const std::string type = require(v, path, "type").get<std::string>();
  try {
    if (type == "sphere") {
      check_keys(v, path, {"type", "center", "radius", "density", "color"});
      return Primitive::sphere(get_vec3(require(v, path, "center"), path + ".center"),
                               get_number(require(v, path, "radius"), path + ".radius"),
                               get_number(require(v, path, "density"), path + ".density"),
                               get_color(require(v, path, "color"), path + ".color"));
    }
    if (type == "box") {
      check_keys(v, path, {"type", "min", "max", "density", "color"});
      return Primitive::box(get_vec3(require(v, path, "min"), path + ".min"),
                            get_vec3(require(v, path, "max"), path + ".max"),
                            get_number(require(v, path, "density"), path + ".density"),
                            get_color(require(v, path, "color"), path + ".color"));
    }
  } catch (const std::invalid_argument& e) {
    fail("range error", path, e.what());
  }
  fail("range error", path + ".type", "expected 'sphere' or 'box', got '" + type + "'");
}

Camera parse_camera(const json& v, const std::string& path) {
  if (!v.is_object()) fail("type error", path, "expected an object");
  check_keys(v, path,
             {"width", "height", "focal", "principal", "near", "far", "position", "look_at", "up",
              "rotation", "translation"});
  const int w = get_int(require(v, path, "width"), path + ".width");
  const int h = get_int(require(v, path, "height"), path + ".height");
  const json& focal = require(v, path, "focal");
  if (!focal.is_array() || focal.size() != 2) fail("type error", path + ".focal", "expected [fx, fy]");
  double cx = w / 2.0;
  double cy = h / 2.0;
  if (v.contains("principal")) {
    const json& pp = v.at("principal");
    if (!pp.is_array() || pp.size() != 2) fail("type error", path + ".principal", "expected [cx, cy]");
    cx = get_number(pp[0], path + ".principal");
    cy = get_number(pp[1], path + ".principal");
  }
  try {
    const CameraIntrinsics k(get_number(focal[0], path + ".focal"),
                             get_number(focal[1], path + ".focal"), cx, cy, w, h);
    CameraPose pose = [&]() {
      if (v.contains("rotation") || v.contains("translation")) {
        if (v.contains("position") || v.contains("look_at") || v.contains("up")) {
          fail("range error", path, "give either rotation/translation or position/look_at, not both");
        }
        const json& r = require(v, path, "rotation");
        if (!r.is_array() || r.size() != 9) {
          fail("type error", path + ".rotation", "expected 9 row-major numbers");
        }
        Mat3 rot;
        for (int i = 0; i < 9; ++i) rot(i / 3, i % 3) = get_number(r[i], path + ".rotation");
        return CameraPose(rot, get_vec3(require(v, path, "translation"), path + ".translation"));
      }
      const Vec3 position = get_vec3(require(v, path, "position"), path + ".position");
      const Vec3 target = get_vec3(require(v, path, "look_at"), path + ".look_at");
      const Vec3 up = v.contains("up") ? get_vec3(v.at("up"), path + ".up") : Vec3(0.0, 1.0, 0.0);
      return CameraPose::look_at(position, target, up);
    }();
    return Camera(k, pose, get_number(require(v, path, "near"), path + ".near"),
                  get_number(require(v, path, "far"), path + ".far"));
  } catch (const std::invalid_argument& e) {
    fail("range error", path, e.what());
  }
}

std::vector<Camera> parse_cameras(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail("type error", path, "expected a nonempty array of cameras");
  std::vector<Camera> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(parse_camera(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <typename Enum>
Enum parse_enum(const json& v, const std::string& path,
                const std::vector<std::pair<std::string, Enum>>& table) {
  if (!v.is_string()) fail("type error", path, "expected a string");
  const std::string s = v.get<std::string>();
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  std::string options;
  for (const auto& [name, value] : table) options += (options.empty() ? "'" : ", '") + name + "'";
  fail("range error", path, "got '" + s + "', expected one of " + options);
}

const std::vector<std::pair<std::string, FusionMode>> kFusionTable = {
    {"baseline", FusionMode::Baseline},
    {"combined-3d", FusionMode::Combined3D},
    {"density-multiplier", FusionMode::DensityMultiplier},
    {"blend-2d", FusionMode::Blend2D}};
const std::vector<std::pair<std::string, MaskMode>> kMaskTable = {
    {"continuous", MaskMode::Continuous}, {"binary", MaskMode::Binary}};
const std::vector<std::pair<std::string, PoolPolicy>> kPoolTable = {
    {"sliding", PoolPolicy::Sliding}, {"exhaustive", PoolPolicy::Exhaustive}};
const std::vector<std::pair<std::string, SelectionStrategy>> kSelectionTable = {
    {"greedy", SelectionStrategy::Greedy},
    {"nearest-pose", SelectionStrategy::NearestPose},
    {"max-visibility", SelectionStrategy::MaxVisibility}};

int binomial_capped(int n, int k, int cap) {
  long long c = 1;
  for (int i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > cap) return cap;
  }
  return static_cast<int>(c);
}

json camera_to_json(const Camera& c) {
  json v;
  v["width"] = c.intrinsics.width;
  v["height"] = c.intrinsics.height;
  v["focal"] = {c.intrinsics.focal_x, c.intrinsics.focal_y};
  v["principal"] = {c.intrinsics.principal_x, c.intrinsics.principal_y};
  v["near"] = c.near;
  v["far"] = c.far;
  json rot = json::array();
  for (int i = 0; i < 9; ++i) rot.push_back(c.pose.rotation(i / 3, i % 3));
  v["rotation"] = rot;
  v["translation"] = {c.pose.translation.x(), c.pose.translation.y(), c.pose.translation.z()};
  return v;
}

}  // namespace

int SceneConfig::effective_nearest() const {
  return std::min(volume.nearest_inputs, static_cast<int>(inputs.size()));
}

int SceneConfig::candidate_count() const {
  const int n = effective_nearest();
  const int i = volume.members_per_volume;
  if (n < i) return 0;
  return volume.pool_policy == PoolPolicy::Sliding ? n - i + 1 : binomial_capped(n, i, 1 << 20);
}

RenderConfig SceneConfig::render_config() const {
  RenderConfig rc;
  rc.samples_per_ray = render.samples_per_ray;
  rc.fusion_mode = render.fusion_mode;
  rc.mask_mode = render.mask_mode;
  rc.epsilon = render.epsilon;
  rc.background = scene.background;
  return rc;
}

SceneConfig parse_scene_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene_config_text(buf.str());
}

SceneConfig parse_scene_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("type error at $: expected an object");
  check_keys(root, "$", {"schema", "seed", "scene", "cameras", "volume", "render"});

  SceneConfig config;
  config.schema = get_int(require(root, "$", "schema"), "$.schema");
  if (config.schema != 1) fail("range error", "$.schema", "unsupported schema version");
  if (root.contains("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0) {
      fail("range error", "$.seed", "expected a nonnegative integer");
    }
    config.seed = s.get<std::uint64_t>();
  }

  const json& scene = require(root, "$", "scene");
  check_keys(scene, "$.scene", {"background", "primitives"});
  config.scene.background = get_color(require(scene, "$.scene", "background"), "$.scene.background");
  if (scene.contains("primitives")) {
    const json& prims = scene.at("primitives");
    if (!prims.is_array()) fail("type error", "$.scene.primitives", "expected an array");
    for (std::size_t i = 0; i < prims.size(); ++i) {
      config.scene.primitives.push_back(
          parse_primitive(prims[i], "$.scene.primitives[" + std::to_string(i) + "]"));
    }
  }

  const json& cameras = require(root, "$", "cameras");
  check_keys(cameras, "$.cameras", {"inputs", "novel"});
  config.inputs = parse_cameras(require(cameras, "$.cameras", "inputs"), "$.cameras.inputs");
  config.novel = parse_cameras(require(cameras, "$.cameras", "novel"), "$.cameras.novel");

  if (root.contains("volume")) {
    const json& vol = root.at("volume");
    check_keys(vol, "$.volume",
               {"members_per_volume", "resolution", "corruption", "quorum", "corruption_sigma",
                "pool_policy", "nearest_inputs"});
    VolumeParams& p = config.volume;
    if (vol.contains("members_per_volume")) {
      p.members_per_volume = get_int(vol.at("members_per_volume"), "$.volume.members_per_volume");
    }
    if (vol.contains("resolution")) {
      const json& r = vol.at("resolution");
      if (!r.is_array() || r.size() != 3) {
        fail("type error", "$.volume.resolution", "expected [nu, nv, nd]");
      }
      p.resolution = {get_int(r[0], "$.volume.resolution"), get_int(r[1], "$.volume.resolution"),
                      get_int(r[2], "$.volume.resolution")};
    }
    if (vol.contains("corruption")) p.corruption = get_bool(vol.at("corruption"), "$.volume.corruption");
    if (vol.contains("quorum")) p.quorum = get_int(vol.at("quorum"), "$.volume.quorum");
    if (vol.contains("corruption_sigma")) {
      p.corruption_sigma = get_number(vol.at("corruption_sigma"), "$.volume.corruption_sigma");
    }
    if (vol.contains("pool_policy")) {
      p.pool_policy = parse_enum(vol.at("pool_policy"), "$.volume.pool_policy", kPoolTable);
    }
    if (vol.contains("nearest_inputs")) {
      p.nearest_inputs = get_int(vol.at("nearest_inputs"), "$.volume.nearest_inputs");
    }
  }

  if (root.contains("render")) {
    const json& ren = root.at("render");
    check_keys(ren, "$.render",
               {"samples_per_ray", "support_size", "fusion_mode", "mask_mode", "mask_downsample",
                "epsilon", "selection", "novel_indices"});
    RenderParams& p = config.render;
    if (ren.contains("samples_per_ray")) {
      p.samples_per_ray = get_int(ren.at("samples_per_ray"), "$.render.samples_per_ray");
    }
    if (ren.contains("support_size")) {
      p.support_size = get_int(ren.at("support_size"), "$.render.support_size");
    }
    if (ren.contains("fusion_mode")) {
      p.fusion_mode = parse_enum(ren.at("fusion_mode"), "$.render.fusion_mode", kFusionTable);
    }
    if (ren.contains("mask_mode")) {
      p.mask_mode = parse_enum(ren.at("mask_mode"), "$.render.mask_mode", kMaskTable);
    }
    if (ren.contains("mask_downsample")) {
      p.mask_downsample = get_int(ren.at("mask_downsample"), "$.render.mask_downsample");
    }
    if (ren.contains("epsilon")) p.epsilon = get_number(ren.at("epsilon"), "$.render.epsilon");
    if (ren.contains("selection")) {
      p.selection = parse_enum(ren.at("selection"), "$.render.selection", kSelectionTable);
    }
    if (ren.contains("novel_indices")) {
      const json& idx = ren.at("novel_indices");
      if (!idx.is_array()) fail("type error", "$.render.novel_indices", "expected an array");
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const int v = get_int(idx[i], "$.render.novel_indices");
        if (v < 0 || v >= static_cast<int>(config.novel.size())) {
          fail("index error", "$.render.novel_indices[" + std::to_string(i) + "]",
               "novel view " + std::to_string(v) + " does not exist");
        }
        p.novel_indices.push_back(v);
      }
    }
  }

  // Cross-field ranges. nearest_inputs and support_size cap to what the
  // scene provides; hard contradictions are rejected.
  VolumeParams& vp = config.volume;
  RenderParams& rp = config.render;
  const int n_inputs = static_cast<int>(config.inputs.size());
  if (vp.members_per_volume < 1) {
    fail("range error", "$.volume.members_per_volume", "must be >= 1");
  }
  if (vp.members_per_volume > n_inputs) {
    fail("range error", "$.volume.members_per_volume",
         "needs " + std::to_string(vp.members_per_volume) + " members but only " +
             std::to_string(n_inputs) + " input cameras exist");
  }
  if (vp.resolution.nu < 2 || vp.resolution.nv < 2 || vp.resolution.nd < 2) {
    fail("range error", "$.volume.resolution", "every component must be >= 2");
  }
  if (vp.quorum < 0 || vp.quorum > vp.members_per_volume) {
    fail("range error", "$.volume.quorum", "must be in [0, members_per_volume]");
  }
  if (vp.nearest_inputs < vp.members_per_volume) {
    fail("range error", "$.volume.nearest_inputs", "must be >= members_per_volume");
  }
  vp.nearest_inputs = std::min(vp.nearest_inputs, n_inputs);
  if (rp.samples_per_ray < 1) fail("range error", "$.render.samples_per_ray", "must be >= 1");
  if (rp.mask_downsample < 1) fail("range error", "$.render.mask_downsample", "must be >= 1");
  if (!(rp.epsilon > 0.0)) fail("range error", "$.render.epsilon", "must be > 0");
  if (rp.support_size < 1) fail("range error", "$.render.support_size", "must be >= 1");
  rp.support_size = std::min(rp.support_size, config.candidate_count());
  return config;
}

std::string emit_scene_config(const SceneConfig& config) {
  json root;
  root["schema"] = config.schema;
  root["seed"] = config.seed;

  json scene;
  scene["background"] = {config.scene.background.x(), config.scene.background.y(),
                         config.scene.background.z()};
  json prims = json::array();
  for (const Primitive& p : config.scene.primitives) {
    json v;
    if (p.shape == Primitive::Shape::Sphere) {
      v["type"] = "sphere";
      v["center"] = {p.center.x(), p.center.y(), p.center.z()};
      v["radius"] = p.radius;
    } else {
      v["type"] = "box";
      v["min"] = {p.box_min.x(), p.box_min.y(), p.box_min.z()};
      v["max"] = {p.box_max.x(), p.box_max.y(), p.box_max.z()};
    }
    v["density"] = p.density;
    v["color"] = {p.color.x(), p.color.y(), p.color.z()};
    prims.push_back(v);
  }
  scene["primitives"] = prims;
  root["scene"] = scene;

  json cameras;
  cameras["inputs"] = json::array();
  for (const Camera& c : config.inputs) cameras["inputs"].push_back(camera_to_json(c));
  cameras["novel"] = json::array();
  for (const Camera& c : config.novel) cameras["novel"].push_back(camera_to_json(c));
  root["cameras"] = cameras;

  json vol;
  vol["members_per_volume"] = config.volume.members_per_volume;
  vol["resolution"] = {config.volume.resolution.nu, config.volume.resolution.nv,
                       config.volume.resolution.nd};
  vol["corruption"] = config.volume.corruption;
  vol["quorum"] = config.volume.quorum;
  vol["corruption_sigma"] = config.volume.corruption_sigma;
  vol["pool_policy"] = to_string(config.volume.pool_policy);
  vol["nearest_inputs"] = config.volume.nearest_inputs;
  root["volume"] = vol;

  json ren;
  ren["samples_per_ray"] = config.render.samples_per_ray;
  ren["support_size"] = config.render.support_size;
  ren["fusion_mode"] = to_string(config.render.fusion_mode);
  ren["mask_mode"] = to_string(config.render.mask_mode);
  ren["mask_downsample"] = config.render.mask_downsample;
  ren["epsilon"] = config.render.epsilon;
  ren["selection"] = to_string(config.render.selection);
  if (!config.render.novel_indices.empty()) ren["novel_indices"] = config.render.novel_indices;
  root["render"] = ren;

  return root.dump(2) + "\n";
}

const char* to_string(SelectionStrategy s) {
  switch (s) {
    case SelectionStrategy::Greedy: return "greedy";
    case SelectionStrategy::NearestPose: return "nearest-pose";
    case SelectionStrategy::MaxVisibility: return "max-visibility";
  }
  return "?";
}

const char* to_string(PoolPolicy p) {
  return p == PoolPolicy::Sliding ? "sliding" : "exhaustive";
}

const char* to_string(FusionMode m) {
  switch (m) {
    case FusionMode::Baseline: return "baseline";
    case FusionMode::Combined3D: return "combined-3d";
    case FusionMode::DensityMultiplier: return "density-multiplier";
    case FusionMode::Blend2D: return "blend-2d";
  }
  return "?";
}

const char* to_string(MaskMode m) {
  return m == MaskMode::Continuous ? "continuous" : "binary";
}

}  // namespace cvr

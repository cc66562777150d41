// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace cvr {

// splitmix64. Used instead of <random> engines because the double streams
// must be bit-identical across platforms and cheap to reseed per pixel.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic uniform stream for one pixel. The stream depends only on
/// (seed, px, py), never on evaluation order or thread assignment.
class PixelRng {
 public:
  PixelRng(std::uint64_t seed, int px, int py)
      : state_(mix64(mix64(seed) ^
                     (static_cast<std::uint64_t>(static_cast<std::uint32_t>(py)) << 32 |
                      static_cast<std::uint32_t>(px)))) {}

  double next() {
    state_ = mix64(state_);
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Stratified quadrature along one ray: one jittered sample per uniform bin
/// of [near, far]. delta[j] = t[j+1] - t[j] for interior samples; the last
/// delta closes the segment to the far bound.
struct RaySamples {
  std::vector<double> t;
  std::vector<double> delta;
};

inline RaySamples stratified_samples(std::uint64_t seed, int px, int py, double near, double far,
                                     int count) {
  PixelRng rng(seed, px, py);
  RaySamples s;
  s.t.resize(count);
  s.delta.resize(count);
  const double bin = (far - near) / static_cast<double>(count);
  for (int j = 0; j < count; ++j) {
    s.t[j] = near + (static_cast<double>(j) + rng.next()) * bin;
  }
  for (int j = 0; j + 1 < count; ++j) {
    s.delta[j] = s.t[j + 1] - s.t[j];
  }
  s.delta[count - 1] = far - s.t[count - 1];
  return s;
}

}  // namespace cvr

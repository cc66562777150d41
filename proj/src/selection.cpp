// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#include "cvrender/selection.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cvr {

SelectionObjective::SelectionObjective(std::vector<VisibilityMask2D> candidate_masks)
    : masks(std::move(candidate_masks)) {
  if (masks.empty()) throw std::invalid_argument("SelectionObjective: need at least one mask");
  for (const VisibilityMask2D& m : masks) {
    if (m.width != masks.front().width || m.height != masks.front().height) {
      throw std::invalid_argument("SelectionObjective: masks must share dimensions");
    }
  }
}

namespace {

void check_k(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("selection: require 1 <= k <= candidate count");
}

}  // namespace

GreedySelection select_greedy_trace(const SelectionObjective& objective, int k) {
  const int n = objective.count();
  check_k(k, n);
  GreedySelection out;
  out.support.capacity = k;
  out.residual = CoverageMap::ones(objective.masks.front().width, objective.masks.front().height);
  std::vector<bool> taken(n, false);

  while (static_cast<int>(out.support.indices.size()) < k) {
    int best = -1;
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double ratio = coverage_ratio(out.residual, objective.masks[i]);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = i;
      }
    }
    taken[best] = true;
    out.support.indices.push_back(best);
    out.gains.push_back(best_ratio);
    out.residual = update_coverage(out.residual, objective.masks[best]);
  }
  return out;
}

SupportSet select_greedy(const SelectionObjective& objective, int k) {
  return select_greedy_trace(objective, k).support;
}

double objective_value(const SelectionObjective& objective, const SupportSet& subset) {
  for (int i : subset.indices) {
    if (i < 0 || i >= objective.count()) {
      throw std::invalid_argument("objective_value: index out of range");
    }
  }
  const VisibilityMask2D& first = objective.masks.front();
  double total = 0.0;
  for (std::size_t p = 0; p < first.values.size(); ++p) {
    double uncovered = 1.0;
    for (int i : subset.indices) {
      uncovered *= 1.0 - objective.masks[i].values[p];
    }
    total += 1.0 - uncovered;
  }
  return total;
}

SupportSet select_bruteforce(const SelectionObjective& objective, int k, std::uint64_t cap) {
  const int n = objective.count();
  check_k(k, n);

  std::uint64_t combos = 1;
  for (int i = 0; i < k; ++i) {
    combos = combos * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    if (combos > cap) {
      throw std::invalid_argument("select_bruteforce: combination count exceeds cap");
    }
  }

  SupportSet best;
  best.capacity = k;
  double best_value = -1.0;

  // Lexicographic subset enumeration; strict > keeps the first (smallest) maximizer.
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  while (true) {
    SupportSet candidate{subset, k};
    const double value = objective_value(objective, candidate);
    if (value > best_value) {
      best_value = value;
      best = candidate;
    }
    int pos = k - 1;
    while (pos >= 0 && subset[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
  }
  return best;
}

SupportSet select_nearest_pose(const Camera& novel, const std::vector<Camera>& references, int k) {
  const int n = static_cast<int>(references.size());
  check_k(k, n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<double> dist(n);
  for (int i = 0; i < n; ++i) dist[i] = pose_distance(novel, references[i]);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] < dist[b]; });
  order.resize(k);
  return {order, k};
}

SupportSet select_max_visibility(const SelectionObjective& objective, int k) {
  const int n = objective.count();
  check_k(k, n);
  std::vector<double> mass(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (double v : objective.masks[i].values) mass[i] += v;
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mass[a] > mass[b]; });
  order.resize(k);
  return {order, k};
}

}  // namespace cvr

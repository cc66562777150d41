// Copyright 2026 The cvrender Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cvrender/geometry.hpp"
#include "cvrender/visibility.hpp"

namespace cvr {

/// Ordered set of selected cost-volume indices, at most `capacity` of them.
struct SupportSet {
  std::vector<int> indices;
  int capacity = 0;
};

/// Candidate visibility masks scored by the soft-coverage objective
/// f(S) = sum over pixels of 1 - prod_{k in S} (1 - M_k). The objective is
/// monotone submodular, so greedy selection carries the usual 1 - 1/e
/// guarantee against the exhaustive optimum.
struct SelectionObjective {
  std::vector<VisibilityMask2D> masks;

  explicit SelectionObjective(std::vector<VisibilityMask2D> candidate_masks);

  int count() const { return static_cast<int>(masks.size()); }
};

struct GreedySelection {
  SupportSet support;
  CoverageMap residual;        // final uncovered mass P
  std::vector<double> gains;   // coverage gain of each pick, non-increasing
};

/// Greedy maximum-coverage selection: repeatedly picks the candidate with
/// the largest remaining-coverage gain sum(P * M_i), then discounts the
/// residual P <- P * (1 - M_i). Ties and zero-gain steps resolve to the
/// lowest candidate index.
GreedySelection select_greedy_trace(const SelectionObjective& objective, int k);
SupportSet select_greedy(const SelectionObjective& objective, int k);

double objective_value(const SelectionObjective& objective, const SupportSet& subset);

/// Exhaustive maximizer of the soft-coverage objective over all k-subsets;
/// ties resolve to the lexicographically smallest index set. Throws when
/// C(N, k) exceeds `cap`.
SupportSet select_bruteforce(const SelectionObjective& objective, int k,
                             std::uint64_t cap = 1000000);

/// The k reference cameras nearest to the novel camera center, nearest
/// first; ties to the lowest index.
SupportSet select_nearest_pose(const Camera& novel, const std::vector<Camera>& references, int k);

/// Top-k candidates by plain mask mass, independent scores without any
/// residual discounting; ties to the lowest index.
SupportSet select_max_visibility(const SelectionObjective& objective, int k);

}  // namespace cvr

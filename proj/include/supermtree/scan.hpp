// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "supermtree/tree.hpp"

namespace smt {

struct ScanCounters {
  std::uint64_t distance_evals = 0;
  std::uint64_t lower_bound_evals = 0;
};

/// Exact linear scan over (id, object) records: the correctness oracle for
/// the tree and the baseline for speedup measurements.  The optional
/// range-gap lower bound can skip full evaluations during range queries
/// without ever changing the results.
template <SubsetSpace SpaceT>
class LinearScan {
 public:
  using Space = SpaceT;
  using Object = typename SpaceT::object_type;

  explicit LinearScan(SpaceT space = {}, bool use_lower_bounds = false)
      : space_(std::move(space)), use_lower_bounds_(use_lower_bounds) {}

  void add(std::uint64_t id, Object object) {
    records_.push_back({id, std::move(object)});
  }

  std::size_t size() const { return records_.size(); }

  std::vector<Neighbor> range(const Object& query, double radius,
                              ScanCounters* counters = nullptr) const {
    if (std::isnan(radius) || radius < 0.0)
      throw std::invalid_argument("LinearScan::range: radius must be >= 0");
    std::vector<Neighbor> out;
    ScanCounters local;
    for (const auto& [id, obj] : records_) {
      if (!space_.is_sub(obj, query)) continue;
      if (use_lower_bounds_) {
        ++local.lower_bound_evals;
        // Conservative comparison: a bound within rounding slack of the
        // radius still gets the full evaluation.
        if (detail::definitely_greater(space_.lower_bound(obj, query), radius))
          continue;
      }
      ++local.distance_evals;
      const double d = space_.distance(obj, query);
      if (d <= radius) out.push_back({id, d});
    }
    sort_neighbors(out);
    if (counters) *counters = local;
    return out;
  }

  std::vector<Neighbor> knn(const Object& query, std::size_t k,
                            ScanCounters* counters = nullptr) const {
    if (k == 0) throw std::invalid_argument("LinearScan::knn: k must be >= 1");
    ScanCounters local;
    std::vector<Neighbor> best;
    best.reserve(records_.size());
    for (const auto& [id, obj] : records_) {
      if (!space_.is_sub(obj, query)) continue;
      ++local.distance_evals;
      best.push_back({id, space_.distance(obj, query)});
    }
    sort_neighbors(best);
    if (best.size() > k) best.resize(k);
    if (counters) *counters = local;
    return best;
  }

 private:
  static void sort_neighbors(std::vector<Neighbor>& v) {
    std::sort(v.begin(), v.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
  }

  Space space_;
  bool use_lower_bounds_;
  std::vector<std::pair<std::uint64_t, Object>> records_;
};

}  // namespace smt

// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <concepts>
#include <utility>

#include "supermtree/distances.hpp"
#include "supermtree/pointset.hpp"
#include "supermtree/timeseries.hpp"

namespace smt {

/// A metric subset space: a total "fits inside" preorder plus an asymmetric
/// distance that is finite (and meaningful) from smaller to larger objects.
template <typename S>
concept SubsetSpace = requires(const S s, const typename S::object_type& a,
                               const typename S::object_type& b) {
  { s.is_sub(a, b) } -> std::convertible_to<bool>;
  { s.distance(a, b) } -> std::convertible_to<double>;
};

enum class SizeOrder { StrictlySmaller, Equivalent, StrictlyLarger };

/// Classifies a against b under the space's preorder.  The preorder is
/// total, so at least one direction always holds.
template <SubsetSpace S>
SizeOrder size_order(const S& space, const typename S::object_type& a,
                     const typename S::object_type& b) {
  const bool ab = space.is_sub(a, b);
  const bool ba = space.is_sub(b, a);
  if (ab && ba) return SizeOrder::Equivalent;
  return ab ? SizeOrder::StrictlySmaller : SizeOrder::StrictlyLarger;
}

/// The same space with the preorder flipped and distance arguments swapped;
/// this is again a metric subset space.
template <typename S>
struct ReversedSpace {
  using object_type = typename S::object_type;
  S base;
  bool is_sub(const object_type& a, const object_type& b) const {
    return base.is_sub(b, a);
  }
  double distance(const object_type& a, const object_type& b) const {
    return base.distance(b, a);
  }
};

template <typename S>
ReversedSpace<S> reverse_space(S space) {
  return {std::move(space)};
}

/// Verifies the chain triangle inequality d(x,z) <= d(x,y) + d(y,z) for a
/// chain ordered as is_sub(x,y) and is_sub(y,z), with a small relative
/// slack for rounding.  Unordered triples satisfy the axiom vacuously.
template <SubsetSpace S>
bool check_chain_triangle(const S& space, const typename S::object_type& x,
                          const typename S::object_type& y,
                          const typename S::object_type& z) {
  if (!space.is_sub(x, y) || !space.is_sub(y, z)) return true;
  const double rhs = space.distance(x, y) + space.distance(y, z);
  return space.distance(x, z) <= rhs + 1e-9 * (1.0 + rhs);
}

/// Sequences under the length preorder with the windowed L2 distance.
struct WindowedL2Space {
  using object_type = TimeSeries;
  bool is_sub(const TimeSeries& a, const TimeSeries& b) const {
    return a.length() <= b.length();
  }
  double distance(const TimeSeries& a, const TimeSeries& b) const {
    return windowed_l2(a, b);
  }
  double lower_bound(const TimeSeries& a, const TimeSeries& b) const {
    return range_lower_bound(a, b);
  }
};

/// Sequences under the length preorder with the subsequence Dog-Keeper
/// distance.
struct SdkSpace {
  using object_type = TimeSeries;
  bool is_sub(const TimeSeries& a, const TimeSeries& b) const {
    return a.length() <= b.length();
  }
  double distance(const TimeSeries& a, const TimeSeries& b) const {
    return sdk(a, b);
  }
  double lower_bound(const TimeSeries& a, const TimeSeries& b) const {
    return range_lower_bound(a, b);
  }
};

/// Point sets under the cardinality preorder with the directed subset
/// Hausdorff distance.
struct ShdSpace {
  using object_type = PointSet;
  bool is_sub(const PointSet& a, const PointSet& b) const {
    return a.size() <= b.size();
  }
  double distance(const PointSet& a, const PointSet& b) const {
    return shd(a, b);
  }
  double lower_bound(const PointSet& a, const PointSet& b) const {
    return value_range_gap(a, b);
  }
};

}  // namespace smt

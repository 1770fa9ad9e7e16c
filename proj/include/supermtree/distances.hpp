// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "supermtree/pointset.hpp"
#include "supermtree/timeseries.hpp"

namespace smt {

/// Minimum L2 distance between S and any window of T with |S| points:
///   min_j sqrt(sum_i |S_i - T_{i+j}|^2).
/// Requires |S| <= |T| and equal dimensionality; returns +inf for empty S.
double windowed_l2(const TimeSeries& s, const TimeSeries& t);

/// Dog-Keeper distance (discrete Frechet): the cheapest monotone traversal
/// of both sequences, priced by the most expensive matched pair.
/// DK of two empty sequences is 0; one empty side gives +inf.
double dk(const TimeSeries& s, const TimeSeries& t);

/// Subsequence Dog-Keeper distance: min over all nonempty contiguous
/// windows W of T of dk(s, W).  Empty s or t gives +inf.
double sdk(const TimeSeries& s, const TimeSeries& t);

/// Reference implementation of sdk by enumerating every window of t.
/// Quadratic in |t| on top of each dk evaluation; for testing and
/// small inputs only.
double sdk_bruteforce(const TimeSeries& s, const TimeSeries& t);

/// Directed subset Hausdorff distance: max_{a in A} min_{b in B} |a - b|.
/// Empty A gives 0 (max over nothing); nonempty A with empty B gives +inf.
double shd(const PointSet& a, const PointSet& b);

/// Symmetric Hausdorff distance, max of the two directed values.
/// Either side empty gives +inf.
double hausdorff(const PointSet& a, const PointSet& b);

/// Gap between the value ranges of two one-dimensional series; a cheap
/// lower bound for windowed_l2 and sdk.  Returns 0 when the ranges
/// overlap or when dim > 1.
double range_lower_bound(const TimeSeries& s, const TimeSeries& t);

/// Gap between the value ranges of two point sets; lower-bounds shd.
double value_range_gap(const PointSet& a, const PointSet& b);

}  // namespace smt

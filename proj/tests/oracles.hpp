// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference implementations used only by tests.  They follow
// the distance definitions literally (explicit window and coupling
// enumeration) so the production DP code is checked against an
// independent route.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "supermtree/pointset.hpp"
#include "supermtree/rng.hpp"
#include "supermtree/timeseries.hpp"

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double point_dist(const smt::TimeSeries& s, std::size_t i,
                         const smt::TimeSeries& t, std::size_t j) {
  const auto a = s.point(i);
  const auto b = t.point(j);
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  double acc = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

// min over equal-length windows of the Euclidean distance, enumerated.
inline double windowed_l2(const smt::TimeSeries& s, const smt::TimeSeries& t) {
  if (s.empty()) return kInf;
  double best = kInf;
  for (std::size_t j = 0; j + s.length() <= t.length(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.length(); ++i) {
      const auto a = s.point(i);
      const auto b = t.point(i + j);
      for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        acc += diff * diff;
      }
    }
    best = std::min(best, std::sqrt(acc));
  }
  return best;
}

// Discrete Fréchet by explicit enumeration of every monotone coupling
// (moves (1,0), (0,1), (1,1) through the index grid).  Exponential; only
// for tiny inputs.
inline double dk_couplings(const smt::TimeSeries& s, const smt::TimeSeries& t,
                           std::size_t i, std::size_t j) {
  const double here = point_dist(s, i, t, j);
  if (i + 1 == s.length() && j + 1 == t.length()) return here;
  double rest = kInf;
  if (i + 1 < s.length())
    rest = std::min(rest, dk_couplings(s, t, i + 1, j));
  if (j + 1 < t.length())
    rest = std::min(rest, dk_couplings(s, t, i, j + 1));
  if (i + 1 < s.length() && j + 1 < t.length())
    rest = std::min(rest, dk_couplings(s, t, i + 1, j + 1));
  return std::max(here, rest);
}

inline double dk(const smt::TimeSeries& s, const smt::TimeSeries& t) {
  if (s.empty() && t.empty()) return 0.0;
  if (s.empty() || t.empty()) return kInf;
  return dk_couplings(s, t, 0, 0);
}

// min over every window (start, len >= 1) of the coupling-enumerated DK.
inline double sdk(const smt::TimeSeries& s, const smt::TimeSeries& t) {
  if (s.empty() || t.empty()) return kInf;
  double best = kInf;
  for (std::size_t start = 0; start < t.length(); ++start)
    for (std::size_t len = 1; start + len <= t.length(); ++len)
      best = std::min(best, oracle::dk(s, t.window(start, len)));
  return best;
}

// Naive max-min matching of A into B.
inline double shd(const smt::PointSet& a, const smt::PointSet& b) {
  double worst = 0.0;
  for (double x : a.values()) {
    double nearest = kInf;
    for (double y : b.values()) nearest = std::min(nearest, std::abs(x - y));
    worst = std::max(worst, nearest);
  }
  return worst;
}

/* ---- random test objects ------------------------------------------- */

inline smt::TimeSeries random_series(smt::Rng& rng, std::size_t min_len,
                                     std::size_t max_len, std::size_t dim = 1,
                                     double lo = 0.0, double hi = 1.0) {
  const std::size_t len =
      min_len + static_cast<std::size_t>(rng.below(max_len - min_len + 1));
  std::vector<double> values(len * dim);
  for (auto& v : values) v = rng.uniform(lo, hi);
  return smt::TimeSeries(dim, std::move(values));
}

inline smt::PointSet random_set(smt::Rng& rng, std::size_t min_card,
                                std::size_t max_card, double lo = 0.0,
                                double hi = 1.0) {
  const std::size_t card =
      min_card + static_cast<std::size_t>(rng.below(max_card - min_card + 1));
  std::vector<double> values(card);
  for (auto& v : values) v = rng.uniform(lo, hi);
  return smt::PointSet(std::move(values));
}

}  // namespace oracle

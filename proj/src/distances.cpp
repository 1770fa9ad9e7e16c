// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#include "supermtree/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace smt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Euclidean distance between two dim-dimensional points.
inline double point_dist(const double* a, const double* b, std::size_t dim) {
  if (dim == 1) return std::abs(*a - *b);
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

// Dog-Keeper DP over raw storage.  Rows run over s, columns over t; the
// caller is expected to pass the shorter sequence as t so the rolling
// rows stay small.
double dk_raw(const double* s, std::size_t sl, const double* t, std::size_t tl,
              std::size_t dim) {
  std::vector<double> prev(tl), cur(tl);
  prev[0] = point_dist(s, t, dim);
  for (std::size_t j = 1; j < tl; ++j)
    prev[j] = std::max(point_dist(s, t + j * dim, dim), prev[j - 1]);
  for (std::size_t i = 1; i < sl; ++i) {
    const double* si = s + i * dim;
    cur[0] = std::max(point_dist(si, t, dim), prev[0]);
    for (std::size_t j = 1; j < tl; ++j) {
      const double reach = std::min({prev[j - 1], cur[j - 1], prev[j]});
      cur[j] = std::max(point_dist(si, t + j * dim, dim), reach);
    }
    std::swap(prev, cur);
  }
  return prev[tl - 1];
}

void require_same_dim(const TimeSeries& s, const TimeSeries& t) {
  if (s.dim() != t.dim())
    throw std::invalid_argument("series dimensionality mismatch");
}

}  // namespace

double windowed_l2(const TimeSeries& s, const TimeSeries& t) {
  require_same_dim(s, t);
  if (s.empty()) return kInf;
  if (s.length() > t.length())
    throw std::invalid_argument("windowed_l2: first series longer than second");
  const std::size_t dim = s.dim();
  const std::size_t span = s.length() * dim;
  const std::size_t windows = t.length() - s.length() + 1;
  const double* sp = s.data();
  double best_sq = kInf;
  for (std::size_t j = 0; j < windows; ++j) {
    const double* tp = t.data() + j * dim;
    double acc = 0.0;
    for (std::size_t k = 0; k < span; ++k) {
      const double d = sp[k] - tp[k];
      acc += d * d;
      if (acc >= best_sq) break;  // cannot beat the best window any more
    }
    if (acc < best_sq) best_sq = acc;
  }
  return std::sqrt(best_sq);
}

double dk(const TimeSeries& s, const TimeSeries& t) {
  require_same_dim(s, t);
  if (s.empty() && t.empty()) return 0.0;
  if (s.empty() || t.empty()) return kInf;
  // DK is symmetric; keep the rolling rows as short as possible.
  if (s.length() < t.length())
    return dk_raw(t.data(), t.length(), s.data(), s.length(), s.dim());
  return dk_raw(s.data(), s.length(), t.data(), t.length(), s.dim());
}

double sdk(const TimeSeries& s, const TimeSeries& t) {
  require_same_dim(s, t);
  if (s.empty() || t.empty()) return kInf;
  const std::size_t dim = s.dim();
  const std::size_t m = s.length(), n = t.length();
  const double* sp = s.data();
  const double* tp = t.data();
  // Free-start/free-end DP: row[j] is the best dk between the s prefix and
  // any window of t ending exactly at j.  With only the first s point the
  // singleton window is always optimal, so the first row is the raw costs.
  std::vector<double> prev(n), cur(n);
  for (std::size_t j = 0; j < n; ++j)
    prev[j] = point_dist(sp, tp + j * dim, dim);
  for (std::size_t i = 1; i < m; ++i) {
    const double* si = sp + i * dim;
    cur[0] = std::max(point_dist(si, tp, dim), prev[0]);
    for (std::size_t j = 1; j < n; ++j) {
      const double reach = std::min({prev[j - 1], cur[j - 1], prev[j]});
      cur[j] = std::max(point_dist(si, tp + j * dim, dim), reach);
    }
    std::swap(prev, cur);
  }
  return *std::min_element(prev.begin(), prev.end());
}

double sdk_bruteforce(const TimeSeries& s, const TimeSeries& t) {
  require_same_dim(s, t);
  if (s.empty() || t.empty()) return kInf;
  const std::size_t dim = s.dim();
  double best = kInf;
  for (std::size_t start = 0; start < t.length(); ++start) {
    for (std::size_t len = 1; start + len <= t.length(); ++len) {
      const double* win = t.data() + start * dim;
      double d;
      if (s.length() < len)
        d = dk_raw(win, len, s.data(), s.length(), dim);
      else
        d = dk_raw(s.data(), s.length(), win, len, dim);
      best = std::min(best, d);
    }
  }
  return best;
}

double shd(const PointSet& a, const PointSet& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return kInf;
  const auto bv = b.values();
  double worst = 0.0;
  for (double x : a.values()) {
    auto it = std::lower_bound(bv.begin(), bv.end(), x);
    double nearest = kInf;
    if (it != bv.end()) nearest = *it - x;
    if (it != bv.begin()) nearest = std::min(nearest, x - *(it - 1));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double hausdorff(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) return kInf;
  return std::max(shd(a, b), shd(b, a));
}

namespace {

double interval_gap(double lo1, double hi1, double lo2, double hi2) {
  return std::max({0.0, lo2 - hi1, lo1 - hi2});
}

}  // namespace

double range_lower_bound(const TimeSeries& s, const TimeSeries& t) {
  if (s.dim() != 1 || t.dim() != 1) return 0.0;
  if (s.empty() || t.empty()) return 0.0;
  auto [s_lo, s_hi] = std::minmax_element(s.values().begin(), s.values().end());
  auto [t_lo, t_hi] = std::minmax_element(t.values().begin(), t.values().end());
  return interval_gap(*s_lo, *s_hi, *t_lo, *t_hi);
}

double value_range_gap(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto av = a.values(), bv = b.values();
  return interval_gap(av.front(), av.back(), bv.front(), bv.back());
}

}  // namespace smt

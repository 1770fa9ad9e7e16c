// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace smt {

/// A finite sequence of n-dimensional points, stored contiguously in
/// row-major order (point index varies slowest).  All values are finite.
class TimeSeries {
 public:
  TimeSeries() = default;

  TimeSeries(std::size_t dim, std::vector<double> values)
      : dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) throw std::invalid_argument("TimeSeries: dim must be >= 1");
    if (values_.size() % dim_ != 0)
      throw std::invalid_argument("TimeSeries: value count not divisible by dim");
    for (double v : values_)
      if (!std::isfinite(v))
        throw std::invalid_argument("TimeSeries: values must be finite");
  }

  /// One-dimensional series from a plain value list.
  static TimeSeries scalar(std::vector<double> values) {
    return TimeSeries(1, std::move(values));
  }

  std::size_t length() const { return values_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return values_.empty(); }

  std::span<const double> values() const { return values_; }
  const double* data() const { return values_.data(); }

  /// The i-th point as a span of dim() coordinates.
  std::span<const double> point(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

  /// Copy of the contiguous subsequence of `len` points starting at `start`.
  TimeSeries window(std::size_t start, std::size_t len) const {
    if (len == 0 || start + len > length())
      throw std::out_of_range("TimeSeries::window: invalid range");
    std::vector<double> out(values_.begin() + static_cast<std::ptrdiff_t>(start * dim_),
                            values_.begin() + static_cast<std::ptrdiff_t>((start + len) * dim_));
    return TimeSeries(dim_, std::move(out));
  }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<double> values_;
};

}  // namespace smt

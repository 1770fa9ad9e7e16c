// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace smt {

/// A finite set of real numbers, kept sorted ascending without duplicates.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_)
      if (!std::isfinite(v))
        throw std::invalid_argument("PointSet: values must be finite");
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Elements in ascending order.
  std::span<const double> values() const { return values_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<double> values_;
};

}  // namespace smt

// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace smt {

/// Seedable random stream with platform-independent output.  The raw bits
/// come from std::mt19937_64, whose sequence the standard pins down
/// exactly; the distributions are implemented here because the std::*
/// distribution objects may differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n); n must be positive.  Uses rejection to
  /// avoid modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer in [lo, hi] inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  /// Standard normal via Box-Muller (the sine branch is discarded, keeping
  /// the stream layout simple).
  double normal();

  /// Uniform point on the unit sphere in `dim` dimensions.
  std::vector<double> unit_sphere(std::size_t dim);

  /// Uniform point in the closed ball of the given radius.
  std::vector<double> uniform_ball(std::size_t dim, double radius);

  /// Decorrelated seed for the index-th child stream of a master seed.
  /// Generators derive one child stream per record so records do not
  /// shift when neighbouring parameters change.
  static std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

}  // namespace smt

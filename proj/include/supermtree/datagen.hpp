// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "supermtree/dataset.hpp"
#include "supermtree/rng.hpp"
#include "supermtree/timeseries.hpp"

namespace smt {

/// The random draws behind one cylinder-bell-funnel series, reported so
/// tests can verify the emitted samples against the closed-form patterns.
struct CbfDraws {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nu;  // plateau height per dimension
};

/// One cylinder-bell-funnel series of the given length.  `types` selects
/// the pattern per dimension ('c', 'b' or 'f'; its size is the series
/// dimensionality).  The boundaries a ~ U[len/8, 2len/8] and
/// b ~ U[6len/8, 7len/8] are drawn once and shared across dimensions;
/// each dimension draws its own plateau height nu = 6 + N(0,1) and
/// per-sample noise.  `noise_scale` scales every normal draw (0 gives the
/// noise-free patterns while consuming the same random stream).  Returns
/// the series and its label (the type string).
std::pair<TimeSeries, std::string> cbf_series(std::size_t length,
                                              std::string_view types, Rng& rng,
                                              double noise_scale = 1.0,
                                              CbfDraws* draws = nullptr);

struct CbfSpec {
  std::size_t count = 1;
  std::size_t length = 64;
  std::string types = "c";   // ignored when random_types
  bool random_types = false; // draw each dimension's type per record
  std::size_t dim = 1;       // dimensionality when random_types
  double noise_scale = 1.0;
  std::uint64_t seed = 0;
};
Dataset cbf_dataset(const CbfSpec& spec);

/// Random accelerated motion: an impulse-driven walk confined to the
/// radius-r ball.  The start point is uniform in the ball; each step adds
/// a uniform unit-sphere vector to the impulse; points leaving the ball
/// are rescaled onto the boundary and the impulse is reflected.
TimeSeries ram_base(std::size_t length, std::size_t dim, double radius,
                    Rng& rng);

/// Resamples the series uniformly along its arc length: the first and
/// last points are kept exactly, the interior points are drawn uniformly
/// on [0, total arc length] and linearly interpolated on the polyline.
/// A series with zero arc length collapses to copies of its first point.
/// Requires at least 2 points.
TimeSeries time_distortion(const TimeSeries& s, Rng& rng);

/// Adds standard-normal noise to the series' first derivative (the
/// predecessor of the first point is the origin) and re-accumulates; the
/// resulting drift is projected back onto the radius-`cap` ball around
/// each base point, so no output point moves farther than `cap`.
TimeSeries space_distortion(const TimeSeries& s, double cap, Rng& rng,
                            double noise_scale = 1.0);

struct RamSpec {
  std::size_t classes = 1;
  std::size_t reps = 1;      // representatives per class
  std::size_t length = 100;
  std::size_t dim = 2;
  double radius = 75.0;
  double distortion = 5.0;
  bool include_base = false;
  std::uint64_t seed = 0;
};
Dataset ram_dataset(const RamSpec& spec);

struct RandomSequenceSpec {
  std::size_t count = 0;
  std::size_t min_len = 1;
  std::size_t max_len = 128;
  std::size_t dim = 1;
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t seed = 0;
};
Dataset random_sequences(const RandomSequenceSpec& spec);

struct RandomSetSpec {
  std::size_t count = 0;
  std::size_t min_card = 1;
  std::size_t max_card = 32;
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t seed = 0;
};
Dataset random_sets(const RandomSetSpec& spec);

/// Replaces every series with a random contiguous subsequence whose
/// length is drawn uniformly from [min_len, max_len] (clamped to the
/// series length).  Ids and labels are preserved.
Dataset crop_sequences(const Dataset& dataset, std::size_t min_len,
                       std::size_t max_len, std::uint64_t seed);

}  // namespace smt

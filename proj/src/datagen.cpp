// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#include "supermtree/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace smt {

namespace {

double norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

// Scales v so its norm is at most `limit`, looping to absorb rounding so
// the bound holds exactly.
void clamp_norm(std::vector<double>& v, double limit) {
  double n = norm(v);
  while (n > limit) {
    const double f = limit / n;
    for (double& x : v) x *= f;
    n = norm(v);
  }
}

}  // namespace

std::pair<TimeSeries, std::string> cbf_series(std::size_t length,
                                              std::string_view types, Rng& rng,
                                              double noise_scale,
                                              CbfDraws* draws) {
  if (length < 8)
    throw std::invalid_argument("cbf_series: length must be >= 8");
  if (types.empty())
    throw std::invalid_argument("cbf_series: type vector must be nonempty");
  for (char c : types)
    if (c != 'c' && c != 'b' && c != 'f')
      throw std::invalid_argument("cbf_series: types must be 'c', 'b' or 'f'");

  const double len = static_cast<double>(length);
  const double a = rng.uniform(len / 8.0, 2.0 * len / 8.0);
  const double b = rng.uniform(6.0 * len / 8.0, 7.0 * len / 8.0);
  const auto ia = static_cast<std::size_t>(a);
  const auto ib = static_cast<std::size_t>(b);
  const std::size_t dim = types.size();

  if (draws) {
    draws->a = a;
    draws->b = b;
    draws->nu.clear();
  }

  std::vector<double> values(length * dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double nu = 6.0 + noise_scale * rng.normal();
    if (draws) draws->nu.push_back(nu);
    for (std::size_t i = 0; i < length; ++i) {
      double x = noise_scale * rng.normal();
      if (i >= ia && i < ib) {
        const double fi = static_cast<double>(i);
        switch (types[d]) {
          case 'c':
            x += nu;
            break;
          case 'b':
            x += nu * (fi - a) / (b - a);
            break;
          case 'f':
            x += nu * (b - fi) / (b - a);
            break;
        }
      }
      values[i * dim + d] = x;
    }
  }
  return {TimeSeries(dim, std::move(values)), std::string(types)};
}

Dataset cbf_dataset(const CbfSpec& spec) {
  if (spec.random_types && spec.dim == 0)
    throw std::invalid_argument("cbf_dataset: dim must be >= 1");
  Dataset out;
  out.kind = ObjectKind::Series;
  out.dim = spec.random_types ? spec.dim : spec.types.size();
  out.records.reserve(spec.count);
  static constexpr char kTypes[] = {'c', 'b', 'f'};
  for (std::size_t k = 0; k < spec.count; ++k) {
    Rng rng(Rng::child_seed(spec.seed, k));
    std::string types = spec.types;
    if (spec.random_types) {
      types.resize(spec.dim);
      for (auto& c : types) c = kTypes[rng.below(3)];
    }
    auto [series, label] =
        cbf_series(spec.length, types, rng, spec.noise_scale);
    out.records.push_back({k, std::move(label), std::move(series)});
  }
  return out;
}

TimeSeries ram_base(std::size_t length, std::size_t dim, double radius,
                    Rng& rng) {
  if (length == 0 || dim == 0)
    throw std::invalid_argument("ram_base: length and dim must be >= 1");
  if (!(radius > 0.0))
    throw std::invalid_argument("ram_base: radius must be positive");
  std::vector<double> values(length * dim);
  std::vector<double> pos = rng.uniform_ball(dim, radius);
  std::vector<double> impulse(dim, 0.0);
  std::copy(pos.begin(), pos.end(), values.begin());
  for (std::size_t t = 1; t < length; ++t) {
    const auto kick = rng.unit_sphere(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      impulse[d] += kick[d];
      pos[d] += impulse[d];
    }
    const double n = norm(pos);
    if (n > radius) {
      // Bounce: put the point on the boundary and reflect the impulse on
      // the tangent plane there.
      std::vector<double> unit(dim);
      for (std::size_t d = 0; d < dim; ++d) unit[d] = pos[d] / n;
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += impulse[d] * unit[d];
      for (std::size_t d = 0; d < dim; ++d) {
        impulse[d] -= 2.0 * dot * unit[d];
        pos[d] = radius * unit[d];
      }
      clamp_norm(pos, radius);
    }
    std::copy(pos.begin(), pos.end(), values.begin() + t * dim);
  }
  return TimeSeries(dim, std::move(values));
}

TimeSeries time_distortion(const TimeSeries& s, Rng& rng) {
  const std::size_t length = s.length(), dim = s.dim();
  if (length < 2)
    throw std::invalid_argument("time_distortion: need at least 2 points");

  std::vector<double> arc(length);
  arc[0] = 0.0;
  for (std::size_t i = 1; i < length; ++i) {
    double step = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = s.data()[i * dim + d] - s.data()[(i - 1) * dim + d];
      step += diff * diff;
    }
    arc[i] = arc[i - 1] + std::sqrt(step);
  }
  const double total = arc.back();

  std::vector<double> values(length * dim);
  if (total == 0.0) {
    for (std::size_t i = 0; i < length; ++i)
      std::copy(s.data(), s.data() + dim, values.begin() + i * dim);
    return TimeSeries(dim, std::move(values));
  }

  std::vector<double> ts(length);
  ts[0] = 0.0;
  ts[length - 1] = total;
  for (std::size_t i = 1; i + 1 < length; ++i) ts[i] = rng.uniform(0.0, total);
  std::sort(ts.begin(), ts.end());

  for (std::size_t k = 0; k < length; ++k) {
    const double x = ts[k];
    // Segment [i, i+1] with arc[i] <= x; x == total lands on the last one.
    auto it = std::upper_bound(arc.begin(), arc.end(), x);
    std::size_t i = (it == arc.begin()) ? 0 : static_cast<std::size_t>(it - arc.begin()) - 1;
    if (i > length - 2) i = length - 2;
    const double seg = arc[i + 1] - arc[i];
    const double u = seg > 0.0 ? (x - arc[i]) / seg : 0.0;
    // (1-u)*p + u*q form keeps the endpoints bit-exact at u = 0 and u = 1.
    for (std::size_t d = 0; d < dim; ++d)
      values[k * dim + d] = (1.0 - u) * s.data()[i * dim + d] +
                            u * s.data()[(i + 1) * dim + d];
  }
  return TimeSeries(dim, std::move(values));
}

TimeSeries space_distortion(const TimeSeries& s, double cap, Rng& rng,
                            double noise_scale) {
  if (cap < 0.0 || std::isnan(cap))
    throw std::invalid_argument("space_distortion: cap must be >= 0");
  const std::size_t length = s.length(), dim = s.dim();
  std::vector<double> values(length * dim);
  // Noise on the derivative accumulates into a drift on the points; the
  // drift is re-projected after every step so each output point stays
  // within `cap` of its base point.
  std::vector<double> drift(dim, 0.0);
  for (std::size_t i = 0; i < length; ++i) {
    for (std::size_t d = 0; d < dim; ++d) drift[d] += noise_scale * rng.normal();
    clamp_norm(drift, cap);
    for (std::size_t d = 0; d < dim; ++d)
      values[i * dim + d] = s.data()[i * dim + d] + drift[d];
  }
  return TimeSeries(dim, std::move(values));
}

Dataset ram_dataset(const RamSpec& spec) {
  if (spec.classes == 0 || spec.reps == 0 || spec.length == 0 || spec.dim == 0)
    throw std::invalid_argument("ram_dataset: counts must be positive");
  if (!(spec.radius > 0.0))
    throw std::invalid_argument("ram_dataset: radius must be positive");
  if (spec.distortion < 0.0)
    throw std::invalid_argument("ram_dataset: distortion must be >= 0");
  Dataset out;
  out.kind = ObjectKind::Series;
  out.dim = spec.dim;
  std::uint64_t next_id = 0;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    // Stream layout: one child per class base, one per representative, so
    // toggling include_base does not shift any draw.
    const std::uint64_t base_index =
        static_cast<std::uint64_t>(c) * (spec.reps + 1);
    Rng base_rng(Rng::child_seed(spec.seed, base_index));
    const TimeSeries base =
        ram_base(spec.length, spec.dim, spec.radius, base_rng);
    const std::string label = std::to_string(c);
    if (spec.include_base) out.records.push_back({next_id++, label, base});
    for (std::size_t j = 0; j < spec.reps; ++j) {
      Rng rep_rng(Rng::child_seed(spec.seed, base_index + j + 1));
      TimeSeries rep = spec.length >= 2 ? time_distortion(base, rep_rng) : base;
      rep = space_distortion(rep, spec.distortion, rep_rng);
      out.records.push_back({next_id++, label, std::move(rep)});
    }
  }
  return out;
}

Dataset random_sequences(const RandomSequenceSpec& spec) {
  if (spec.min_len == 0 || spec.min_len > spec.max_len)
    throw std::invalid_argument("random_sequences: invalid length range");
  if (spec.dim == 0)
    throw std::invalid_argument("random_sequences: dim must be >= 1");
  if (!(spec.lo <= spec.hi))
    throw std::invalid_argument("random_sequences: invalid value interval");
  Dataset out;
  out.kind = ObjectKind::Series;
  out.dim = spec.dim;
  out.records.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    Rng rng(Rng::child_seed(spec.seed, k));
    const std::size_t len = rng.between(spec.min_len, spec.max_len);
    std::vector<double> values(len * spec.dim);
    for (auto& v : values) v = rng.uniform(spec.lo, spec.hi);
    out.records.push_back({k, "", TimeSeries(spec.dim, std::move(values))});
  }
  return out;
}

Dataset random_sets(const RandomSetSpec& spec) {
  if (spec.min_card == 0 || spec.min_card > spec.max_card)
    throw std::invalid_argument("random_sets: invalid cardinality range");
  if (!(spec.lo <= spec.hi))
    throw std::invalid_argument("random_sets: invalid value interval");
  if (spec.lo == spec.hi && spec.max_card > 1)
    throw DataError("random_sets: interval too small for requested cardinality");
  Dataset out;
  out.kind = ObjectKind::Set;
  out.records.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    Rng rng(Rng::child_seed(spec.seed, k));
    const std::size_t card = rng.between(spec.min_card, spec.max_card);
    std::set<double> values;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 1000 + 1000 * card;
    while (values.size() < card) {
      if (++attempts > max_attempts)
        throw DataError("random_sets: could not reach cardinality " +
                        std::to_string(card));
      values.insert(rng.uniform(spec.lo, spec.hi));
    }
    out.records.push_back(
        {k, "", PointSet(std::vector<double>(values.begin(), values.end()))});
  }
  return out;
}

Dataset crop_sequences(const Dataset& dataset, std::size_t min_len,
                       std::size_t max_len, std::uint64_t seed) {
  if (dataset.kind != ObjectKind::Series)
    throw DataError("crop_sequences: dataset must contain series");
  if (min_len == 0 || min_len > max_len)
    throw std::invalid_argument("crop_sequences: invalid length range");
  Dataset out;
  out.kind = ObjectKind::Series;
  out.dim = dataset.dim;
  out.records.reserve(dataset.size());
  for (std::size_t k = 0; k < dataset.records.size(); ++k) {
    const Record& rec = dataset.records[k];
    const TimeSeries& s = as_series(rec);
    if (s.empty()) {
      out.records.push_back(rec);
      continue;
    }
    Rng rng(Rng::child_seed(seed, k));
    const std::size_t len =
        std::min<std::size_t>(rng.between(min_len, max_len), s.length());
    const std::size_t start =
        s.length() > len ? rng.between(0, s.length() - len) : 0;
    out.records.push_back({rec.id, rec.label, s.window(start, len)});
  }
  return out;
}

}  // namespace smt

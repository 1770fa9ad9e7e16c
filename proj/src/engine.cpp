// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#include "supermtree/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "supermtree/rng.hpp"

namespace smt {

ObjectKind required_kind(DistanceKind kind) {
  return kind == DistanceKind::Shd ? ObjectKind::Set : ObjectKind::Series;
}

const char* to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::L2Win: return "l2win";
    case DistanceKind::Sdk: return "sdk";
    case DistanceKind::Shd: return "shd";
  }
  return "?";
}

const char* to_string(SplitPolicy policy) {
  return policy == SplitPolicy::FixedCapacity ? "fixed" : "large";
}

AnyTree make_tree(DistanceKind kind, const TreeConfig& config) {
  switch (kind) {
    case DistanceKind::L2Win:
      return SuperMTree<WindowedL2Space>({}, config);
    case DistanceKind::Sdk:
      return SuperMTree<SdkSpace>({}, config);
    case DistanceKind::Shd:
      return SuperMTree<ShdSpace>({}, config);
  }
  throw std::invalid_argument("make_tree: unknown distance");
}

namespace {

template <typename Tree>
const auto& record_object(const Tree&, const Record& record) {
  if constexpr (std::is_same_v<typename Tree::Object, TimeSeries>)
    return as_series(record);
  else
    return as_set(record);
}

}  // namespace

void tree_insert(AnyTree& tree, const Record& record) {
  std::visit(
      [&](auto& t) { t.insert(record_object(t, record), record.id); }, tree);
}

std::vector<Neighbor> tree_range(const AnyTree& tree, const Record& query,
                                 double radius, std::uint64_t* evals) {
  return std::visit(
      [&](const auto& t) {
        return t.range_query(record_object(t, query), radius, evals);
      },
      tree);
}

std::vector<Neighbor> tree_knn(const AnyTree& tree, const Record& query,
                               std::size_t k, std::uint64_t* evals) {
  return std::visit(
      [&](const auto& t) {
        return t.knn_query(record_object(t, query), k, evals);
      },
      tree);
}

ValidationReport tree_validate(const AnyTree& tree) {
  return std::visit([](const auto& t) { return t.validate(); }, tree);
}

TreeStats tree_stats(const AnyTree& tree) {
  return std::visit([](const auto& t) { return t.stats(); }, tree);
}

namespace {

template <typename Space>
std::vector<Neighbor> scan_range_typed(const Dataset& dataset,
                                       const Record& query, double radius,
                                       bool use_lower_bounds,
                                       ScanCounters* counters) {
  LinearScan<Space> scan({}, use_lower_bounds);
  for (const auto& rec : dataset.records) {
    if constexpr (std::is_same_v<typename Space::object_type, TimeSeries>)
      scan.add(rec.id, as_series(rec));
    else
      scan.add(rec.id, as_set(rec));
  }
  if constexpr (std::is_same_v<typename Space::object_type, TimeSeries>)
    return scan.range(as_series(query), radius, counters);
  else
    return scan.range(as_set(query), radius, counters);
}

template <typename Space>
std::vector<Neighbor> scan_knn_typed(const Dataset& dataset,
                                     const Record& query, std::size_t k,
                                     ScanCounters* counters) {
  LinearScan<Space> scan({}, false);
  for (const auto& rec : dataset.records) {
    if constexpr (std::is_same_v<typename Space::object_type, TimeSeries>)
      scan.add(rec.id, as_series(rec));
    else
      scan.add(rec.id, as_set(rec));
  }
  if constexpr (std::is_same_v<typename Space::object_type, TimeSeries>)
    return scan.knn(as_series(query), k, counters);
  else
    return scan.knn(as_set(query), k, counters);
}

}  // namespace

std::vector<Neighbor> scan_range(const Dataset& dataset, DistanceKind kind,
                                 const Record& query, double radius,
                                 bool use_lower_bounds,
                                 ScanCounters* counters) {
  switch (kind) {
    case DistanceKind::L2Win:
      return scan_range_typed<WindowedL2Space>(dataset, query, radius,
                                               use_lower_bounds, counters);
    case DistanceKind::Sdk:
      return scan_range_typed<SdkSpace>(dataset, query, radius,
                                        use_lower_bounds, counters);
    case DistanceKind::Shd:
      return scan_range_typed<ShdSpace>(dataset, query, radius,
                                        use_lower_bounds, counters);
  }
  throw std::invalid_argument("scan_range: unknown distance");
}

std::vector<Neighbor> scan_knn(const Dataset& dataset, DistanceKind kind,
                               const Record& query, std::size_t k,
                               ScanCounters* counters) {
  switch (kind) {
    case DistanceKind::L2Win:
      return scan_knn_typed<WindowedL2Space>(dataset, query, k, counters);
    case DistanceKind::Sdk:
      return scan_knn_typed<SdkSpace>(dataset, query, k, counters);
    case DistanceKind::Shd:
      return scan_knn_typed<ShdSpace>(dataset, query, k, counters);
  }
  throw std::invalid_argument("scan_knn: unknown distance");
}

std::pair<Dataset, Dataset> split_holdout(const Dataset& dataset,
                                          std::size_t query_count,
                                          std::uint64_t seed) {
  if (query_count >= dataset.size() && !(query_count == 0 && dataset.empty()))
    throw std::invalid_argument(
        "split_holdout: need more records than queries");
  const std::size_t n = dataset.size();
  // Seeded Fisher-Yates over the index set, first query_count land in the
  // query part.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> is_query(n, false);
  for (std::size_t i = 0; i < query_count; ++i) is_query[order[i]] = true;

  Dataset data, queries;
  data.kind = queries.kind = dataset.kind;
  data.dim = queries.dim = dataset.dim;
  for (std::size_t i = 0; i < n; ++i)
    (is_query[i] ? queries : data).records.push_back(dataset.records[i]);
  return {std::move(data), std::move(queries)};
}

namespace {

template <typename Space>
AxiomCheckReport check_axioms_typed(const Dataset& dataset,
                                    std::size_t triples, std::uint64_t seed) {
  using Object = typename Space::object_type;
  Space space;
  AxiomCheckReport report;
  const std::size_t n = dataset.size();
  if (n == 0) return report;  // nothing to sample from
  report.triples = triples;
  Rng rng(seed);
  auto obj = [&](std::size_t i) -> const Object& {
    if constexpr (std::is_same_v<Object, TimeSeries>)
      return as_series(dataset.records[i]);
    else
      return as_set(dataset.records[i]);
  };
  for (std::size_t t = 0; t < triples; ++t) {
    std::size_t i = rng.below(n), j = rng.below(n), k = rng.below(n);
    // Arrange the sampled objects into a chain if possible.
    const Object* o[3] = {&obj(i), &obj(j), &obj(k)};
    std::sort(std::begin(o), std::end(o),
              [&](const Object* x, const Object* y) {
                return space.is_sub(*x, *y) && !space.is_sub(*y, *x);
              });
    if (!space.is_sub(*o[0], *o[1]) || !space.is_sub(*o[1], *o[2])) continue;
    ++report.applicable;
    if (!check_chain_triangle(space, *o[0], *o[1], *o[2]))
      report.violations.push_back(
          "triangle violation on record ids " +
          std::to_string(dataset.records[i].id) + "," +
          std::to_string(dataset.records[j].id) + "," +
          std::to_string(dataset.records[k].id));
  }
  return report;
}

}  // namespace

AxiomCheckReport check_axioms(const Dataset& dataset, DistanceKind kind,
                              std::size_t triples, std::uint64_t seed) {
  switch (kind) {
    case DistanceKind::L2Win:
      return check_axioms_typed<WindowedL2Space>(dataset, triples, seed);
    case DistanceKind::Sdk:
      return check_axioms_typed<SdkSpace>(dataset, triples, seed);
    case DistanceKind::Shd:
      return check_axioms_typed<ShdSpace>(dataset, triples, seed);
  }
  throw std::invalid_argument("check_axioms: unknown distance");
}

std::string to_json(const TreeStats& stats) {
  nlohmann::ordered_json j;
  j["node_count"] = stats.node_count;
  j["leaf_count"] = stats.leaf_count;
  j["internal_count"] = stats.internal_count;
  j["depth"] = stats.depth;
  j["object_count"] = stats.object_count;
  j["max_node_entries"] = stats.max_node_entries;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [entries, nodes] : stats.entry_histogram)
    hist[std::to_string(entries)] = nodes;
  j["entry_histogram"] = std::move(hist);
  j["build_distance_evals"] = stats.build_distance_evals;
  j["query_distance_evals"] = stats.query_distance_evals;
  j["split_count"] = stats.split_count;
  std::size_t degenerate = 0;
  for (auto side : stats.split_min_sides)
    if (side <= 1) ++degenerate;
  j["degenerate_splits"] = degenerate;
  j["split_min_sides"] = stats.split_min_sides;
  return j.dump();
}

std::string to_json(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["ok"] = report.ok();
  j["violations"] = report.violations;
  return j.dump();
}

std::string to_json(const AxiomCheckReport& report) {
  nlohmann::ordered_json j;
  j["ok"] = report.ok();
  j["triples"] = report.triples;
  j["applicable"] = report.applicable;
  j["violations"] = report.violations;
  return j.dump();
}

}  // namespace smt

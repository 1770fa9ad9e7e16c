// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#include "supermtree/engine.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "supermtree/datagen.hpp"

using smt::AnyTree;
using smt::Dataset;
using smt::DistanceKind;
using smt::ObjectKind;
using smt::Record;
using smt::SplitPolicy;
using smt::TreeConfig;

namespace {

Dataset small_sets(std::size_t n, std::uint64_t seed) {
  smt::RandomSetSpec spec;
  spec.count = n;
  spec.min_card = 1;
  spec.max_card = 16;
  spec.seed = seed;
  return smt::random_sets(spec);
}

Dataset small_series(std::size_t n, std::uint64_t seed) {
  smt::RandomSequenceSpec spec;
  spec.count = n;
  spec.min_len = 1;
  spec.max_len = 32;
  spec.seed = seed;
  return smt::random_sequences(spec);
}

}  // namespace

TEST_CASE("distance kinds map to record kinds and names") {
  CHECK(smt::required_kind(DistanceKind::L2Win) == ObjectKind::Series);
  CHECK(smt::required_kind(DistanceKind::Sdk) == ObjectKind::Series);
  CHECK(smt::required_kind(DistanceKind::Shd) == ObjectKind::Set);
  CHECK(std::string(smt::to_string(DistanceKind::L2Win)) == "l2win");
  CHECK(std::string(smt::to_string(DistanceKind::Sdk)) == "sdk");
  CHECK(std::string(smt::to_string(DistanceKind::Shd)) == "shd");
  CHECK(std::string(smt::to_string(SplitPolicy::FixedCapacity)) == "fixed");
  CHECK(std::string(smt::to_string(SplitPolicy::LargeNodes)) == "large");
}

TEST_CASE("split_holdout partitions deterministically and keeps order") {
  const Dataset d = small_sets(100, 601);
  const auto [indexed, queries] = smt::split_holdout(d, 25, 602);
  CHECK(indexed.size() == 75);
  CHECK(queries.size() == 25);
  CHECK(indexed.kind == ObjectKind::Set);
  CHECK(queries.kind == ObjectKind::Set);

  std::set<std::uint64_t> seen;
  for (const auto& r : indexed.records) seen.insert(r.id);
  for (const auto& r : queries.records) seen.insert(r.id);
  CHECK(seen.size() == 100);

  auto sorted_ids = [](const Dataset& part) {
    std::vector<std::uint64_t> ids;
    for (const auto& r : part.records) ids.push_back(r.id);
    return std::is_sorted(ids.begin(), ids.end());
  };
  CHECK(sorted_ids(indexed));  // ids ascend in the source, so order shows
  CHECK(sorted_ids(queries));

  const auto [indexed2, queries2] = smt::split_holdout(d, 25, 602);
  for (std::size_t i = 0; i < queries.size(); ++i)
    CHECK(queries2.records[i].id == queries.records[i].id);

  const auto [other, other_q] = smt::split_holdout(d, 25, 603);
  bool differs = false;
  for (std::size_t i = 0; i < other_q.size(); ++i)
    if (other_q.records[i].id != queries.records[i].id) differs = true;
  CHECK(differs);

  CHECK_THROWS_AS(smt::split_holdout(d, 101, 0), std::invalid_argument);
  const auto [all, none] = smt::split_holdout(d, 0, 0);
  CHECK(all.size() == 100);
  CHECK(none.empty());
}

TEST_CASE("typed tree dispatch builds, queries and validates") {
  const Dataset d = small_series(200, 604);
  AnyTree tree = smt::make_tree(DistanceKind::Sdk,
                                TreeConfig{16, SplitPolicy::FixedCapacity});
  for (const auto& r : d.records) smt::tree_insert(tree, r);
  CHECK(smt::tree_validate(tree).ok());
  CHECK(smt::tree_stats(tree).object_count == 200);

  const Record& q = d.records[7];
  std::uint64_t evals = 0;
  const auto tree_hits = smt::tree_range(tree, q, 0.5, &evals);
  CHECK(evals > 0);
  const auto scan_hits = smt::scan_range(d, DistanceKind::Sdk, q, 0.5, false);
  CHECK(tree_hits == scan_hits);
  CHECK(smt::tree_knn(tree, q, 5) == smt::scan_knn(d, DistanceKind::Sdk, q, 5));
}

TEST_CASE("scan helpers reject mismatched record kinds") {
  const Dataset sets = small_sets(10, 605);
  const Dataset series = small_series(10, 606);
  CHECK_THROWS_AS(
      smt::scan_range(sets, DistanceKind::L2Win, sets.records[0], 1.0, false),
      smt::DataError);
  CHECK_THROWS_AS(smt::scan_knn(series, DistanceKind::Shd, series.records[0], 1),
                  smt::DataError);
  AnyTree tree = smt::make_tree(DistanceKind::Shd, TreeConfig{});
  CHECK_THROWS_AS(smt::tree_insert(tree, series.records[0]), smt::DataError);
}

TEST_CASE("scan lower bounds never change engine results") {
  const Dataset d = small_series(300, 607);
  const Record& q = d.records[3];
  for (auto kind : {DistanceKind::L2Win, DistanceKind::Sdk}) {
    smt::ScanCounters with, without;
    const auto a = smt::scan_range(d, kind, q, 0.7, true, &with);
    const auto b = smt::scan_range(d, kind, q, 0.7, false, &without);
    CHECK(a == b);
    CHECK(with.distance_evals <= without.distance_evals);
  }
}

TEST_CASE("axiom sampling covers the chain triangle") {
  for (auto [maker, kind] :
       {std::pair{&small_sets, DistanceKind::Shd},
        std::pair{&small_series, DistanceKind::Sdk},
        std::pair{&small_series, DistanceKind::L2Win}}) {
    const Dataset d = maker(150, 608);
    const auto report = smt::check_axioms(d, kind, 2000, 609);
    CHECK(report.ok());
    CHECK(report.triples == 2000);
    // Totality of the size order means every sampled triple forms a chain.
    CHECK(report.applicable == 2000);
  }
  const auto empty = smt::check_axioms(Dataset{}, DistanceKind::Shd, 100, 0);
  CHECK(empty.ok());
  CHECK(empty.triples == 0);
}

TEST_CASE("json reports expose the expected fields") {
  const Dataset d = small_sets(50, 610);
  AnyTree tree = smt::make_tree(DistanceKind::Shd,
                                TreeConfig{4, SplitPolicy::FixedCapacity});
  for (const auto& r : d.records) smt::tree_insert(tree, r);

  const std::string stats = smt::to_json(smt::tree_stats(tree));
  for (const char* key :
       {"\"node_count\"", "\"leaf_count\"", "\"depth\"", "\"object_count\"",
        "\"max_node_entries\"", "\"build_distance_evals\"", "\"split_count\"",
        "\"degenerate_splits\"", "\"split_min_sides\""})
    CHECK(stats.find(key) != std::string::npos);

  const std::string validation = smt::to_json(smt::tree_validate(tree));
  CHECK(validation.find("\"ok\":true") != std::string::npos);

  const std::string axioms =
      smt::to_json(smt::check_axioms(d, DistanceKind::Shd, 100, 0));
  CHECK(axioms.find("\"applicable\":100") != std::string::npos);
}

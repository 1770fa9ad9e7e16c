// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "supermtree/dataset.hpp"
#include "supermtree/scan.hpp"
#include "supermtree/subset_space.hpp"
#include "supermtree/tree.hpp"

namespace smt {

enum class DistanceKind { L2Win, Sdk, Shd };

ObjectKind required_kind(DistanceKind kind);
const char* to_string(DistanceKind kind);
const char* to_string(SplitPolicy policy);

using AnyTree = std::variant<SuperMTree<WindowedL2Space>, SuperMTree<SdkSpace>,
                             SuperMTree<ShdSpace>>;

AnyTree make_tree(DistanceKind kind, const TreeConfig& config);
void tree_insert(AnyTree& tree, const Record& record);
std::vector<Neighbor> tree_range(const AnyTree& tree, const Record& query,
                                 double radius,
                                 std::uint64_t* evals = nullptr);
std::vector<Neighbor> tree_knn(const AnyTree& tree, const Record& query,
                               std::size_t k, std::uint64_t* evals = nullptr);
ValidationReport tree_validate(const AnyTree& tree);
TreeStats tree_stats(const AnyTree& tree);

std::vector<Neighbor> scan_range(const Dataset& dataset, DistanceKind kind,
                                 const Record& query, double radius,
                                 bool use_lower_bounds,
                                 ScanCounters* counters = nullptr);
std::vector<Neighbor> scan_knn(const Dataset& dataset, DistanceKind kind,
                               const Record& query, std::size_t k,
                               ScanCounters* counters = nullptr);

/// Splits a dataset into (indexed part, query workload) by sampling
/// `query_count` records without replacement from a seeded stream;
/// relative record order is preserved in both parts.
std::pair<Dataset, Dataset> split_holdout(const Dataset& dataset,
                                          std::size_t query_count,
                                          std::uint64_t seed);

struct AxiomCheckReport {
  std::size_t triples = 0;     // triples sampled
  std::size_t applicable = 0;  // triples that formed an ordered chain
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples ordered triples from the dataset and checks the chain triangle
/// inequality for the given distance.
AxiomCheckReport check_axioms(const Dataset& dataset, DistanceKind kind,
                              std::size_t triples, std::uint64_t seed);

std::string to_json(const TreeStats& stats);
std::string to_json(const ValidationReport& report);
std::string to_json(const AxiomCheckReport& report);

}  // namespace smt

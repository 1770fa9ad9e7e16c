// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "supermtree/subset_space.hpp"

namespace smt {

enum class SplitPolicy {
  FixedCapacity,  // nodes never exceed capacity; degenerate splits allowed
  LargeNodes,     // refuse splits with a side of size <= 1; node grows instead
};

struct TreeConfig {
  std::size_t capacity = 128;
  SplitPolicy policy = SplitPolicy::FixedCapacity;
};

struct Neighbor {
  std::uint64_t id = 0;
  double distance = 0.0;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct TreeStats {
  std::size_t node_count = 0;
  std::size_t leaf_count = 0;
  std::size_t internal_count = 0;
  std::size_t depth = 0;
  std::size_t object_count = 0;
  std::map<std::size_t, std::size_t> entry_histogram;  // entries-per-node -> nodes
  std::size_t max_node_entries = 0;
  std::uint64_t build_distance_evals = 0;
  std::uint64_t query_distance_evals = 0;
  std::size_t split_count = 0;
  std::vector<std::uint32_t> split_min_sides;  // min partition side, in split order
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

constexpr double kInfDist = std::numeric_limits<double>::infinity();

/// True only when a exceeds b by more than the floating-point slack we
/// grant every pruning rule; NaN operands compare false, so undefined
/// bounds never prune.
inline bool definitely_greater(double a, double b) {
  if (std::isinf(a) && !std::isinf(b)) return a > b;
  return a - b > 1e-9 * (1.0 + std::abs(b));
}

}  // namespace detail

/// Split machinery, exposed separately so promotion and partitioning can be
/// exercised on plain object collections.  `objects` are the node's entry
/// objects in node order; `child_radii` are the entries' covering radii
/// (zero at leaf level).  Distances are only ever requested in the
/// is_sub-sanctioned direction.
namespace split {

struct PairChoice {
  std::size_t first_item = 0;   // index into objects
  std::size_t second_item = 0;
  std::vector<std::size_t> side1, side2;              // item indices per side
  std::vector<double> side1_parent_dist, side2_parent_dist;
  double radius1 = 0.0, radius2 = 0.0;
  double overlap = 0.0;  // promotion objective p; -inf when virtually disjoint
};

/// Size-minimal items of the collection; when that tier is a single item,
/// extended by the items minimal within the remainder.
template <typename Object, typename IsSubFn>
std::vector<std::size_t> promotion_candidates(
    const std::vector<const Object*>& objects, IsSubFn&& is_sub) {
  const std::size_t n = objects.size();
  auto tier = [&](const std::vector<std::size_t>& pool) {
    std::vector<std::size_t> out;
    for (std::size_t j : pool) {
      bool minimal = true;
      for (std::size_t i : pool)
        if (!is_sub(*objects[j], *objects[i])) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(j);
    }
    return out;
  };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<std::size_t> cand = tier(all);
  if (cand.size() == 1 && n > 1) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (i != cand[0]) rest.push_back(i);
    for (std::size_t j : tier(rest)) cand.push_back(j);
    std::sort(cand.begin(), cand.end());
  }
  return cand;
}

/// Generalized hyperplane assignment: side1 gets the items strictly nearer
/// o1 under the directed distance (+inf when the direction is undefined),
/// side2 gets ties and the rest.
template <typename Object, typename IsSubFn, typename DistFn>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> partition(
    const std::vector<const Object*>& objects, const Object& o1,
    const Object& o2, IsSubFn&& is_sub, DistFn&& dist) {
  std::vector<std::size_t> side1, side2;
  for (std::size_t j = 0; j < objects.size(); ++j) {
    const double d1 =
        is_sub(o1, *objects[j]) ? dist(o1, *objects[j]) : detail::kInfDist;
    const double d2 =
        is_sub(o2, *objects[j]) ? dist(o2, *objects[j]) : detail::kInfDist;
    (d1 < d2 ? side1 : side2).push_back(j);
  }
  return {std::move(side1), std::move(side2)};
}

/// min over references R with s,t both below R of dist(s,R) + dist(t,R);
/// +inf when no reference qualifies.
template <typename Object, typename IsSubFn, typename DistFn>
double virtual_distance(const std::vector<const Object*>& refs,
                        const Object& s, const Object& t, IsSubFn&& is_sub,
                        DistFn&& dist) {
  double best = detail::kInfDist;
  for (const Object* r : refs) {
    if (!is_sub(s, *r) || !is_sub(t, *r)) continue;
    best = std::min(best, dist(s, *r) + dist(t, *r));
  }
  return best;
}

/// Evaluates every candidate pair and returns the one minimizing the
/// virtual overlap p = r1 + r2 - v.  Pairs leaving an item unreachable
/// from both sides (possible only when both promoted objects are
/// second-tier) and pairs with an empty side (possible only with
/// duplicate objects) are skipped; under LargeNodes any side of size <= 1
/// disqualifies the pair.  Returns nothing when every pair is skipped.
template <typename Object, typename IsSubFn, typename DistFn>
std::optional<PairChoice> promote(const std::vector<const Object*>& objects,
                                  const std::vector<double>& child_radii,
                                  SplitPolicy policy, IsSubFn&& is_sub,
                                  DistFn&& dist) {
  const std::size_t n = objects.size();
  const auto cand = promotion_candidates(objects, is_sub);
  if (cand.size() < 2) return std::nullopt;

  // One directed-distance row per candidate; rows feed partition sides,
  // radii, and the virtual distance without further evaluations.
  std::vector<std::vector<double>> rows(cand.size(), std::vector<double>(n));
  for (std::size_t ci = 0; ci < cand.size(); ++ci) {
    const Object& oc = *objects[cand[ci]];
    for (std::size_t j = 0; j < n; ++j)
      rows[ci][j] =
          is_sub(oc, *objects[j]) ? dist(oc, *objects[j]) : detail::kInfDist;
  }

  std::optional<PairChoice> best;
  std::size_t best_imbalance = 0;
  for (std::size_t ai = 0; ai < cand.size(); ++ai) {
    for (std::size_t bi = ai + 1; bi < cand.size(); ++bi) {
      const auto& ra = rows[ai];
      const auto& rb = rows[bi];
      bool reachable = true;
      for (std::size_t j = 0; j < n; ++j)
        if (ra[j] == detail::kInfDist && rb[j] == detail::kInfDist) {
          reachable = false;
          break;
        }
      if (!reachable) continue;

      PairChoice pc;
      pc.first_item = cand[ai];
      pc.second_item = cand[bi];
      double v = detail::kInfDist;
      for (std::size_t j = 0; j < n; ++j) {
        if (ra[j] < rb[j]) {
          pc.side1.push_back(j);
          pc.side1_parent_dist.push_back(ra[j]);
          pc.radius1 = std::max(pc.radius1, ra[j] + child_radii[j]);
        } else {
          pc.side2.push_back(j);
          pc.side2_parent_dist.push_back(rb[j]);
          pc.radius2 = std::max(pc.radius2, rb[j] + child_radii[j]);
        }
        if (ra[j] != detail::kInfDist && rb[j] != detail::kInfDist)
          v = std::min(v, ra[j] + rb[j]);
      }
      if (pc.side1.empty() || pc.side2.empty()) continue;
      if (policy == SplitPolicy::LargeNodes &&
          (pc.side1.size() <= 1 || pc.side2.size() <= 1))
        continue;
      pc.overlap = (v == detail::kInfDist) ? -detail::kInfDist
                                           : pc.radius1 + pc.radius2 - v;

      const std::size_t imbalance =
          pc.side1.size() > pc.side2.size() ? pc.side1.size() - pc.side2.size()
                                            : pc.side2.size() - pc.side1.size();
      bool take = false;
      if (!best) {
        take = true;
      } else if (pc.overlap < best->overlap) {
        take = true;
      } else if (pc.overlap == best->overlap &&
                 pc.overlap == -detail::kInfDist &&
                 imbalance < best_imbalance) {
        // Among virtually disjoint pairs prefer the more balanced split.
        take = true;
      }
      if (take) {
        best = std::move(pc);
        best_imbalance = imbalance;
      }
    }
  }
  return best;
}

}  // namespace split

/// Metric index over a subset space: a height-balanced tree whose
/// root-to-leaf paths are nondecreasing under the space's preorder, with
/// covering radii supporting range and kNN queries that never produce
/// false dismissals.
template <SubsetSpace SpaceT>
class SuperMTree {
 public:
  using Space = SpaceT;
  using Object = typename SpaceT::object_type;

  struct Node;

  struct RoutingEntry {
    Object object;
    double radius = 0.0;
    // d(parent routing object, this object); NaN at root level.
    double dist_to_parent = std::numeric_limits<double>::quiet_NaN();
    std::unique_ptr<Node> child;
  };

  struct LeafEntry {
    Object object;
    double dist_to_parent = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t id = 0;
  };

  struct Node {
    bool leaf = true;
    std::vector<LeafEntry> entries;     // used when leaf
    std::vector<RoutingEntry> routing;  // used when internal
    std::size_t size() const { return leaf ? entries.size() : routing.size(); }
  };

  explicit SuperMTree(SpaceT space = {}, TreeConfig config = {})
      : space_(std::move(space)), config_(config) {
    if (config_.capacity < 4)
      throw std::invalid_argument("SuperMTree: capacity must be >= 4");
    root_ = std::make_unique<Node>();
  }

  // The atomic query counter suppresses the implicit moves; moving a tree
  // is only done while no queries are in flight.
  SuperMTree(SuperMTree&& other) noexcept
      : space_(std::move(other.space_)),
        config_(other.config_),
        root_(std::move(other.root_)),
        ids_(std::move(other.ids_)),
        object_count_(other.object_count_),
        build_evals_(other.build_evals_),
        query_evals_(other.query_evals_.load(std::memory_order_relaxed)),
        split_min_sides_(std::move(other.split_min_sides_)) {}

  SuperMTree& operator=(SuperMTree&& other) noexcept {
    space_ = std::move(other.space_);
    config_ = other.config_;
    root_ = std::move(other.root_);
    ids_ = std::move(other.ids_);
    object_count_ = other.object_count_;
    build_evals_ = other.build_evals_;
    query_evals_.store(other.query_evals_.load(std::memory_order_relaxed),
                       std::memory_order_relaxed);
    split_min_sides_ = std::move(other.split_min_sides_);
    return *this;
  }

  void insert(Object object, std::uint64_t id) {
    if (ids_.contains(id))
      throw std::invalid_argument("SuperMTree::insert: duplicate id");
    insert_rec(*root_, object, id, nullptr);
    if (root_->size() > config_.capacity) {
      if (auto outcome = try_split(*root_)) {
        auto new_root = std::make_unique<Node>();
        new_root->leaf = false;
        new_root->routing.push_back(RoutingEntry{
            std::move(outcome->object1), outcome->radius1,
            std::numeric_limits<double>::quiet_NaN(), std::move(outcome->node1)});
        new_root->routing.push_back(RoutingEntry{
            std::move(outcome->object2), outcome->radius2,
            std::numeric_limits<double>::quiet_NaN(), std::move(outcome->node2)});
        root_ = std::move(new_root);
      }
    }
    ids_.insert(id);
    ++object_count_;
  }

  /// All (id, distance) pairs with the stored object below the query and
  /// distance <= radius, sorted ascending by (distance, id).
  std::vector<Neighbor> range_query(const Object& query, double radius,
                                    std::uint64_t* evals_out = nullptr) const {
    if (std::isnan(radius) || radius < 0.0)
      throw std::invalid_argument("range_query: radius must be >= 0");
    std::vector<Neighbor> out;
    std::uint64_t evals = 0;
    range_rec(*root_, query, radius, std::numeric_limits<double>::quiet_NaN(),
              out, evals);
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
    query_evals_.fetch_add(evals, std::memory_order_relaxed);
    if (evals_out) *evals_out = evals;
    return out;
  }

  /// Up to k nearest eligible objects, ascending by (distance, id).
  /// Best-first traversal ordered by max(0, d(O_r,Q) - r(O_r)) with the
  /// search radius shrinking to the current k-th best.
  std::vector<Neighbor> knn_query(const Object& query, std::size_t k,
                                  std::uint64_t* evals_out = nullptr) const {
    if (k == 0) throw std::invalid_argument("knn_query: k must be >= 1");
    std::uint64_t evals = 0;

    struct Pending {
      double bound;
      const Node* node;
      double parent_dist;  // d(routing object leading here, Q); NaN at root
      bool operator>(const Pending& o) const { return bound > o.bound; }
    };
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> frontier;
    frontier.push({0.0, root_.get(), std::numeric_limits<double>::quiet_NaN()});

    // Max-heap of the best k so far, ordered lexicographically by
    // (distance, id) so tie sets resolve exactly like the scan baseline.
    auto worse = [](const Neighbor& a, const Neighbor& b) {
      return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    };
    std::priority_queue<Neighbor, std::vector<Neighbor>, decltype(worse)> best(
        worse);
    auto search_radius = [&] {
      return best.size() < k ? detail::kInfDist : best.top().distance;
    };
    auto offer = [&](std::uint64_t id, double d) {
      const Neighbor cand{id, d};
      if (best.size() < k) {
        best.push(cand);
      } else if (worse(cand, best.top())) {
        best.pop();
        best.push(cand);
      }
    };

    while (!frontier.empty()) {
      const Pending cur = frontier.top();
      frontier.pop();
      if (detail::definitely_greater(cur.bound, search_radius())) break;
      const Node& node = *cur.node;
      if (node.leaf) {
        for (const auto& e : node.entries) {
          if (!space_.is_sub(e.object, query)) continue;
          ++evals;
          const double d = space_.distance(e.object, query);
          if (!detail::definitely_greater(d, search_radius())) offer(e.id, d);
        }
        continue;
      }
      for (const auto& e : node.routing) {
        if (!space_.is_sub(e.object, query)) continue;
        // Parent-distance lower bound first: may discard without evaluating.
        if (detail::definitely_greater(
                cur.parent_dist - e.dist_to_parent - e.radius, search_radius()))
          continue;
        ++evals;
        const double d = space_.distance(e.object, query);
        const double lb = std::max(0.0, d - e.radius);
        if (detail::definitely_greater(lb, search_radius())) continue;
        frontier.push({lb, e.child.get(), d});
      }
    }

    std::vector<Neighbor> out;
    out.reserve(best.size());
    while (!best.empty()) {
      out.push_back(best.top());
      best.pop();
    }
    std::reverse(out.begin(), out.end());
    query_evals_.fetch_add(evals, std::memory_order_relaxed);
    if (evals_out) *evals_out = evals;
    return out;
  }

  /// Recomputes every structural invariant from scratch: uniform leaf
  /// depth, path ordering, radius containment, stored parent distances,
  /// and id uniqueness.
  ValidationReport validate() const {
    ValidationReport report;
    std::unordered_set<std::uint64_t> seen;
    std::optional<std::size_t> leaf_depth;
    std::size_t leaf_objects = 0;
    validate_rec(*root_, nullptr, 0, "root", report, seen, leaf_depth,
                 leaf_objects);
    if (leaf_objects != object_count_)
      report.violations.push_back(
          "leaf object count " + std::to_string(leaf_objects) +
          " != inserted count " + std::to_string(object_count_));
    return report;
  }

  TreeStats stats() const {
    TreeStats s;
    s.object_count = object_count_;
    s.build_distance_evals = build_evals_;
    s.query_distance_evals = query_evals_.load(std::memory_order_relaxed);
    s.split_count = split_min_sides_.size();
    s.split_min_sides = split_min_sides_;
    collect_stats(*root_, 1, s);
    return s;
  }

  std::size_t size() const { return object_count_; }
  const TreeConfig& config() const { return config_; }
  const Space& space() const { return space_; }
  std::uint64_t build_distance_evals() const { return build_evals_; }
  std::uint64_t query_distance_evals() const {
    return query_evals_.load(std::memory_order_relaxed);
  }

  const Node& root() const { return *root_; }
  /// Mutable access for fault-injection tests only.
  Node& debug_root() { return *root_; }

 private:
  struct SplitOutcome {
    Object object1;
    double radius1;
    std::unique_ptr<Node> node1;
    Object object2;
    double radius2;
    std::unique_ptr<Node> node2;
  };

  double build_dist(const Object& a, const Object& b) {
    ++build_evals_;
    const double d = space_.distance(a, b);
    if (std::isnan(d))
      throw std::invalid_argument("SuperMTree: distance evaluated to NaN");
    return d;
  }

  // Directed build distance: +inf when the preorder forbids the direction.
  // Infinite parent distances can appear transiently while an exchange is
  // pending in an ancestor frame; the exchange recomputes them.
  double directed_build_dist(const Object& small, const Object& large) {
    return space_.is_sub(small, large) ? build_dist(small, large)
                                       : detail::kInfDist;
  }

  struct SubtreeChoice {
    std::size_t index = 0;
    // d(routing object, new object) when that direction is defined; reused
    // for the cheap radius update.
    double forward = detail::kInfDist;
    bool has_forward = false;
  };

  template <typename DistFn>
  SubtreeChoice choose_subtree_impl(const Node& node, const Object& obj,
                                    DistFn&& dist) const {
    SubtreeChoice choice;
    double best = detail::kInfDist;
    bool first = true;
    for (std::size_t i = 0; i < node.routing.size(); ++i) {
      const auto& e = node.routing[i];
      const bool fwd = space_.is_sub(e.object, obj);
      const bool bwd = space_.is_sub(obj, e.object);
      double d_fwd = detail::kInfDist, d_bwd = detail::kInfDist;
      if (fwd) d_fwd = dist(e.object, obj);
      if (bwd) d_bwd = dist(obj, e.object);
      const double d = std::min(d_fwd, d_bwd);
      if (first || d < best) {
        first = false;
        best = d;
        choice.index = i;
        choice.forward = d_fwd;
        choice.has_forward = fwd;
      }
    }
    return choice;
  }

 public:
  /// The routing entry an insert of `obj` would descend into: argmin over
  /// the defined directed distances, ties resolved by node position.
  std::size_t choose_subtree(const Node& node, const Object& obj) const {
    if (node.leaf || node.routing.empty())
      throw std::invalid_argument("choose_subtree: internal nonempty node required");
    return choose_subtree_impl(node, obj, [this](const Object& a, const Object& b) {
             return space_.distance(a, b);
           }).index;
  }

 private:
  void insert_rec(Node& node, const Object& obj, std::uint64_t id,
                  const Object* parent) {
    if (node.leaf) {
      LeafEntry e;
      e.dist_to_parent = parent ? directed_build_dist(*parent, obj)
                                : std::numeric_limits<double>::quiet_NaN();
      e.object = obj;
      e.id = id;
      node.entries.push_back(std::move(e));
      return;
    }
    const SubtreeChoice choice = choose_subtree_impl(
        node, obj,
        [this](const Object& a, const Object& b) { return build_dist(a, b); });
    {
      auto& e = node.routing[choice.index];
      insert_rec(*e.child, obj, id, &e.object);
      if (!space_.is_sub(e.object, obj)) {
        // The new object is strictly smaller: it takes over the routing
        // role, and every derived quantity of the entry is recomputed.
        e.object = obj;
        e.radius = 0.0;
        if (e.child->leaf) {
          for (auto& c : e.child->entries) {
            c.dist_to_parent = build_dist(e.object, c.object);
            e.radius = std::max(e.radius, c.dist_to_parent);
          }
        } else {
          for (auto& c : e.child->routing) {
            c.dist_to_parent = build_dist(e.object, c.object);
            e.radius = std::max(e.radius, c.dist_to_parent + c.radius);
          }
        }
        e.dist_to_parent = parent
                               ? directed_build_dist(*parent, e.object)
                               : std::numeric_limits<double>::quiet_NaN();
      } else {
        const double d = choice.has_forward ? choice.forward
                                            : build_dist(e.object, obj);
        e.radius = std::max(e.radius, d);
      }
    }
    resolve_child_split(node, choice.index, parent);
  }

  void resolve_child_split(Node& node, std::size_t entry_index,
                           const Object* parent) {
    auto outcome = try_split(*node.routing[entry_index].child);
    if (!outcome) return;
    RoutingEntry r1{std::move(outcome->object1), outcome->radius1,
                    std::numeric_limits<double>::quiet_NaN(),
                    std::move(outcome->node1)};
    RoutingEntry r2{std::move(outcome->object2), outcome->radius2,
                    std::numeric_limits<double>::quiet_NaN(),
                    std::move(outcome->node2)};
    if (parent) {
      r1.dist_to_parent = directed_build_dist(*parent, r1.object);
      r2.dist_to_parent = directed_build_dist(*parent, r2.object);
    }
    node.routing[entry_index] = std::move(r1);
    node.routing.insert(
        node.routing.begin() + static_cast<std::ptrdiff_t>(entry_index) + 1,
        std::move(r2));
  }

  std::optional<SplitOutcome> try_split(Node& node) {
    if (node.size() <= config_.capacity) return std::nullopt;
    std::vector<const Object*> objects;
    std::vector<double> radii;
    objects.reserve(node.size());
    radii.reserve(node.size());
    if (node.leaf) {
      for (const auto& e : node.entries) {
        objects.push_back(&e.object);
        radii.push_back(0.0);
      }
    } else {
      for (const auto& e : node.routing) {
        objects.push_back(&e.object);
        radii.push_back(e.radius);
      }
    }
    auto choice = split::promote(
        objects, radii, config_.policy,
        [this](const Object& a, const Object& b) { return space_.is_sub(a, b); },
        [this](const Object& a, const Object& b) { return build_dist(a, b); });
    if (!choice) return std::nullopt;

    SplitOutcome out{*objects[choice->first_item], choice->radius1,
                     std::make_unique<Node>(), *objects[choice->second_item],
                     choice->radius2, std::make_unique<Node>()};
    out.node1->leaf = node.leaf;
    out.node2->leaf = node.leaf;
    auto move_side = [&](const std::vector<std::size_t>& side,
                         const std::vector<double>& parent_dists, Node& dst) {
      for (std::size_t k = 0; k < side.size(); ++k) {
        const std::size_t j = side[k];
        if (node.leaf) {
          auto e = std::move(node.entries[j]);
          e.dist_to_parent = parent_dists[k];
          dst.entries.push_back(std::move(e));
        } else {
          auto e = std::move(node.routing[j]);
          e.dist_to_parent = parent_dists[k];
          dst.routing.push_back(std::move(e));
        }
      }
    };
    move_side(choice->side1, choice->side1_parent_dist, *out.node1);
    move_side(choice->side2, choice->side2_parent_dist, *out.node2);
    split_min_sides_.push_back(static_cast<std::uint32_t>(
        std::min(choice->side1.size(), choice->side2.size())));
    return out;
  }

  void range_rec(const Node& node, const Object& query, double radius,
                 double parent_dist, std::vector<Neighbor>& out,
                 std::uint64_t& evals) const {
    if (node.leaf) {
      for (const auto& e : node.entries) {
        if (!space_.is_sub(e.object, query)) continue;
        ++evals;
        const double d = space_.distance(e.object, query);
        if (d <= radius) out.push_back({e.id, d});
      }
      return;
    }
    for (const auto& e : node.routing) {
      if (!space_.is_sub(e.object, query)) continue;
      // Parent-distance rule (NaN parent_dist at the root skips this).
      if (detail::definitely_greater(
              parent_dist - e.dist_to_parent - e.radius, radius))
        continue;
      ++evals;
      const double d = space_.distance(e.object, query);
      // Covering-radius rule.
      if (detail::definitely_greater(d - e.radius, radius)) continue;
      range_rec(*e.child, query, radius, d, out, evals);
    }
  }

  void validate_rec(const Node& node, const Object* parent, std::size_t depth,
                    const std::string& path, ValidationReport& report,
                    std::unordered_set<std::uint64_t>& seen,
                    std::optional<std::size_t>& leaf_depth,
                    std::size_t& leaf_objects,
                    std::vector<const Object*>* collect = nullptr) const {
    auto check_parent = [&](const Object& obj, double stored,
                            const std::string& where) {
      if (!parent) {
        if (!std::isnan(stored))
          report.violations.push_back("root-level entry stores a parent distance at " + where);
        return;
      }
      if (!space_.is_sub(*parent, obj)) {
        report.violations.push_back("path order violated at " + where);
        return;
      }
      const double expect = space_.distance(*parent, obj);
      const bool both_inf = std::isinf(stored) && std::isinf(expect);
      if (!both_inf &&
          !(std::abs(stored - expect) <= 1e-12 * (1.0 + std::abs(expect))))
        report.violations.push_back("stale parent distance at " + where);
    };

    if (node.leaf) {
      if (!leaf_depth)
        leaf_depth = depth;
      else if (*leaf_depth != depth)
        report.violations.push_back("unbalanced leaf depth at " + path);
      leaf_objects += node.entries.size();
      for (std::size_t i = 0; i < node.entries.size(); ++i) {
        const auto& e = node.entries[i];
        if (!seen.insert(e.id).second)
          report.violations.push_back("duplicate id " + std::to_string(e.id));
        check_parent(e.object, e.dist_to_parent,
                     path + "/" + std::to_string(i));
        if (collect) collect->push_back(&e.object);
      }
      return;
    }
    for (std::size_t i = 0; i < node.routing.size(); ++i) {
      const auto& e = node.routing[i];
      const std::string here = path + "/" + std::to_string(i);
      check_parent(e.object, e.dist_to_parent, here);
      if (e.radius < 0.0 || std::isnan(e.radius))
        report.violations.push_back("invalid radius at " + here);
      std::vector<const Object*> covered;
      validate_rec(*e.child, &e.object, depth + 1, here, report, seen,
                   leaf_depth, leaf_objects, &covered);
      for (const Object* obj : covered) {
        if (!space_.is_sub(e.object, *obj)) {
          report.violations.push_back("covered object below routing object at " + here);
          continue;
        }
        const double d = space_.distance(e.object, *obj);
        if (d > e.radius + 1e-9 * (1.0 + e.radius))
          report.violations.push_back("covering radius violated at " + here);
      }
      if (collect)
        collect->insert(collect->end(), covered.begin(), covered.end());
    }
  }

  void collect_stats(const Node& node, std::size_t depth, TreeStats& s) const {
    ++s.node_count;
    s.depth = std::max(s.depth, depth);
    s.entry_histogram[node.size()] += 1;
    s.max_node_entries = std::max(s.max_node_entries, node.size());
    if (node.leaf) {
      ++s.leaf_count;
      return;
    }
    ++s.internal_count;
    for (const auto& e : node.routing) collect_stats(*e.child, depth + 1, s);
  }

  Space space_;
  TreeConfig config_;
  std::unique_ptr<Node> root_;
  std::unordered_set<std::uint64_t> ids_;
  std::size_t object_count_ = 0;
  std::uint64_t build_evals_ = 0;
  mutable std::atomic<std::uint64_t> query_evals_{0};
  std::vector<std::uint32_t> split_min_sides_;
};

}  // namespace smt

// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, exit code equal to
// the number of failed criteria.  Each criterion states its tolerance and
// budget in code next to the check.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "supermtree/datagen.hpp"
#include "supermtree/engine.hpp"
#include "supermtree/scan.hpp"
#include "supermtree/subset_space.hpp"
#include "supermtree/tree.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Failure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Failure{message};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

smt::TimeSeries random_series(smt::Rng& rng, std::size_t min_len,
                              std::size_t max_len) {
  const std::size_t len = rng.between(min_len, max_len);
  std::vector<double> values(len);
  for (auto& v : values) v = rng.uniform01();
  return smt::TimeSeries::scalar(std::move(values));
}

smt::PointSet random_set(smt::Rng& rng, std::size_t min_card,
                         std::size_t max_card) {
  const std::size_t card = rng.between(min_card, max_card);
  std::vector<double> values(card);
  for (auto& v : values) v = rng.uniform01();
  return smt::PointSet(std::move(values));
}

/* ---- criterion 1: chain triangle axioms -------------------------------- */

template <typename Space, typename Make>
std::size_t triangle_violations(Make make, std::size_t triples,
                                std::uint64_t seed) {
  Space space;
  smt::Rng rng(seed);
  std::size_t violations = 0;
  for (std::size_t t = 0; t < triples; ++t) {
    std::vector<typename Space::object_type> chain = {make(rng), make(rng),
                                                      make(rng)};
    std::sort(chain.begin(), chain.end(),
              [&](const auto& a, const auto& b) {
                return space.is_sub(a, b) && !space.is_sub(b, a);
              });
    if (!smt::check_chain_triangle(space, chain[0], chain[1], chain[2]))
      ++violations;
  }
  return violations;
}

bool criterion_axioms(std::string& detail) {
  const auto start = Clock::now();
  const std::size_t kTriples = 100000;
  const std::size_t l2 = triangle_violations<smt::WindowedL2Space>(
      [](smt::Rng& r) { return random_series(r, 1, 32); }, kTriples, 11);
  const std::size_t dk = triangle_violations<smt::SdkSpace>(
      [](smt::Rng& r) { return random_series(r, 1, 32); }, kTriples, 12);
  const std::size_t hd = triangle_violations<smt::ShdSpace>(
      [](smt::Rng& r) { return random_set(r, 1, 32); }, kTriples, 13);
  const double elapsed = seconds_since(start);
  detail = "violations l2win=" + std::to_string(l2) +
           " sdk=" + std::to_string(dk) + " shd=" + std::to_string(hd) +
           ", " + fmt(elapsed) + " s (budget 120)";
  return l2 == 0 && dk == 0 && hd == 0 && elapsed < 120.0;
}

/* ---- criterion 2: sdk equals the brute force --------------------------- */

bool criterion_sdk_oracle(std::string& detail) {
  const auto start = Clock::now();
  smt::Rng rng(21);
  std::size_t mismatches = 0;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto t = random_series(rng, 1, 12);
    const auto s = random_series(rng, 1, t.length());
    const double fast = smt::sdk(s, t);
    const double brute = smt::sdk_bruteforce(s, t);
    const double err = std::abs(fast - brute);
    worst = std::max(worst, err / (1.0 + std::abs(brute)));
    if (err > 1e-12 * (1.0 + std::abs(brute))) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  detail = "mismatches=" + std::to_string(mismatches) +
           " worst_rel_err=" + std::to_string(worst) + ", " + fmt(elapsed) +
           " s (budget 60)";
  return mismatches == 0 && elapsed < 60.0;
}

/* ---- criterion 3: query exactness vs the scan -------------------------- */

template <typename Space, typename ObjectOf>
std::size_t query_mismatches(const smt::Dataset& data,
                             const smt::Dataset& queries,
                             smt::SplitPolicy policy, ObjectOf object_of) {
  Space space;
  smt::SuperMTree<Space> tree(space, smt::TreeConfig{128, policy});
  smt::LinearScan<Space> scan(space);
  for (const auto& rec : data.records) {
    tree.insert(object_of(rec), rec.id);
    scan.add(rec.id, object_of(rec));
  }
  std::size_t mismatches = 0;
  for (const auto& rec : queries.records) {
    const auto& query = object_of(rec);
    const auto probe = scan.knn(query, 10);
    // Three radii spanning empty, sparse and dense result sets.
    std::vector<double> radii;
    if (probe.empty()) {
      radii = {0.0, 0.5, 2.0};
    } else {
      radii.push_back(probe.front().distance * 0.5);
      radii.push_back(probe[probe.size() / 2].distance);
      radii.push_back(probe.back().distance * 4.0 + 1e-6);
    }
    for (double radius : radii)
      if (tree.range_query(query, radius) != scan.range(query, radius))
        ++mismatches;
    for (std::size_t k : {std::size_t{1}, std::size_t{10}}) {
      auto tree_hits = tree.knn_query(query, k);
      auto scan_hits = scan.knn(query, k);
      std::vector<double> a, b;
      for (const auto& n : tree_hits) a.push_back(n.distance);
      for (const auto& n : scan_hits) b.push_back(n.distance);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) ++mismatches;
    }
  }
  return mismatches;
}

bool criterion_query_exactness(std::string& detail) {
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  std::size_t configs = 0;
  for (const std::size_t n : {std::size_t{1} << 8, std::size_t{1} << 10,
                              std::size_t{1} << 12}) {
    smt::RandomSequenceSpec seq_spec;
    seq_spec.count = n + 100;
    seq_spec.min_len = 1;
    seq_spec.max_len = 32;
    seq_spec.seed = 31 + n;
    const auto [seq_data, seq_queries] =
        smt::split_holdout(smt::random_sequences(seq_spec), 100, 32);

    smt::RandomSetSpec set_spec;
    set_spec.count = n + 100;
    set_spec.min_card = 1;
    set_spec.max_card = 32;
    set_spec.seed = 33 + n;
    const auto [set_data, set_queries] =
        smt::split_holdout(smt::random_sets(set_spec), 100, 34);

    for (const auto policy :
         {smt::SplitPolicy::FixedCapacity, smt::SplitPolicy::LargeNodes}) {
      mismatches += query_mismatches<smt::WindowedL2Space>(
          seq_data, seq_queries, policy,
          [](const smt::Record& r) -> const smt::TimeSeries& {
            return smt::as_series(r);
          });
      mismatches += query_mismatches<smt::SdkSpace>(
          seq_data, seq_queries, policy,
          [](const smt::Record& r) -> const smt::TimeSeries& {
            return smt::as_series(r);
          });
      mismatches += query_mismatches<smt::ShdSpace>(
          set_data, set_queries, policy,
          [](const smt::Record& r) -> const smt::PointSet& {
            return smt::as_set(r);
          });
      configs += 3;
    }
  }
  const double elapsed = seconds_since(start);
  detail = std::to_string(configs) + " configs x 100 queries, mismatches=" +
           std::to_string(mismatches) + ", " + fmt(elapsed) +
           " s (budget 900)";
  return mismatches == 0 && elapsed < 900.0;
}

/* ---- criterion 4: structural invariants at scale ----------------------- */

bool criterion_structure(std::string& detail) {
  const auto start = Clock::now();
  smt::RandomSequenceSpec spec;
  spec.count = 100000;
  spec.min_len = 1;
  spec.max_len = 16;
  spec.seed = 41;
  const smt::Dataset data = smt::random_sequences(spec);
  std::size_t violations = 0;
  for (const auto policy :
       {smt::SplitPolicy::FixedCapacity, smt::SplitPolicy::LargeNodes}) {
    smt::SuperMTree<smt::WindowedL2Space> tree(
        {}, smt::TreeConfig{128, policy});
    for (const auto& rec : data.records)
      tree.insert(smt::as_series(rec), rec.id);
    const auto report = tree.validate();
    violations += report.violations.size();
    for (std::size_t i = 0; i < std::min<std::size_t>(3, report.violations.size()); ++i)
      std::printf("    violation (%s): %s\n", smt::to_string(policy),
                  report.violations[i].c_str());
  }
  detail = "100000 inserts per policy, violations=" +
           std::to_string(violations) + ", " + fmt(seconds_since(start)) +
           " s";
  return violations == 0;
}

/* ---- criterion 5: speedup grows with dataset size ---------------------- */

bool criterion_speedup_trend(std::string& detail) {
  const auto start = Clock::now();
  std::vector<double> ratios;
  for (const std::size_t n :
       {std::size_t{1} << 10, std::size_t{1} << 12, std::size_t{1} << 14,
        std::size_t{1} << 16}) {
    smt::ShdSpace space;
    smt::SuperMTree<smt::ShdSpace> tree(
        space, smt::TreeConfig{128, smt::SplitPolicy::LargeNodes});
    smt::LinearScan<smt::ShdSpace> scan(space);
    smt::Rng rng(51);
    for (std::uint64_t id = 0; id < n; ++id) {
      auto obj = random_set(rng, 1, 32);
      scan.add(id, obj);
      tree.insert(std::move(obj), id);
    }
    std::uint64_t scan_evals = 0, tree_evals = 0;
    smt::Rng query_rng(52);
    for (int q = 0; q < 100; ++q) {
      const auto query = random_set(query_rng, 1, 32);
      const auto probe = scan.knn(query, 10);
      const double radius = probe.empty() ? 0.05 : probe.back().distance;
      smt::ScanCounters counters;
      const auto want = scan.range(query, radius, &counters);
      std::uint64_t evals = 0;
      const auto got = tree.range_query(query, radius, &evals);
      require(got == want, "tree/scan mismatch during the trend measurement");
      scan_evals += counters.distance_evals;
      tree_evals += evals;
    }
    ratios.push_back(static_cast<double>(scan_evals) /
                     static_cast<double>(tree_evals));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (ratios[i] < ratios[i - 1]) monotone = false;
  detail = "eval ratios " + fmt(ratios[0]) + " / " + fmt(ratios[1]) + " / " +
           fmt(ratios[2]) + " / " + fmt(ratios[3]) +
           " at 2^10/2^12/2^14/2^16, " + fmt(seconds_since(start)) + " s";
  return monotone && ratios.back() > 2.0;
}

/* ---- criterion 6: degenerate splits under fixed capacity --------------- */

bool criterion_degenerate_splits(std::string& detail) {
  const auto start = Clock::now();
  smt::RandomSequenceSpec spec;
  spec.count = std::size_t{1} << 14;
  spec.min_len = 1;
  spec.max_len = 128;
  spec.seed = 61;
  const smt::Dataset data = smt::random_sequences(spec);

  auto build = [&](smt::SplitPolicy policy) {
    smt::SuperMTree<smt::WindowedL2Space> tree({},
                                               smt::TreeConfig{64, policy});
    const auto t0 = Clock::now();
    for (const auto& rec : data.records)
      tree.insert(smt::as_series(rec), rec.id);
    const double elapsed = seconds_since(t0);
    return std::pair{tree.stats().split_min_sides, elapsed};
  };

  const auto [fixed_sides, fixed_s] = build(smt::SplitPolicy::FixedCapacity);
  const auto [large_sides, large_s] = build(smt::SplitPolicy::LargeNodes);

  // Fixed capacity: the running mean of the min partition side falls
  // below 2 somewhere in the first 200 splits.
  bool collapsed = false;
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min<std::size_t>(fixed_sides.size(), 200);
       ++i) {
    sum += fixed_sides[i];
    if (sum / static_cast<double>(i + 1) < 2.0) collapsed = true;
  }

  // Large nodes: no executed split may have a side smaller than 2.
  const bool all_large =
      std::all_of(large_sides.begin(), large_sides.end(),
                  [](std::uint32_t s) { return s >= 2; });

  const double ratio = large_s / fixed_s;
  detail = "fixed splits=" + std::to_string(fixed_sides.size()) +
           " (running mean<2: " + (collapsed ? "yes" : "no") +
           "), large splits=" + std::to_string(large_sides.size()) +
           " (all sides>=2: " + (all_large ? "yes" : "no") +
           "), build time large/fixed=" + fmt(ratio) + ", " +
           fmt(seconds_since(start)) + " s";
  return collapsed && all_large && fixed_sides.size() >= 200 && ratio < 1.0;
}

/* ---- criterion 7: generator properties ---------------------------------- */

bool criterion_generators(std::string& detail) {
  const auto start = Clock::now();

  // Noise-free CBF matches the closed-form patterns.
  double worst_cbf = 0.0;
  {
    smt::Rng rng(71);
    for (int rep = 0; rep < 200; ++rep) {
      smt::CbfDraws draws;
      const auto [series, label] =
          smt::cbf_series(64, "cbf", rng, 0.0, &draws);
      const auto ia = static_cast<std::size_t>(draws.a);
      const auto ib = static_cast<std::size_t>(draws.b);
      for (std::size_t i = 0; i < 64; ++i) {
        const bool on = i >= ia && i < ib;
        const double fi = static_cast<double>(i);
        const double expect[3] = {
            on ? draws.nu[0] : 0.0,
            on ? draws.nu[1] * (fi - draws.a) / (draws.b - draws.a) : 0.0,
            on ? draws.nu[2] * (draws.b - fi) / (draws.b - draws.a) : 0.0};
        for (std::size_t d = 0; d < 3; ++d)
          worst_cbf =
              std::max(worst_cbf, std::abs(series.point(i)[d] - expect[d]));
      }
    }
  }

  // Dim-2 CBF realizes all 9 type combinations over 1000 samples.
  std::set<std::string> labels;
  {
    smt::CbfSpec spec;
    spec.count = 1000;
    spec.length = 64;
    spec.random_types = true;
    spec.dim = 2;
    spec.seed = 72;
    for (const auto& rec : smt::cbf_dataset(spec).records)
      labels.insert(rec.label);
  }

  // RAM walks stay inside the ball, all 10^4 of them.
  std::size_t escapes = 0;
  {
    smt::Rng rng(73);
    for (int rep = 0; rep < 10000; ++rep) {
      const auto s = smt::ram_base(100, 2, 75.0, rng);
      for (std::size_t i = 0; i < s.length(); ++i) {
        const auto p = s.point(i);
        if (std::hypot(p[0], p[1]) > 75.0 * (1.0 + 1e-12)) ++escapes;
      }
    }
  }

  // Time distortion: exact endpoints, points on the source polyline.
  double worst_warp = 0.0;
  bool endpoints_exact = true;
  {
    smt::Rng rng(74);
    for (int rep = 0; rep < 200; ++rep) {
      const auto base = smt::ram_base(30, 2, 20.0, rng);
      const auto warped = smt::time_distortion(base, rng);
      for (std::size_t d = 0; d < 2; ++d) {
        if (warped.point(0)[d] != base.point(0)[d]) endpoints_exact = false;
        if (warped.point(29)[d] != base.point(29)[d]) endpoints_exact = false;
      }
      for (std::size_t i = 0; i < warped.length(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j + 1 < base.length(); ++j) {
          double ab2 = 0.0, ap_ab = 0.0;
          for (std::size_t d = 0; d < 2; ++d) {
            const double ab = base.point(j + 1)[d] - base.point(j)[d];
            ab2 += ab * ab;
            ap_ab += (warped.point(i)[d] - base.point(j)[d]) * ab;
          }
          const double u = ab2 > 0.0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
          double acc = 0.0;
          for (std::size_t d = 0; d < 2; ++d) {
            const double proj =
                base.point(j)[d] +
                u * (base.point(j + 1)[d] - base.point(j)[d]);
            acc += (warped.point(i)[d] - proj) * (warped.point(i)[d] - proj);
          }
          best = std::min(best, std::sqrt(acc));
        }
        worst_warp = std::max(worst_warp, best);
      }
    }
  }

  // Space distortion: no point strays farther than the cap.
  double worst_excess = 0.0;
  {
    smt::Rng rng(75);
    for (int rep = 0; rep < 200; ++rep) {
      const auto base = smt::ram_base(30, 2, 20.0, rng);
      for (const double cap : {0.5, 5.0}) {
        const auto out = smt::space_distortion(base, cap, rng);
        for (std::size_t i = 0; i < out.length(); ++i) {
          const double moved =
              std::hypot(out.point(i)[0] - base.point(i)[0],
                         out.point(i)[1] - base.point(i)[1]);
          worst_excess = std::max(worst_excess, moved - cap);
        }
      }
    }
  }

  detail = "cbf max err=" + std::to_string(worst_cbf) +
           ", labels=" + std::to_string(labels.size()) +
           "/9, ball escapes=" + std::to_string(escapes) +
           ", warp max dev=" + std::to_string(worst_warp) +
           ", cap excess=" + std::to_string(worst_excess) + ", " +
           fmt(seconds_since(start)) + " s";
  return worst_cbf < 1e-9 && labels.size() == 9 && escapes == 0 &&
         endpoints_exact && worst_warp <= 1e-9 && worst_excess <= 1e-9;
}

/* ---- criterion 8: seeded runs are byte-identical ------------------------ */

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& bin, const std::string& args) {
  const std::string cmd = "\"" + bin + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion_determinism(std::string& detail) {
  const auto start = Clock::now();
  const char* bin = std::getenv("SMTREE_BIN");
  require(bin != nullptr, "SMTREE_BIN is not set");

  const std::vector<std::string> temp = {
      "acc_seq_a.jsonl", "acc_seq_b.jsonl", "acc_set_a.jsonl",
      "acc_set_b.jsonl", "acc_dump_a.txt",  "acc_dump_b.txt",
      "acc_dump_c.txt",  "acc_dump_d.txt"};
  auto cleanup = [&] {
    for (const auto& f : temp) std::remove(f.c_str());
  };
  cleanup();

  bool ok = true;
  ok &= run_cli(bin, "gen random-seq --count 256 --len 1:64 --seed 81 "
                     "--out acc_seq_a.jsonl") == 0;
  ok &= run_cli(bin, "gen random-seq --count 256 --len 1:64 --seed 81 "
                     "--out acc_seq_b.jsonl") == 0;
  ok &= run_cli(bin, "gen random-set --count 400 --card 1:16 --seed 82 "
                     "--out acc_set_a.jsonl") == 0;
  ok &= run_cli(bin, "gen random-set --count 400 --card 1:16 --seed 82 "
                     "--out acc_set_b.jsonl") == 0;
  require(ok, "a gen invocation failed");
  const bool gen_identical = slurp("acc_seq_a.jsonl") == slurp("acc_seq_b.jsonl") &&
                             slurp("acc_set_a.jsonl") == slurp("acc_set_b.jsonl");

  const std::string bench_knn = "bench --data acc_set_a.jsonl --distance shd "
                                "--queries 25 --k 5 --seed 83 --dump-results ";
  const std::string bench_range =
      "bench --data acc_set_a.jsonl --distance shd --queries 25 "
      "--radius 0.25 --seed 83 --dump-results ";
  ok = true;
  ok &= run_cli(bin, bench_knn + "acc_dump_a.txt") == 0;
  ok &= run_cli(bin, bench_knn + "acc_dump_b.txt") == 0;
  ok &= run_cli(bin, bench_range + "acc_dump_c.txt") == 0;
  ok &= run_cli(bin, bench_range + "acc_dump_d.txt") == 0;
  require(ok, "a bench invocation failed (nonzero exit)");
  const bool bench_identical =
      slurp("acc_dump_a.txt") == slurp("acc_dump_b.txt") &&
      slurp("acc_dump_c.txt") == slurp("acc_dump_d.txt");

  cleanup();
  detail = std::string("gen byte-identical: ") + (gen_identical ? "yes" : "no") +
           ", bench results byte-identical: " +
           (bench_identical ? "yes" : "no") + ", " +
           fmt(seconds_since(start)) + " s";
  return gen_identical && bench_identical;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"chain triangle axioms (3 x 100000 triples)", criterion_axioms},
      {"sdk equals window brute force (10000 pairs)", criterion_sdk_oracle},
      {"tree queries equal the scan (sizes 2^8..2^12)",
       criterion_query_exactness},
      {"structural invariants after 100000 inserts", criterion_structure},
      {"scan/tree eval ratio grows with size", criterion_speedup_trend},
      {"fixed-capacity split degeneration vs large nodes",
       criterion_degenerate_splits},
      {"generator properties (cbf, ram, distortions)", criterion_generators},
      {"seeded gen and bench runs are byte-identical",
       criterion_determinism}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool pass = false;
    try {
      pass = criteria[i].body(detail);
    } catch (const Failure& f) {
      detail = f.message;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %zu: %s\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name);
    if (!detail.empty()) std::printf("       %s\n", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}

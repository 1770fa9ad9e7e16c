// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
//
// smtree: dataset generation, index benchmarking, querying, and
// verification on top of the supermtree C API.
//
// Exit codes: 0 ok, 1 usage, 2 data/io error, 3 verification failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "supermtree/supermtree_c.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerify = 3;

int exit_code_for(smt_status status) {
  switch (status) {
    case SMT_OK: return kExitOk;
    case SMT_ERR_INVALID_ARGUMENT: return kExitUsage;
    case SMT_ERR_VERIFY: return kExitVerify;
    default: return kExitData;
  }
}

// Thrown to unwind to main() with a specific process exit code.
struct Abort {
  int code;
};

// Checks a C API status; on failure prints the error and aborts the command.
void check(smt_status status, const char* what) {
  if (status == SMT_OK) return;
  std::fprintf(stderr, "smtree: %s: %s\n", what, smt_last_error());
  throw Abort{exit_code_for(status)};
}

struct DatasetHandle {
  smt_dataset* ptr = nullptr;
  ~DatasetHandle() { smt_dataset_free(ptr); }
};

struct TreeHandle {
  smt_tree* ptr = nullptr;
  ~TreeHandle() { smt_tree_free(ptr); }
};

struct ResultHandle {
  smt_result* ptr = nullptr;
  ResultHandle() = default;
  ResultHandle(ResultHandle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  ResultHandle& operator=(ResultHandle&& o) noexcept {
    std::swap(ptr, o.ptr);
    return *this;
  }
  ~ResultHandle() { smt_result_free(ptr); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "LO:HI" or a single value meaning LO == HI.
template <typename T>
bool parse_range(const std::string& text, T& lo, T& hi) {
  std::istringstream in(text);
  if (!(in >> lo)) return false;
  if (in.peek() == ':') {
    in.get();
    if (!(in >> hi)) return false;
  } else {
    hi = lo;
  }
  in >> std::ws;
  return in.eof() && lo <= hi;
}

template <typename T>
CLI::Validator range_validator(const char* name) {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        T lo, hi;
        if (!parse_range(s, lo, hi)) return "expected LO:HI with LO <= HI";
        return {};
      },
      name);
}

const std::map<std::string, smt_distance> kDistances = {
    {"l2win", SMT_DISTANCE_L2WIN},
    {"sdk", SMT_DISTANCE_SDK},
    {"shd", SMT_DISTANCE_SHD}};

const std::map<std::string, smt_policy> kPolicies = {
    {"fixed", SMT_POLICY_FIXED}, {"large", SMT_POLICY_LARGE}};

const char* policy_name(smt_policy p) {
  return p == SMT_POLICY_FIXED ? "fixed" : "large";
}

const char* distance_name(smt_distance d) {
  switch (d) {
    case SMT_DISTANCE_L2WIN: return "l2win";
    case SMT_DISTANCE_SDK: return "sdk";
    default: return "shd";
  }
}

void save_generated(smt_dataset* ds, const std::string& out,
                    std::uint64_t seed) {
  DatasetHandle handle{ds};
  check(smt_dataset_save(ds, out.c_str()), "save");
  std::printf("%" PRIu64 " records (seed %" PRIu64 ") -> %s\n",
              smt_dataset_size(ds), seed, out.c_str());
}

/* ---- gen ----------------------------------------------------------- */

struct GenSeqOpts {
  std::uint64_t count = 256;
  std::string len = "1:128";
  std::uint32_t dim = 1;
  std::string range = "0:1";
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_random_seq(const GenSeqOpts& o) {
  std::uint32_t min_len, max_len;
  double lo, hi;
  parse_range(o.len, min_len, max_len);
  parse_range(o.range, lo, hi);
  smt_dataset* ds = nullptr;
  check(smt_gen_random_sequences(o.count, min_len, max_len, o.dim, lo, hi,
                                 o.seed, &ds),
        "gen random-seq");
  save_generated(ds, o.out, o.seed);
  return kExitOk;
}

struct GenSetOpts {
  std::uint64_t count = 256;
  std::string card = "1:32";
  std::string range = "0:1";
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_random_set(const GenSetOpts& o) {
  std::uint32_t min_card, max_card;
  double lo, hi;
  parse_range(o.card, min_card, max_card);
  parse_range(o.range, lo, hi);
  smt_dataset* ds = nullptr;
  check(smt_gen_random_sets(o.count, min_card, max_card, lo, hi, o.seed, &ds),
        "gen random-set");
  save_generated(ds, o.out, o.seed);
  return kExitOk;
}

struct GenCbfOpts {
  std::uint64_t count = 1;
  std::uint32_t len = 64;
  std::string types = "c";
  std::uint32_t dim = 1;
  double noise = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_cbf(const GenCbfOpts& o) {
  // "--types random" draws one of {c,b,f} per dimension per record.
  const bool random_types = o.types == "random";
  smt_dataset* ds = nullptr;
  check(smt_gen_cbf(o.count, o.len, random_types ? nullptr : o.types.c_str(),
                    o.dim, o.noise, o.seed, &ds),
        "gen cbf");
  save_generated(ds, o.out, o.seed);
  return kExitOk;
}

struct GenRamOpts {
  std::uint32_t classes = 1;
  std::uint32_t reps = 1;
  std::uint32_t len = 100;
  std::uint32_t dim = 2;
  double radius = 75.0;
  double distortion = 5.0;
  bool include_base = false;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_ram(const GenRamOpts& o) {
  smt_dataset* ds = nullptr;
  check(smt_gen_ram(o.classes, o.reps, o.len, o.dim, o.radius, o.distortion,
                    o.include_base ? 1 : 0, o.seed, &ds),
        "gen ram");
  save_generated(ds, o.out, o.seed);
  return kExitOk;
}

struct GenCropOpts {
  std::string data;
  std::string len = "1:128";
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_crop(const GenCropOpts& o) {
  std::uint32_t min_len, max_len;
  parse_range(o.len, min_len, max_len);
  DatasetHandle source;
  check(smt_dataset_load(o.data.c_str(), &source.ptr), "load");
  smt_dataset* cropped = nullptr;
  check(smt_dataset_crop(source.ptr, min_len, max_len, o.seed, &cropped),
        "gen crop");
  save_generated(cropped, o.out, o.seed);
  return kExitOk;
}

/* ---- query execution ------------------------------------------------ */

struct QueryBatchItem {
  ResultHandle tree;
  ResultHandle scan;
  double tree_seconds = 0.0;
  double scan_seconds = 0.0;
};

// Runs one query against the tree (index into `queries`).
ResultHandle tree_query(const smt_tree* tree, const smt_dataset* queries,
                        std::uint64_t i, bool use_radius, double radius,
                        std::uint32_t k) {
  ResultHandle r;
  if (use_radius)
    check(smt_tree_range_query(tree, queries, i, radius, &r.ptr),
          "tree range query");
  else
    check(smt_tree_knn_query(tree, queries, i, k, &r.ptr), "tree knn query");
  return r;
}

ResultHandle scan_query(const smt_dataset* data, smt_distance distance,
                        const smt_dataset* queries, std::uint64_t i,
                        bool use_radius, double radius, std::uint32_t k,
                        bool use_lb) {
  ResultHandle r;
  if (use_radius)
    check(smt_scan_range(data, distance, queries, i, radius, use_lb ? 1 : 0,
                         &r.ptr),
          "scan range query");
  else
    check(smt_scan_knn(data, distance, queries, i, k, &r.ptr),
          "scan knn query");
  return r;
}

struct ResultRow {
  std::uint64_t id;
  double distance;
};

std::vector<ResultRow> rows_of(const smt_result* r) {
  std::vector<ResultRow> rows(smt_result_size(r));
  for (std::uint64_t i = 0; i < rows.size(); ++i)
    check(smt_result_get(r, i, &rows[i].id, &rows[i].distance), "result get");
  return rows;
}

// Range results must agree exactly; kNN results must agree as distance
// multisets (ties at the kth distance may resolve to either id).
bool results_equivalent(const smt_result* tree, const smt_result* scan,
                        bool use_radius, std::string* why) {
  const auto a = rows_of(tree);
  const auto b = rows_of(scan);
  if (a.size() != b.size()) {
    *why = "result sizes differ: tree " + std::to_string(a.size()) +
           ", scan " + std::to_string(b.size());
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].distance != b[i].distance) {
      *why = "distance mismatch at rank " + std::to_string(i) + ": tree " +
             format_double(a[i].distance) + ", scan " +
             format_double(b[i].distance);
      return false;
    }
    if (use_radius && a[i].id != b[i].id) {
      *why = "id mismatch at rank " + std::to_string(i) + ": tree " +
             std::to_string(a[i].id) + ", scan " + std::to_string(b[i].id);
      return false;
    }
  }
  return true;
}

/* ---- bench ----------------------------------------------------------- */

struct BenchOpts {
  std::string data;
  smt_distance distance = SMT_DISTANCE_L2WIN;
  smt_policy policy = SMT_POLICY_FIXED;
  std::uint32_t capacity = 128;
  std::uint64_t queries = 100;
  std::uint32_t k = 1;
  bool has_k = false;
  double radius = 0.0;
  bool has_radius = false;
  bool use_lb = false;
  std::uint32_t threads = 0;
  std::uint64_t seed = 0;
  std::string report;
  std::string dump_results;
};

void append_report_row(const std::string& path, const std::string& row) {
  static const char* kHeader =
      "size,distance,policy,capacity,build_s,query_s_mean,dist_evals_build,"
      "dist_evals_query_mean,speedup,equivalent";
  bool need_header = true;
  {
    std::ifstream in(path, std::ios::binary);
    if (in && in.peek() != std::ifstream::traits_type::eof())
      need_header = false;
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    std::fprintf(stderr, "smtree: cannot open report file %s\n", path.c_str());
    throw Abort{kExitData};
  }
  if (need_header) out << kHeader << '\n';
  out << row << '\n';
  if (!out) {
    std::fprintf(stderr, "smtree: failed writing report file %s\n",
                 path.c_str());
    throw Abort{kExitData};
  }
}

void dump_result_sets(const std::string& path, const smt_dataset* queries,
                      const std::vector<QueryBatchItem>& batch) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::fprintf(stderr, "smtree: cannot open %s\n", path.c_str());
    throw Abort{kExitData};
  }
  for (std::size_t i = 0; i < batch.size(); ++i) {
    std::uint64_t qid = 0;
    check(smt_dataset_record_id(queries, i, &qid), "record id");
    out << qid << ':';
    const auto rows = rows_of(batch[i].tree.ptr);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j) out << ';';
      out << rows[j].id << ',' << format_double(rows[j].distance);
    }
    out << '\n';
  }
}

int run_bench(const BenchOpts& o) {
  if (o.has_k && o.has_radius) {
    std::fprintf(stderr, "smtree: pass either --k or --radius, not both\n");
    return kExitUsage;
  }
  const bool use_radius = o.has_radius;
  const std::uint32_t k = o.has_k ? o.k : 1;

  DatasetHandle full;
  check(smt_dataset_load(o.data.c_str(), &full.ptr), "load");
  DatasetHandle data, queries;
  check(smt_dataset_split(full.ptr, o.queries, o.seed, &data.ptr,
                          &queries.ptr),
        "holdout split");
  const std::uint64_t size = smt_dataset_size(data.ptr);
  const std::uint64_t query_count = smt_dataset_size(queries.ptr);

  TreeHandle tree;
  check(smt_tree_create(o.distance, o.policy, o.capacity, &tree.ptr),
        "tree create");
  const auto build_start = std::chrono::steady_clock::now();
  check(smt_tree_insert_all(tree.ptr, data.ptr), "build");
  const double build_s = seconds_since(build_start);
  const std::uint64_t build_evals = smt_tree_build_distance_evals(tree.ptr);

  std::vector<QueryBatchItem> batch(query_count);
  std::uint32_t thread_count = o.threads;
  if (thread_count == 0)
    thread_count = std::max(1u, std::thread::hardware_concurrency());
  thread_count =
      std::min<std::uint64_t>(thread_count, std::max<std::uint64_t>(1, query_count));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= query_count || failed.load()) return;
        auto t0 = std::chrono::steady_clock::now();
        batch[i].tree = tree_query(tree.ptr, queries.ptr, i, use_radius,
                                   o.radius, k);
        batch[i].tree_seconds = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        batch[i].scan = scan_query(data.ptr, o.distance, queries.ptr, i,
                                   use_radius, o.radius, k, o.use_lb);
        batch[i].scan_seconds = seconds_since(t0);
      }
    } catch (const Abort&) {
      failed.store(true);
    }
  };
  std::vector<std::thread> pool;
  for (std::uint32_t t = 1; t < thread_count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failed.load()) {
    std::fprintf(stderr, "smtree: query execution failed\n");
    return kExitData;
  }

  // Self-verification: every tree result must match the scan oracle.
  for (std::uint64_t i = 0; i < query_count; ++i) {
    std::string why;
    if (!results_equivalent(batch[i].tree.ptr, batch[i].scan.ptr, use_radius,
                            &why)) {
      std::uint64_t qid = 0;
      check(smt_dataset_record_id(queries.ptr, i, &qid), "record id");
      std::fprintf(stderr, "smtree: tree/scan mismatch on query %" PRIu64
                           ": %s\n",
                   qid, why.c_str());
      return kExitVerify;
    }
  }

  double tree_time = 0.0, scan_time = 0.0;
  std::uint64_t tree_evals = 0, scan_evals = 0;
  for (const auto& item : batch) {
    tree_time += item.tree_seconds;
    scan_time += item.scan_seconds;
    tree_evals += smt_result_distance_evals(item.tree.ptr);
    scan_evals += smt_result_distance_evals(item.scan.ptr);
  }
  const double denom = query_count ? static_cast<double>(query_count) : 1.0;
  const double query_s_mean = tree_time / denom;
  const double evals_mean = static_cast<double>(tree_evals) / denom;
  const double eval_speedup =
      tree_evals == 0 ? (scan_evals == 0 ? 1.0 : 0.0)
                      : static_cast<double>(scan_evals) /
                            static_cast<double>(tree_evals);
  const double wall_speedup =
      tree_time > 0.0 ? scan_time / tree_time : (scan_time > 0.0 ? 0.0 : 1.0);

  std::printf("size=%" PRIu64 " distance=%s policy=%s capacity=%u seed=%"
              PRIu64 "\n",
              size, distance_name(o.distance), policy_name(o.policy),
              o.capacity, o.seed);
  if (use_radius)
    std::printf("workload: %" PRIu64 " range queries, radius %s\n",
                query_count, format_double(o.radius).c_str());
  else
    std::printf("workload: %" PRIu64 " %u-NN queries\n", query_count, k);
  std::printf("build: %.6f s, %" PRIu64 " distance evals\n", build_s,
              build_evals);
  std::printf("query: mean %.9f s, mean %.3f distance evals (scan mean "
              "%.3f)\n",
              query_s_mean, evals_mean,
              static_cast<double>(scan_evals) / denom);
  std::printf("speedup: %.6g x distance evals, %.6g x wall clock\n",
              eval_speedup, wall_speedup);
  std::printf("equivalent: true\n");

  if (!o.report.empty()) {
    std::ostringstream row;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6f", build_s);
    row << size << ',' << distance_name(o.distance) << ','
        << policy_name(o.policy) << ',' << o.capacity << ',' << buf;
    std::snprintf(buf, sizeof buf, "%.9f", query_s_mean);
    row << ',' << buf << ',' << build_evals;
    std::snprintf(buf, sizeof buf, "%.3f", evals_mean);
    row << ',' << buf;
    std::snprintf(buf, sizeof buf, "%.6g", eval_speedup);
    row << ',' << buf << ",true";
    append_report_row(o.report, row.str());
    std::printf("report: %s\n", o.report.c_str());
  }
  if (!o.dump_results.empty())
    dump_result_sets(o.dump_results, queries.ptr, batch);
  return kExitOk;
}

/* ---- query ----------------------------------------------------------- */

struct QueryOpts {
  std::string data;
  std::string query_file;
  smt_distance distance = SMT_DISTANCE_L2WIN;
  std::string engine = "tree";
  smt_policy policy = SMT_POLICY_FIXED;
  std::uint32_t capacity = 128;
  std::uint32_t k = 1;
  bool has_k = false;
  double radius = 0.0;
  bool has_radius = false;
};

int run_query(const QueryOpts& o) {
  if (o.has_k && o.has_radius) {
    std::fprintf(stderr, "smtree: pass either --k or --radius, not both\n");
    return kExitUsage;
  }
  const bool use_radius = o.has_radius;
  const std::uint32_t k = o.has_k ? o.k : 1;

  DatasetHandle data, queries;
  check(smt_dataset_load(o.data.c_str(), &data.ptr), "load data");
  check(smt_dataset_load(o.query_file.c_str(), &queries.ptr), "load queries");

  TreeHandle tree;
  if (o.engine == "tree") {
    check(smt_tree_create(o.distance, o.policy, o.capacity, &tree.ptr),
          "tree create");
    check(smt_tree_insert_all(tree.ptr, data.ptr), "build");
  }
  const std::uint64_t query_count = smt_dataset_size(queries.ptr);
  for (std::uint64_t i = 0; i < query_count; ++i) {
    ResultHandle r =
        o.engine == "tree"
            ? tree_query(tree.ptr, queries.ptr, i, use_radius, o.radius, k)
            : scan_query(data.ptr, o.distance, queries.ptr, i, use_radius,
                         o.radius, k, false);
    std::uint64_t qid = 0;
    check(smt_dataset_record_id(queries.ptr, i, &qid), "record id");
    std::printf("# query %" PRIu64 "\n", qid);
    for (const auto& row : rows_of(r.ptr))
      std::printf("%" PRIu64 ",%s\n", row.id,
                  format_double(row.distance).c_str());
  }
  return kExitOk;
}

/* ---- validate ---------------------------------------------------------- */

struct ValidateOpts {
  std::string data;
  smt_distance distance = SMT_DISTANCE_L2WIN;
  smt_policy policy = SMT_POLICY_FIXED;
  std::uint32_t capacity = 128;
  std::uint64_t triples = 1000;
  std::uint64_t seed = 0;
};

int run_validate(const ValidateOpts& o) {
  DatasetHandle data;
  check(smt_dataset_load(o.data.c_str(), &data.ptr), "load");

  TreeHandle tree;
  check(smt_tree_create(o.distance, o.policy, o.capacity, &tree.ptr),
        "tree create");
  check(smt_tree_insert_all(tree.ptr, data.ptr), "build");

  char* report = nullptr;
  const smt_status structural = smt_tree_validate(tree.ptr, &report);
  if (structural != SMT_OK) {
    std::fprintf(stderr, "smtree: structural validation failed: %s\n",
                 report ? report : smt_last_error());
    smt_string_free(report);
    return exit_code_for(structural);
  }
  smt_string_free(report);
  report = nullptr;

  const smt_status axioms = smt_check_axioms(data.ptr, o.distance, o.triples,
                                             o.seed, &report);
  if (axioms != SMT_OK) {
    std::fprintf(stderr, "smtree: axiom check failed: %s\n",
                 report ? report : smt_last_error());
    smt_string_free(report);
    return exit_code_for(axioms);
  }
  smt_string_free(report);
  std::printf("ok: %" PRIu64 " records, structure clean, %" PRIu64
              " axiom triples clean\n",
              smt_dataset_size(data.ptr), o.triples);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric subset-space index benchmark harness"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "print help for all subcommands");
  const auto u32_range = range_validator<std::uint32_t>("U32RANGE");
  const auto real_range = range_validator<double>("REALRANGE");

  // Seed options read SMTREE_SEED when the flag is absent.
  auto add_seed = [](CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed, "random seed")->envname("SMTREE_SEED");
  };

  auto* gen = app.add_subcommand("gen", "generate synthetic datasets");
  gen->require_subcommand(1);

  GenSeqOpts seq;
  auto* gen_seq =
      gen->add_subcommand("random-seq", "uniform random sequences");
  gen_seq->add_option("--count", seq.count, "number of records");
  gen_seq->add_option("--len", seq.len, "length range LO:HI")
      ->check(u32_range);
  gen_seq->add_option("--dim", seq.dim, "points per step")
      ->check(CLI::PositiveNumber);
  gen_seq->add_option("--range", seq.range, "value range LO:HI")
      ->check(real_range);
  add_seed(gen_seq, seq.seed);
  gen_seq->add_option("--out", seq.out, "output JSON-Lines path")->required();

  GenSetOpts set;
  auto* gen_set = gen->add_subcommand("random-set", "uniform random sets");
  gen_set->add_option("--count", set.count, "number of records");
  gen_set->add_option("--card", set.card, "cardinality range LO:HI")
      ->check(u32_range);
  gen_set->add_option("--range", set.range, "value range LO:HI")
      ->check(real_range);
  add_seed(gen_set, set.seed);
  gen_set->add_option("--out", set.out, "output JSON-Lines path")->required();

  GenCbfOpts cbf;
  auto* gen_cbf =
      gen->add_subcommand("cbf", "cylinder-bell-funnel series");
  gen_cbf->add_option("--count", cbf.count, "number of records");
  gen_cbf->add_option("--len", cbf.len, "series length")
      ->check(CLI::Range(std::uint32_t{8}, std::uint32_t{1u << 20}));
  gen_cbf->add_option("--types", cbf.types,
                      "pattern per dimension from {c,b,f}, or 'random'");
  gen_cbf->add_option("--dim", cbf.dim, "dimensions when --types random")
      ->check(CLI::PositiveNumber);
  gen_cbf->add_option("--noise", cbf.noise, "noise scale");
  add_seed(gen_cbf, cbf.seed);
  gen_cbf->add_option("--out", cbf.out, "output JSON-Lines path")->required();

  GenRamOpts ram;
  auto* gen_ram =
      gen->add_subcommand("ram", "random accelerated motion trajectories");
  gen_ram->add_option("--classes", ram.classes, "base trajectories")
      ->check(CLI::PositiveNumber);
  gen_ram->add_option("--reps", ram.reps, "distorted copies per class");
  gen_ram->add_option("--len", ram.len, "trajectory length")
      ->check(CLI::PositiveNumber);
  gen_ram->add_option("--dim", ram.dim, "space dimensions")
      ->check(CLI::PositiveNumber);
  gen_ram->add_option("--radius", ram.radius, "arena ball radius");
  gen_ram->add_option("--distortion", ram.distortion,
                      "max distance from the base trajectory");
  gen_ram->add_flag("--include-base", ram.include_base,
                    "emit base trajectories as records too");
  add_seed(gen_ram, ram.seed);
  gen_ram->add_option("--out", ram.out, "output JSON-Lines path")->required();

  GenCropOpts crop;
  auto* gen_crop =
      gen->add_subcommand("crop", "crop sequences to random subsequences");
  gen_crop->add_option("--data", crop.data, "input JSON-Lines path")
      ->required();
  gen_crop->add_option("--len", crop.len, "cropped length range LO:HI")
      ->check(u32_range);
  add_seed(gen_crop, crop.seed);
  gen_crop->add_option("--out", crop.out, "output JSON-Lines path")
      ->required();

  BenchOpts bench;
  auto* bench_cmd = app.add_subcommand(
      "bench", "build the index, verify against a linear scan, report");
  bench_cmd->add_option("--data", bench.data, "dataset JSON-Lines path")
      ->required();
  bench_cmd->add_option("--distance", bench.distance, "distance function")
      ->required()
      ->transform(CLI::CheckedTransformer(kDistances, CLI::ignore_case));
  bench_cmd->add_option("--policy", bench.policy, "split policy")
      ->transform(CLI::CheckedTransformer(kPolicies, CLI::ignore_case));
  bench_cmd->add_option("--capacity", bench.capacity, "node capacity")
      ->check(CLI::Range(4u, 1u << 20));
  bench_cmd->add_option("--queries", bench.queries,
                        "held-out query batch size")
      ->check(CLI::PositiveNumber);
  auto* bench_k = bench_cmd->add_option("--k", bench.k, "kNN query (default 1)")
                      ->check(CLI::PositiveNumber);
  auto* bench_r =
      bench_cmd->add_option("--radius", bench.radius, "range query radius")
          ->check(CLI::NonNegativeNumber);
  bench_r->excludes(bench_k);
  bench_cmd->add_flag("--use-lb", bench.use_lb,
                      "let the scan use cheap lower bounds");
  bench_cmd->add_option("--threads", bench.threads,
                        "query worker threads (0 = hardware)");
  add_seed(bench_cmd, bench.seed);
  bench_cmd->add_option("--report", bench.report, "append a CSV row here");
  bench_cmd->add_option("--dump-results", bench.dump_results,
                        "write per-query result sets here");

  QueryOpts query;
  auto* query_cmd = app.add_subcommand("query", "run queries and print hits");
  query_cmd->add_option("--data", query.data, "dataset JSON-Lines path")
      ->required();
  query_cmd->add_option("--q", query.query_file, "query records path")
      ->required();
  query_cmd->add_option("--distance", query.distance, "distance function")
      ->required()
      ->transform(CLI::CheckedTransformer(kDistances, CLI::ignore_case));
  query_cmd->add_option("--engine", query.engine, "tree or scan")
      ->check(CLI::IsMember({"tree", "scan"}));
  query_cmd->add_option("--policy", query.policy, "split policy")
      ->transform(CLI::CheckedTransformer(kPolicies, CLI::ignore_case));
  query_cmd->add_option("--capacity", query.capacity, "node capacity")
      ->check(CLI::Range(4u, 1u << 20));
  auto* query_k = query_cmd->add_option("--k", query.k, "kNN query")
                      ->check(CLI::PositiveNumber);
  auto* query_r =
      query_cmd->add_option("--radius", query.radius, "range query radius")
          ->check(CLI::NonNegativeNumber);
  query_r->excludes(query_k);

  ValidateOpts validate;
  auto* validate_cmd = app.add_subcommand(
      "validate", "structural and axiom verification of a dataset");
  validate_cmd->add_option("--data", validate.data, "dataset JSON-Lines path")
      ->required();
  validate_cmd
      ->add_option("--distance", validate.distance, "distance function")
      ->required()
      ->transform(CLI::CheckedTransformer(kDistances, CLI::ignore_case));
  validate_cmd->add_option("--policy", validate.policy, "split policy")
      ->transform(CLI::CheckedTransformer(kPolicies, CLI::ignore_case));
  validate_cmd->add_option("--capacity", validate.capacity, "node capacity")
      ->check(CLI::Range(4u, 1u << 20));
  validate_cmd->add_option("--triples", validate.triples,
                           "axiom check sample size");
  add_seed(validate_cmd, validate.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  bench.has_k = bench_k->count() > 0;
  bench.has_radius = bench_r->count() > 0;
  query.has_k = query_k->count() > 0;
  query.has_radius = query_r->count() > 0;

  try {
    if (gen_seq->parsed()) return run_gen_random_seq(seq);
    if (gen_set->parsed()) return run_gen_random_set(set);
    if (gen_cbf->parsed()) return run_gen_cbf(cbf);
    if (gen_ram->parsed()) return run_gen_ram(ram);
    if (gen_crop->parsed()) return run_gen_crop(crop);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (query_cmd->parsed()) return run_query(query);
    if (validate_cmd->parsed()) return run_validate(validate);
  } catch (const Abort& abort) {
    return abort.code;
  }
  return kExitUsage;
}

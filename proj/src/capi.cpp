// Copyright 2026 The supermtree authors
// SPDX-License-Identifier: Apache-2.0
#include "supermtree/supermtree_c.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "supermtree/datagen.hpp"
#include "supermtree/dataset.hpp"
#include "supermtree/engine.hpp"

struct smt_dataset {
  smt::Dataset data;
};

struct smt_tree {
  smt::DistanceKind distance;
  smt::AnyTree tree;
};

struct smt_result {
  std::vector<smt::Neighbor> items;
  std::uint64_t distance_evals = 0;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

smt_status fail(smt_status code, const std::string& msg) {
  set_error(msg);
  return code;
}

// Runs the body and maps C++ exceptions onto status codes.
template <typename Fn>
smt_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const smt::IoError& e) {
    return fail(SMT_ERR_IO, e.what());
  } catch (const smt::DataError& e) {
    return fail(SMT_ERR_DATA, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SMT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SMT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SMT_ERR_INTERNAL, e.what());
  }
}

smt_status require(bool ok, const char* what) {
  return ok ? SMT_OK : fail(SMT_ERR_INVALID_ARGUMENT, what);
}

bool valid_distance(smt_distance d) {
  return d == SMT_DISTANCE_L2WIN || d == SMT_DISTANCE_SDK ||
         d == SMT_DISTANCE_SHD;
}

smt::DistanceKind to_kind(smt_distance d) {
  switch (d) {
    case SMT_DISTANCE_L2WIN: return smt::DistanceKind::L2Win;
    case SMT_DISTANCE_SDK: return smt::DistanceKind::Sdk;
    default: return smt::DistanceKind::Shd;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

smt_status check_record_index(const smt_dataset* ds, std::uint64_t index) {
  if (!ds) return fail(SMT_ERR_INVALID_ARGUMENT, "null dataset");
  if (index >= ds->data.size())
    return fail(SMT_ERR_INVALID_ARGUMENT, "record index out of range");
  return SMT_OK;
}

smt_status check_compatible(const smt_dataset* ds, smt::DistanceKind kind) {
  if (!ds->data.empty() && ds->data.kind != smt::required_kind(kind))
    return fail(SMT_ERR_DATA, "dataset kind incompatible with distance");
  return SMT_OK;
}

}  // namespace

extern "C" {

const char* smt_version(void) { return "0.1.0"; }

const char* smt_last_error(void) { return g_last_error.c_str(); }

/* ---- datasets ---------------------------------------------------- */

smt_status smt_dataset_load(const char* path, smt_dataset** out) {
  if (auto s = require(path && out, "null argument")) return s;
  return guarded([&] {
    auto ds = std::make_unique<smt_dataset>();
    ds->data = smt::load_jsonl(path);
    *out = ds.release();
    return SMT_OK;
  });
}

smt_status smt_dataset_save(const smt_dataset* ds, const char* path) {
  if (auto s = require(ds && path, "null argument")) return s;
  return guarded([&] {
    smt::save_jsonl(ds->data, path);
    return SMT_OK;
  });
}

void smt_dataset_free(smt_dataset* ds) { delete ds; }

uint64_t smt_dataset_size(const smt_dataset* ds) {
  return ds ? ds->data.size() : 0;
}

smt_kind smt_dataset_kind(const smt_dataset* ds) {
  return ds && ds->data.kind == smt::ObjectKind::Set ? SMT_KIND_SET
                                                     : SMT_KIND_SERIES;
}

uint32_t smt_dataset_dim(const smt_dataset* ds) {
  return ds ? static_cast<uint32_t>(ds->data.dim) : 0;
}

smt_status smt_dataset_record_id(const smt_dataset* ds, uint64_t index,
                                 uint64_t* out) {
  if (auto s = check_record_index(ds, index)) return s;
  if (auto s = require(out != nullptr, "null output")) return s;
  *out = ds->data.records[index].id;
  return SMT_OK;
}

const char* smt_dataset_record_label(const smt_dataset* ds, uint64_t index) {
  if (check_record_index(ds, index) != SMT_OK) return nullptr;
  return ds->data.records[index].label.c_str();
}

smt_status smt_dataset_split(const smt_dataset* ds, uint64_t query_count,
                             uint64_t seed, smt_dataset** data,
                             smt_dataset** queries) {
  if (auto s = require(ds && data && queries, "null argument")) return s;
  return guarded([&] {
    auto [d, q] = smt::split_holdout(ds->data, query_count, seed);
    auto dd = std::make_unique<smt_dataset>();
    auto qq = std::make_unique<smt_dataset>();
    dd->data = std::move(d);
    qq->data = std::move(q);
    *data = dd.release();
    *queries = qq.release();
    return SMT_OK;
  });
}

/* ---- generators --------------------------------------------------- */

smt_status smt_gen_random_sequences(uint64_t count, uint32_t min_len,
                                    uint32_t max_len, uint32_t dim, double lo,
                                    double hi, uint64_t seed,
                                    smt_dataset** out) {
  if (auto s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    smt::RandomSequenceSpec spec;
    spec.count = count;
    spec.min_len = min_len;
    spec.max_len = max_len;
    spec.dim = dim;
    spec.lo = lo;
    spec.hi = hi;
    spec.seed = seed;
    auto ds = std::make_unique<smt_dataset>();
    ds->data = smt::random_sequences(spec);
    *out = ds.release();
    return SMT_OK;
  });
}

smt_status smt_gen_random_sets(uint64_t count, uint32_t min_card,
                               uint32_t max_card, double lo, double hi,
                               uint64_t seed, smt_dataset** out) {
  if (auto s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    smt::RandomSetSpec spec;
    spec.count = count;
    spec.min_card = min_card;
    spec.max_card = max_card;
    spec.lo = lo;
    spec.hi = hi;
    spec.seed = seed;
    auto ds = std::make_unique<smt_dataset>();
    ds->data = smt::random_sets(spec);
    *out = ds.release();
    return SMT_OK;
  });
}

smt_status smt_gen_cbf(uint64_t count, uint32_t length, const char* types,
                       uint32_t dim, double noise_scale, uint64_t seed,
                       smt_dataset** out) {
  if (auto s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    smt::CbfSpec spec;
    spec.count = count;
    spec.length = length;
    if (types) {
      spec.types = types;
      spec.random_types = false;
    } else {
      spec.random_types = true;
      spec.dim = dim;
    }
    spec.noise_scale = noise_scale;
    spec.seed = seed;
    auto ds = std::make_unique<smt_dataset>();
    ds->data = smt::cbf_dataset(spec);
    *out = ds.release();
    return SMT_OK;
  });
}

smt_status smt_gen_ram(uint32_t classes, uint32_t reps, uint32_t length,
                       uint32_t dim, double radius, double distortion,
                       int include_base, uint64_t seed, smt_dataset** out) {
  if (auto s = require(out != nullptr, "null output")) return s;
  return guarded([&] {
    smt::RamSpec spec;
    spec.classes = classes;
    spec.reps = reps;
    spec.length = length;
    spec.dim = dim;
    spec.radius = radius;
    spec.distortion = distortion;
    spec.include_base = include_base != 0;
    spec.seed = seed;
    auto ds = std::make_unique<smt_dataset>();
    ds->data = smt::ram_dataset(spec);
    *out = ds.release();
    return SMT_OK;
  });
}

smt_status smt_dataset_crop(const smt_dataset* ds, uint32_t min_len,
                            uint32_t max_len, uint64_t seed,
                            smt_dataset** out) {
  if (auto s = require(ds && out, "null argument")) return s;
  return guarded([&] {
    auto cropped = std::make_unique<smt_dataset>();
    cropped->data = smt::crop_sequences(ds->data, min_len, max_len, seed);
    *out = cropped.release();
    return SMT_OK;
  });
}

/* ---- index -------------------------------------------------------- */

smt_status smt_tree_create(smt_distance distance, smt_policy policy,
                           uint32_t capacity, smt_tree** out) {
  if (auto s = require(out != nullptr, "null output")) return s;
  if (auto s = require(valid_distance(distance), "unknown distance")) return s;
  if (auto s = require(policy == SMT_POLICY_FIXED || policy == SMT_POLICY_LARGE,
                       "unknown policy"))
    return s;
  return guarded([&] {
    smt::TreeConfig config;
    config.capacity = capacity;
    config.policy = policy == SMT_POLICY_FIXED ? smt::SplitPolicy::FixedCapacity
                                               : smt::SplitPolicy::LargeNodes;
    auto t = std::make_unique<smt_tree>();
    t->distance = to_kind(distance);
    t->tree = smt::make_tree(t->distance, config);
    *out = t.release();
    return SMT_OK;
  });
}

void smt_tree_free(smt_tree* tree) { delete tree; }

smt_status smt_tree_insert(smt_tree* tree, const smt_dataset* ds,
                           uint64_t index) {
  if (auto s = require(tree != nullptr, "null tree")) return s;
  if (auto s = check_record_index(ds, index)) return s;
  if (auto s = check_compatible(ds, tree->distance)) return s;
  return guarded([&] {
    smt::tree_insert(tree->tree, ds->data.records[index]);
    return SMT_OK;
  });
}

smt_status smt_tree_insert_all(smt_tree* tree, const smt_dataset* ds) {
  if (auto s = require(tree && ds, "null argument")) return s;
  if (auto s = check_compatible(ds, tree->distance)) return s;
  return guarded([&] {
    for (const auto& rec : ds->data.records)
      smt::tree_insert(tree->tree, rec);
    return SMT_OK;
  });
}

smt_status smt_tree_range_query(const smt_tree* tree,
                                const smt_dataset* queries, uint64_t index,
                                double radius, smt_result** out) {
  if (auto s = require(tree && out, "null argument")) return s;
  if (auto s = check_record_index(queries, index)) return s;
  if (auto s = check_compatible(queries, tree->distance)) return s;
  return guarded([&] {
    auto result = std::make_unique<smt_result>();
    result->items = smt::tree_range(tree->tree, queries->data.records[index],
                                    radius, &result->distance_evals);
    *out = result.release();
    return SMT_OK;
  });
}

smt_status smt_tree_knn_query(const smt_tree* tree, const smt_dataset* queries,
                              uint64_t index, uint32_t k, smt_result** out) {
  if (auto s = require(tree && out, "null argument")) return s;
  if (auto s = check_record_index(queries, index)) return s;
  if (auto s = check_compatible(queries, tree->distance)) return s;
  return guarded([&] {
    auto result = std::make_unique<smt_result>();
    result->items = smt::tree_knn(tree->tree, queries->data.records[index], k,
                                  &result->distance_evals);
    *out = result.release();
    return SMT_OK;
  });
}

smt_status smt_tree_validate(const smt_tree* tree, char** report_json) {
  if (auto s = require(tree != nullptr, "null tree")) return s;
  return guarded([&] {
    const auto report = smt::tree_validate(tree->tree);
    if (report_json) *report_json = dup_string(smt::to_json(report));
    if (!report.ok())
      return fail(SMT_ERR_VERIFY, "tree validation failed: " +
                                      report.violations.front());
    return SMT_OK;
  });
}

smt_status smt_tree_stats(const smt_tree* tree, char** stats_json) {
  if (auto s = require(tree && stats_json, "null argument")) return s;
  return guarded([&] {
    *stats_json = dup_string(smt::to_json(smt::tree_stats(tree->tree)));
    return SMT_OK;
  });
}

uint64_t smt_tree_build_distance_evals(const smt_tree* tree) {
  return tree ? smt::tree_stats(tree->tree).build_distance_evals : 0;
}

uint64_t smt_tree_query_distance_evals(const smt_tree* tree) {
  return tree ? smt::tree_stats(tree->tree).query_distance_evals : 0;
}

/* ---- linear-scan baseline ----------------------------------------- */

smt_status smt_scan_range(const smt_dataset* data, smt_distance distance,
                          const smt_dataset* queries, uint64_t index,
                          double radius, int use_lower_bounds,
                          smt_result** out) {
  if (auto s = require(data && out, "null argument")) return s;
  if (auto s = require(valid_distance(distance), "unknown distance")) return s;
  if (auto s = check_record_index(queries, index)) return s;
  const auto kind = to_kind(distance);
  if (auto s = check_compatible(data, kind)) return s;
  if (auto s = check_compatible(queries, kind)) return s;
  return guarded([&] {
    smt::ScanCounters counters;
    auto result = std::make_unique<smt_result>();
    result->items =
        smt::scan_range(data->data, kind, queries->data.records[index], radius,
                        use_lower_bounds != 0, &counters);
    result->distance_evals = counters.distance_evals;
    *out = result.release();
    return SMT_OK;
  });
}

smt_status smt_scan_knn(const smt_dataset* data, smt_distance distance,
                        const smt_dataset* queries, uint64_t index, uint32_t k,
                        smt_result** out) {
  if (auto s = require(data && out, "null argument")) return s;
  if (auto s = require(valid_distance(distance), "unknown distance")) return s;
  if (auto s = check_record_index(queries, index)) return s;
  const auto kind = to_kind(distance);
  if (auto s = check_compatible(data, kind)) return s;
  if (auto s = check_compatible(queries, kind)) return s;
  return guarded([&] {
    smt::ScanCounters counters;
    auto result = std::make_unique<smt_result>();
    result->items = smt::scan_knn(data->data, kind,
                                  queries->data.records[index], k, &counters);
    result->distance_evals = counters.distance_evals;
    *out = result.release();
    return SMT_OK;
  });
}

/* ---- query results ------------------------------------------------ */

uint64_t smt_result_size(const smt_result* result) {
  return result ? result->items.size() : 0;
}

smt_status smt_result_get(const smt_result* result, uint64_t i, uint64_t* id,
                          double* distance) {
  if (auto s = require(result != nullptr, "null result")) return s;
  if (auto s = require(i < result->items.size(), "result index out of range"))
    return s;
  if (id) *id = result->items[i].id;
  if (distance) *distance = result->items[i].distance;
  return SMT_OK;
}

uint64_t smt_result_distance_evals(const smt_result* result) {
  return result ? result->distance_evals : 0;
}

void smt_result_free(smt_result* result) { delete result; }

/* ---- verification helpers ----------------------------------------- */

smt_status smt_check_axioms(const smt_dataset* ds, smt_distance distance,
                            uint64_t triples, uint64_t seed,
                            char** report_json) {
  if (auto s = require(ds != nullptr, "null dataset")) return s;
  if (auto s = require(valid_distance(distance), "unknown distance")) return s;
  const auto kind = to_kind(distance);
  if (auto s = check_compatible(ds, kind)) return s;
  return guarded([&] {
    const auto report = smt::check_axioms(ds->data, kind, triples, seed);
    if (report_json) *report_json = dup_string(smt::to_json(report));
    if (!report.ok())
      return fail(SMT_ERR_VERIFY,
                  "axiom check failed: " + report.violations.front());
    return SMT_OK;
  });
}

void smt_string_free(char* s) { delete[] s; }

}  // extern "C"

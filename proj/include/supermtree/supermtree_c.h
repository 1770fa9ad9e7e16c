/* Copyright 2026 The supermtree authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the supermtree library: datasets, generators, the
 * SuperM-Tree index, and the linear-scan baseline behind opaque handles.
 * Every function returns a status code; smt_last_error() describes the
 * most recent failure on the calling thread.
 */
#ifndef SUPERMTREE_C_H
#define SUPERMTREE_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SMT_API __declspec(dllexport)
#else
#define SMT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* The _FORCE_INT sentinels pin each enum's value range to a full int so
 * out-of-range inputs arriving across the ABI stay well-defined and can be
 * rejected with SMT_ERR_INVALID_ARGUMENT. */
typedef enum smt_status {
  SMT_OK = 0,
  SMT_ERR_INVALID_ARGUMENT = 1,
  SMT_ERR_IO = 2,
  SMT_ERR_DATA = 3,
  SMT_ERR_VERIFY = 4,
  SMT_ERR_INTERNAL = 5,
  SMT_STATUS_FORCE_INT = 0x7fffffff
} smt_status;

typedef enum smt_distance {
  SMT_DISTANCE_L2WIN = 0,
  SMT_DISTANCE_SDK = 1,
  SMT_DISTANCE_SHD = 2,
  SMT_DISTANCE_FORCE_INT = 0x7fffffff
} smt_distance;

typedef enum smt_policy {
  SMT_POLICY_FIXED = 0,
  SMT_POLICY_LARGE = 1,
  SMT_POLICY_FORCE_INT = 0x7fffffff
} smt_policy;

typedef enum smt_kind {
  SMT_KIND_SERIES = 0,
  SMT_KIND_SET = 1,
  SMT_KIND_FORCE_INT = 0x7fffffff
} smt_kind;

typedef struct smt_dataset smt_dataset;
typedef struct smt_tree smt_tree;
typedef struct smt_result smt_result;

SMT_API const char* smt_version(void);

/* Message for the last failing call on this thread; empty string if none. */
SMT_API const char* smt_last_error(void);

/* ---- datasets ---------------------------------------------------- */

SMT_API smt_status smt_dataset_load(const char* path, smt_dataset** out);
SMT_API smt_status smt_dataset_save(const smt_dataset* ds, const char* path);
SMT_API void smt_dataset_free(smt_dataset* ds);

SMT_API uint64_t smt_dataset_size(const smt_dataset* ds);
SMT_API smt_kind smt_dataset_kind(const smt_dataset* ds);
SMT_API uint32_t smt_dataset_dim(const smt_dataset* ds);
SMT_API smt_status smt_dataset_record_id(const smt_dataset* ds, uint64_t index,
                                         uint64_t* out);
SMT_API const char* smt_dataset_record_label(const smt_dataset* ds,
                                             uint64_t index);

/* Random sample of `query_count` records moves into *queries, the rest
 * into *data; deterministic in `seed`. */
SMT_API smt_status smt_dataset_split(const smt_dataset* ds,
                                     uint64_t query_count, uint64_t seed,
                                     smt_dataset** data, smt_dataset** queries);

/* ---- generators --------------------------------------------------- */

SMT_API smt_status smt_gen_random_sequences(uint64_t count, uint32_t min_len,
                                            uint32_t max_len, uint32_t dim,
                                            double lo, double hi,
                                            uint64_t seed, smt_dataset** out);
SMT_API smt_status smt_gen_random_sets(uint64_t count, uint32_t min_card,
                                       uint32_t max_card, double lo, double hi,
                                       uint64_t seed, smt_dataset** out);
/* types: string over {c,b,f}, one per dimension; pass NULL to draw types
 * uniformly per record over `dim` dimensions. */
SMT_API smt_status smt_gen_cbf(uint64_t count, uint32_t length,
                               const char* types, uint32_t dim,
                               double noise_scale, uint64_t seed,
                               smt_dataset** out);
SMT_API smt_status smt_gen_ram(uint32_t classes, uint32_t reps,
                               uint32_t length, uint32_t dim, double radius,
                               double distortion, int include_base,
                               uint64_t seed, smt_dataset** out);
SMT_API smt_status smt_dataset_crop(const smt_dataset* ds, uint32_t min_len,
                                    uint32_t max_len, uint64_t seed,
                                    smt_dataset** out);

/* ---- index -------------------------------------------------------- */

SMT_API smt_status smt_tree_create(smt_distance distance, smt_policy policy,
                                   uint32_t capacity, smt_tree** out);
SMT_API void smt_tree_free(smt_tree* tree);

SMT_API smt_status smt_tree_insert(smt_tree* tree, const smt_dataset* ds,
                                   uint64_t index);
SMT_API smt_status smt_tree_insert_all(smt_tree* tree, const smt_dataset* ds);

SMT_API smt_status smt_tree_range_query(const smt_tree* tree,
                                        const smt_dataset* queries,
                                        uint64_t index, double radius,
                                        smt_result** out);
SMT_API smt_status smt_tree_knn_query(const smt_tree* tree,
                                      const smt_dataset* queries,
                                      uint64_t index, uint32_t k,
                                      smt_result** out);

/* SMT_OK and a report with ok=true when every structural invariant holds;
 * SMT_ERR_VERIFY (report still written) otherwise. */
SMT_API smt_status smt_tree_validate(const smt_tree* tree, char** report_json);
SMT_API smt_status smt_tree_stats(const smt_tree* tree, char** stats_json);
SMT_API uint64_t smt_tree_build_distance_evals(const smt_tree* tree);
SMT_API uint64_t smt_tree_query_distance_evals(const smt_tree* tree);

/* ---- linear-scan baseline ----------------------------------------- */

SMT_API smt_status smt_scan_range(const smt_dataset* data,
                                  smt_distance distance,
                                  const smt_dataset* queries, uint64_t index,
                                  double radius, int use_lower_bounds,
                                  smt_result** out);
SMT_API smt_status smt_scan_knn(const smt_dataset* data, smt_distance distance,
                                const smt_dataset* queries, uint64_t index,
                                uint32_t k, smt_result** out);

/* ---- query results ------------------------------------------------ */

SMT_API uint64_t smt_result_size(const smt_result* result);
SMT_API smt_status smt_result_get(const smt_result* result, uint64_t i,
                                  uint64_t* id, double* distance);
/* Full distance evaluations performed while answering this query. */
SMT_API uint64_t smt_result_distance_evals(const smt_result* result);
SMT_API void smt_result_free(smt_result* result);

/* ---- verification helpers ----------------------------------------- */

/* Chain-triangle spot check over random record triples; SMT_ERR_VERIFY on
 * any violation, report written either way. */
SMT_API smt_status smt_check_axioms(const smt_dataset* ds,
                                    smt_distance distance, uint64_t triples,
                                    uint64_t seed, char** report_json);

SMT_API void smt_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SUPERMTREE_C_H */

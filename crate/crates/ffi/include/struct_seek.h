#ifndef STRUCT_SEEK_H
#define STRUCT_SEEK_H

/* Generated by cbindgen from struct-seek-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Retrieval model selector.
 */
typedef enum {
  SSK_MODEL_DSRM = 0,
  SSK_MODEL_DICE = 1,
  SSK_MODEL_VSM = 2,
} SskModel;

/**
 * Call outcome. `Ok` is zero; everything else is an error.
 */
typedef enum {
  SSK_STATUS_OK = 0,
  SSK_STATUS_NULL_ARGUMENT = 1,
  SSK_STATUS_INVALID_UTF8 = 2,
  SSK_STATUS_IO_ERROR = 3,
  SSK_STATUS_FORMAT_ERROR = 4,
  SSK_STATUS_QUERY_SYNTAX_ERROR = 5,
  SSK_STATUS_UNKNOWN_MODEL = 6,
  SSK_STATUS_INDEX_OUT_OF_RANGE = 7,
  SSK_STATUS_EMPTY_STORE = 8,
} SskStatus;

/**
 * Opaque result-set handle.
 */
typedef struct SskResults SskResults;

/**
 * Opaque corpus handle.
 */
typedef struct SskStore SskStore;

/**
 * One ranked row. `has_counts` is false for the vector space model, whose
 * rows carry no exact/partial match counts.
 */
typedef struct {
  uint64_t rank;
  double similarity;
  bool has_counts;
  uint64_t exact;
  uint64_t partial;
  uint32_t code_lines;
} SskRow;

/**
 * Retrieved-method counts and improvement percentages for one query.
 * Each optional value pairs with a `has_` flag.
 */
typedef struct {
  uint64_t n_dsrm;
  uint64_t n_dice;
  uint64_t n_vsm;
  bool has_improvement_vs_dice;
  double improvement_vs_dice;
  bool has_improvement_vs_vsm;
  double improvement_vs_vsm;
  bool has_boundary_cosine;
  double boundary_cosine;
} SskComparison;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ssk_version(void);

/**
 * Description of the last error on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *ssk_last_error_message(void);

/**
 * Extracts every `.java` file under `src_dir` into a new in-memory store.
 *
 * # Safety
 * `src_dir` must be a valid NUL-terminated path and `out` a valid pointer.
 */
SskStatus ssk_store_extract(const char *src_dir, SskStore **out);

/**
 * Loads a structures file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated path and `out` a valid pointer.
 */
SskStatus ssk_store_load(const char *path, SskStore **out);

/**
 * Writes the store to a structures file.
 *
 * # Safety
 * `store` must be a live handle from this library; `path` a valid string.
 */
SskStatus ssk_store_save(const SskStore *store, const char *path);

/**
 * Number of methods in the store; 0 for a null handle.
 *
 * # Safety
 * `store` must be null or a live handle from this library.
 */
uintptr_t ssk_store_method_count(const SskStore *store);

/**
 * Releases a store handle. Null is ignored.
 *
 * # Safety
 * `store` must be null or an unreleased handle from this library.
 */
void ssk_store_free(SskStore *store);

/**
 * Ranks the store against a query ("if{ -> addParameter -> }" syntax) and
 * returns a result-set handle.
 *
 * # Safety
 * `store` must be a live handle, `query` a valid string, `out` a valid
 * pointer.
 */
SskStatus ssk_rank(const SskStore *store,
                   SskModel model,
                   const char *query,
                   uintptr_t top_k,
                   double min_sim,
                   SskResults **out);

/**
 * Number of rows in a result set; 0 for a null handle.
 *
 * # Safety
 * `results` must be null or a live handle from this library.
 */
uintptr_t ssk_results_len(const SskResults *results);

/**
 * Copies the numeric fields of one row.
 *
 * # Safety
 * `results` must be a live handle and `out` a valid pointer.
 */
SskStatus ssk_results_row(const SskResults *results, uintptr_t index, SskRow *out);

/**
 * Method id of one row. Borrowed: valid until the result set is freed.
 * Null when the handle is null or the index is out of range.
 *
 * # Safety
 * `results` must be null or a live handle from this library.
 */
const char *ssk_results_method_id(const SskResults *results, uintptr_t index);

/**
 * Releases a result-set handle. Null is ignored.
 *
 * # Safety
 * `results` must be null or an unreleased handle from this library.
 */
void ssk_results_free(SskResults *results);

/**
 * Retrieved-method counts and improvements for one query.
 *
 * # Safety
 * `store` must be a live handle, `query` a valid string, `out` a valid
 * pointer.
 */
SskStatus ssk_compare(const SskStore *store, const char *query, SskComparison *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* STRUCT_SEEK_H */

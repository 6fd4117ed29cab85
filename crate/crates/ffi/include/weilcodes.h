#ifndef WEILCODES_H
#define WEILCODES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WcBentFamily {
  WC_BENT_FAMILY_SQUARE = 0,
  WC_BENT_FAMILY_ALPHA_KASAMI = 1,
  WC_BENT_FAMILY_KASAMI = 2,
  WC_BENT_FAMILY_COULTER = 3,
} WcBentFamily;

typedef enum WcMethod {
  WC_METHOD_DIRECT = 0,
  WC_METHOD_CLOSED = 1,
  WC_METHOD_AGGREGATE = 2,
  WC_METHOD_BOTH = 3,
} WcMethod;

// Status codes returned by every fallible function.
typedef enum WcStatus {
  WC_STATUS_OK = 0,
  WC_STATUS_NULL_POINTER = 1,
  WC_STATUS_INVALID_PARAMS = 2,
  WC_STATUS_INFEASIBLE = 3,
  WC_STATUS_DISAGREEMENT = 4,
  WC_STATUS_NOT_BENT = 5,
  WC_STATUS_OUT_OF_RANGE = 6,
  WC_STATUS_INTERNAL = 7,
} WcStatus;

typedef struct WcCode WcCode;

typedef struct WcDistribution WcDistribution;

typedef struct WcField WcField;

// Field parameters copied out of a [`WcField`].
typedef struct WcFieldParams {
  uint64_t p;
  uint64_t ell;
  uint32_t k;
  uint64_t e;
  uint64_t q;
  uint64_t exp_n;
} WcFieldParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL terminated,
// truncated to `len`). Returns the full message length in bytes.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t wc_last_error(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *wc_version(void);

// Checks `(p, ell, k)` without building the field.
//
// # Safety
// `out` must be null or point to writable memory.
enum WcStatus wc_validate_params(uint64_t p, uint64_t ell, uint32_t k, struct WcFieldParams *out);

// Builds `F_{p^e}`. `ceiling` bounds `q`; pass 0 for the library default.
//
// # Safety
// `out` must point to writable memory.
enum WcStatus wc_field_new(uint64_t p,
                           uint64_t ell,
                           uint32_t k,
                           uint64_t ceiling,
                           struct WcField **out);

// # Safety
// `field` must be null or a handle from [`wc_field_new`] not yet freed.
void wc_field_free(struct WcField *field);

// # Safety
// `field` must be a live handle and `out` writable.
enum WcStatus wc_field_params(const struct WcField *field, struct WcFieldParams *out);

// Creates the code `D_u`.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum WcStatus wc_code_du(const struct WcField *field, uint64_t u, struct WcCode **out);

// Creates the code `D'` for a bent family. `i` is ignored for `Square`.
//
// # Safety
// `field` must be a live handle and `out` writable.
enum WcStatus wc_code_dprime(const struct WcField *field,
                             enum WcBentFamily family,
                             uint32_t i,
                             struct WcCode **out);

// # Safety
// `code` must be null or a handle not yet freed.
void wc_code_free(struct WcCode *code);

// Code length from the closed form.
//
// # Safety
// `code` must be a live handle and `out` writable.
enum WcStatus wc_code_length(const struct WcCode *code, uint64_t *out);

// Sign of the bent function behind a `D'` code; 0 for `D_u`.
//
// # Safety
// `code` must be a live handle and `out` writable.
enum WcStatus wc_code_epsilon(const struct WcCode *code, int8_t *out);

// Computes the weight distribution. Zero limits select the library defaults.
//
// # Safety
// `code` must be a live handle and `out` writable.
enum WcStatus wc_distribution(const struct WcCode *code,
                              enum WcMethod method,
                              uint64_t pair_ceiling,
                              uint64_t direct_budget,
                              struct WcDistribution **out);

// Distribution predicted by the closed-form tables.
//
// # Safety
// `code` must be a live handle and `out` writable.
enum WcStatus wc_predict(const struct WcCode *code, struct WcDistribution **out);

// # Safety
// `dist` must be null or a handle not yet freed.
void wc_distribution_free(struct WcDistribution *dist);

// Number of distinct weights, the zero weight included.
//
// # Safety
// `dist` must be a live handle.
size_t wc_distribution_len(const struct WcDistribution *dist);

// Weight and frequency at `index`, in increasing weight order.
//
// # Safety
// `dist` must be a live handle; outputs must be writable.
enum WcStatus wc_distribution_get(const struct WcDistribution *dist,
                                  size_t index,
                                  uint64_t *weight,
                                  uint64_t *frequency);

// Length, dimension and minimum distance.
//
// # Safety
// `dist` must be a live handle; outputs must be writable.
enum WcStatus wc_distribution_summary(const struct WcDistribution *dist,
                                      uint64_t *n,
                                      uint32_t *dim,
                                      uint64_t *d_min);

// Griesmer bound `sum_{i<k} ceil(d/p^i)`; `meets` is set when it equals `n`.
//
// # Safety
// Outputs must be writable.
enum WcStatus wc_griesmer(uint64_t n,
                          uint32_t k,
                          uint64_t d,
                          uint64_t p,
                          uint64_t *bound,
                          bool *meets);

// Compares direct and closed-form weights on `samples` random codewords.
// Writes the number of mismatches; the status is `Ok` even when it is nonzero.
//
// # Safety
// `code` must be a live handle and `mismatches` writable.
enum WcStatus wc_sample_check(const struct WcCode *code,
                              uint64_t samples,
                              uint64_t seed,
                              uint64_t pair_ceiling,
                              uint64_t *mismatches);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEILCODES_H */

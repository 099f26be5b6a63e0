#ifndef MEMFFT_H
#define MEMFFT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

enum MemfftStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  MEMFFT_STATUS_OK = 0,
  MEMFFT_STATUS_NULL_POINTER = 1,
  MEMFFT_STATUS_INVALID_ARGUMENT = 2,
  MEMFFT_STATUS_LENGTH_MISMATCH = 3,
  MEMFFT_STATUS_VALIDATION = 4,
  MEMFFT_STATUS_INTERNAL = 5,
  MEMFFT_STATUS_PANIC = 6,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum MemfftStatus MemfftStatus;
#else
typedef int32_t MemfftStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Factorization of one transform length into passes.
 */
typedef struct MemfftPlan MemfftPlan;

/**
 * Twiddle lookup table.
 */
typedef struct MemfftTable MemfftTable;

typedef struct MemfftComplex {
  double re;
  double im;
} MemfftComplex;

typedef struct MemfftStats {
  uint64_t slow_elem_reads;
  uint64_t slow_elem_writes;
  uint64_t slow_transactions;
  uint64_t fast_accesses;
  uint64_t bank_conflict_cycles;
  uint64_t barriers;
  uint64_t twiddle_fetches;
} MemfftStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *memfft_version(void);

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next `memfft_*` call on the same thread.
 */
const char *memfft_last_error_message(void);

/**
 * Builds a twiddle table of `resolution` entries (a power of two that every
 * transform length used with it must divide).
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
MemfftStatus memfft_table_new(size_t resolution, struct MemfftTable **out);

/**
 * # Safety
 * `table` must be null or come from [`memfft_table_new`] and not be used afterwards.
 */
void memfft_table_free(struct MemfftTable *table);

/**
 * Plans an `n`-point transform with the fewest passes whose tiles hold at
 * most `tile_capacity` elements, under the default machine model.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
MemfftStatus memfft_plan_new(size_t n, size_t tile_capacity, bool padded, struct MemfftPlan **out);

/**
 * # Safety
 * `plan` must be null or come from [`memfft_plan_new`] and not be used afterwards.
 */
void memfft_plan_free(struct MemfftPlan *plan);

/**
 * # Safety
 * `plan` must be a live handle; `out` must be valid for writes.
 */
MemfftStatus memfft_plan_pass_count(const struct MemfftPlan *plan, size_t *out);

/**
 * Length of the sub-transform of pass `index` (0-based).
 *
 * # Safety
 * `plan` must be a live handle; `out` must be valid for writes.
 */
MemfftStatus memfft_plan_factor(const struct MemfftPlan *plan, size_t index, size_t *out);

/**
 * Forward tiled FFT of `len` samples. When `stats` is non-null the run is
 * traced and its counters are written there.
 *
 * # Safety
 * `input` and `output` must hold `len` samples; handles must be live;
 * `stats` must be null or valid for writes.
 */
MemfftStatus memfft_fft_tiled(const struct MemfftPlan *plan,
                              const struct MemfftTable *table,
                              const struct MemfftComplex *input,
                              struct MemfftComplex *output,
                              size_t len,
                              struct MemfftStats *stats);

/**
 * Inverse tiled FFT, scaled by `1/len`.
 *
 * # Safety
 * As for [`memfft_fft_tiled`].
 */
MemfftStatus memfft_ifft_tiled(const struct MemfftPlan *plan,
                               const struct MemfftTable *table,
                               const struct MemfftComplex *input,
                               struct MemfftComplex *output,
                               size_t len);

/**
 * Forward level-wise radix-2 FFT; `stats` as in [`memfft_fft_tiled`].
 *
 * # Safety
 * As for [`memfft_fft_tiled`].
 */
MemfftStatus memfft_fft_levelwise(const struct MemfftTable *table,
                                  const struct MemfftComplex *input,
                                  struct MemfftComplex *output,
                                  size_t len,
                                  struct MemfftStats *stats);

/**
 * Direct O(N²) DFT of any length.
 *
 * # Safety
 * `input` and `output` must hold `len` samples.
 */
MemfftStatus memfft_dft_reference(const struct MemfftComplex *input,
                                  struct MemfftComplex *output,
                                  size_t len);

/**
 * Analytic counters of the level-wise FFT under the default machine model.
 *
 * # Safety
 * `out` must be valid for writes.
 */
MemfftStatus memfft_account_levelwise(size_t n, struct MemfftStats *out);

/**
 * Analytic counters of the tiled FFT for `plan`.
 *
 * # Safety
 * `plan` must be a live handle; `out` must be valid for writes.
 */
MemfftStatus memfft_account_tiled(const struct MemfftPlan *plan, struct MemfftStats *out);

/**
 * `log2 N / p` for the plan's length `N`.
 *
 * # Safety
 * `plan` must be a live handle; `out` must be valid for writes.
 */
MemfftStatus memfft_reduction_ratio(const struct MemfftPlan *plan, double *out);

/**
 * Slow-memory transactions of one warp access under the default model.
 *
 * # Safety
 * `addrs` must hold `len` element addresses; `out` must be valid for writes.
 */
MemfftStatus memfft_coalesced_transactions(const size_t *addrs, size_t len, uint64_t *out);

/**
 * Bank-conflict degree of one half-warp access under the default model.
 *
 * # Safety
 * `addrs` must hold `len` word addresses; `out` must be valid for writes.
 */
MemfftStatus memfft_bank_conflict_degree(const size_t *addrs, size_t len, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MEMFFT_H */

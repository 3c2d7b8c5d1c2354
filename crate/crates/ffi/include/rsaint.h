#ifndef RSAINT_H
#define RSAINT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

// Result codes shared by every function.
typedef enum RsaintStatus {
  RSAINT_STATUS_OK = 0,
  RSAINT_STATUS_NULL_POINTER = 1,
  RSAINT_STATUS_INVALID_UTF8 = 2,
  RSAINT_STATUS_DOMAIN = 3,
  RSAINT_STATUS_RANGE = 4,
  RSAINT_STATUS_RESOURCE = 5,
  RSAINT_STATUS_CONTRACT = 6,
  RSAINT_STATUS_VALIDATION = 7,
  RSAINT_STATUS_PARSE = 8,
  RSAINT_STATUS_OVERFLOW = 9,
  RSAINT_STATUS_PANIC = 10,
} RsaintStatus;

// Opaque quadratic character.
typedef struct RsaintCharacter RsaintCharacter;

// Opaque table of primes up to a limit.
typedef struct RsaintPrimeTable RsaintPrimeTable;

// The three prime sums and their combination `π₂(x; r)`.
typedef struct RsaintCountBreakdown {
  uint64_t sum_mid;
  uint64_t sum_small;
  uint64_t sum_sub;
  uint64_t total;
} RsaintCountBreakdown;

// Pair counts by `(χ(p), χ(q))`; index 0 is `+1`, index 1 is `−1`.
typedef struct RsaintClassifiedCount {
  uint64_t by_sign[2][2];
  uint64_t coprime_total;
  uint64_t raw_total;
} RsaintClassifiedCount;

// `L_χ(s)` split into its head and tail.
typedef struct RsaintBiasCoefficient {
  double head;
  double tail;
  double value;
  double error_bound;
} RsaintBiasCoefficient;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Valid until the next failing call on the same thread.
const char *rsaint_last_error(void);

// Library version as a static NUL-terminated string.
const char *rsaint_version(void);

// Parses `kronecker:D` or `table:Q:v0,v1,...`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a valid pointer.
enum RsaintStatus rsaint_character_new(const char *spec, struct RsaintCharacter **out);

// # Safety
// `chi` must come from [`rsaint_character_new`] and not be used afterwards. Null is ignored.
void rsaint_character_free(struct RsaintCharacter *chi);

// Modulus of the character, or 0 for a null handle.
//
// # Safety
// `chi` must be null or a live handle.
uint64_t rsaint_character_modulus(const struct RsaintCharacter *chi);

// `χ(n)`, or 0 for a null handle.
//
// # Safety
// `chi` must be null or a live handle.
int8_t rsaint_character_value(const struct RsaintCharacter *chi, uint64_t n);

// # Safety
// `out` must be a valid pointer.
enum RsaintStatus rsaint_prime_table_new(uint64_t limit, struct RsaintPrimeTable **out);

// # Safety
// `table` must come from [`rsaint_prime_table_new`] and not be used afterwards. Null is ignored.
void rsaint_prime_table_free(struct RsaintPrimeTable *table);

// Number of primes in the table, or 0 for a null handle.
//
// # Safety
// `table` must be null or a live handle.
uint64_t rsaint_prime_table_len(const struct RsaintPrimeTable *table);

// `π(n)` for `n` up to the table limit.
//
// # Safety
// `table` must be a live handle and `out` a valid pointer.
enum RsaintStatus rsaint_prime_table_pi(const struct RsaintPrimeTable *table,
                                        uint64_t n,
                                        uint64_t *out);

// `π₂(x; r)` with `r = r_num / r_den`.
//
// # Safety
// `out` must be a valid pointer.
enum RsaintStatus rsaint_count(uint64_t x,
                               uint64_t r_num,
                               uint64_t r_den,
                               struct RsaintCountBreakdown *out);

// `π₂(x)`.
//
// # Safety
// `out` must be a valid pointer.
enum RsaintStatus rsaint_pi2(uint64_t x, uint64_t *out);

// # Safety
// `chi` must be a live handle and `out` a valid pointer.
enum RsaintStatus rsaint_count_classified(uint64_t x,
                                          uint64_t r_num,
                                          uint64_t r_den,
                                          const struct RsaintCharacter *chi,
                                          struct RsaintClassifiedCount *out);

// `L_χ(s)` with `s = s_num / s_den ≥ 4`.
//
// # Safety
// `chi` must be a live handle and `out` a valid pointer.
enum RsaintStatus rsaint_l_chi_s(const struct RsaintCharacter *chi,
                                 uint64_t s_num,
                                 uint64_t s_den,
                                 struct RsaintBiasCoefficient *out);

// Main term of a named model at `(x, r_num / r_den)`.
//
// `out_in_range` (may be null) receives whether `(x, r)` satisfies the model's
// hypotheses. With `strict` set, a violation fails with `Range` instead.
//
// # Safety
// `model` must be a NUL-terminated string, `out_value` a valid pointer, `out_in_range` null or valid.
enum RsaintStatus rsaint_main_term(const char *model,
                                   double x,
                                   uint64_t r_num,
                                   uint64_t r_den,
                                   bool strict,
                                   double *out_value,
                                   bool *out_in_range);

// `loglog(xr) − loglog(x/r)` for `1 ≤ r ≤ x/4`.
//
// # Safety
// `out` must be a valid pointer.
enum RsaintStatus rsaint_loglog_diff(double x, double r, double *out);

// `Li(x) = ∫_2^x du / log u` with the default tolerances.
//
// # Safety
// `out` must be a valid pointer.
enum RsaintStatus rsaint_li(double x, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSAINT_H */

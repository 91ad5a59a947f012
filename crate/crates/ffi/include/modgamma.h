#ifndef MODGAMMA_H
#define MODGAMMA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MgStatus {
  MG_STATUS_OK = 0,
  MG_STATUS_NULL_POINTER = 1,
  /**
   * `l` not prime, `q` not a prime power, or `l = p`.
   */
  MG_STATUS_INVALID_INSTANCE = 2,
  MG_STATUS_OUT_OF_RANGE = 3,
  MG_STATUS_BUFFER_TOO_SMALL = 4,
  MG_STATUS_INTERNAL = 5,
} MgStatus;

/**
 * Opaque instance handle.
 */
typedef struct MgInstance MgInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the instance for `(ell, q)`; `alternate` selects the alternate
 * generator choices. Release with `mg_instance_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MgStatus mg_instance_new(uint64_t ell, uint64_t q, bool alternate, struct MgInstance **out);

/**
 * # Safety
 * `h` must come from `mg_instance_new` and not be used afterwards. Null is ignored.
 */
void mg_instance_free(struct MgInstance *h);

/**
 * Degree of the coefficient field over `F_l`, the `l'`-part `m'` of
 * `q^2 - 1`, the `l'`-part `n'` of `q - 1` and `l^a`, the `l`-part of `q - 1`.
 *
 * # Safety
 * `h` must be a live handle; output pointers may be null to skip.
 */
enum MgStatus mg_instance_shape(const struct MgInstance *h,
                                uintptr_t *degree,
                                uint64_t *m_prime,
                                uint64_t *n_prime,
                                uint64_t *ell_part);

/**
 * Gauss-sum gamma factor of `nu_i x omega_j` into `out[0..degree]`.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for `len` writes.
 */
enum MgStatus mg_gamma(const struct MgInstance *h,
                       uint64_t i,
                       uint64_t j,
                       uint32_t *out,
                       uintptr_t len);

/**
 * `gamma~` in `R(omega) = k[u]/u^{l^a}` from the norm-fibre Bessel
 * function: `l^a` coefficients of `u^0, u^1, ...`, each `degree` long, into
 * `out[0..l^a * degree]`.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for `len` writes.
 */
enum MgStatus mg_gamma_tilde(const struct MgInstance *h,
                             uint64_t i,
                             uint64_t j,
                             uint32_t *out,
                             uintptr_t len);

/**
 * `l`-regular gamma factor from the norm-fibre Bessel function into
 * `out[0..degree]`.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for `len` writes.
 */
enum MgStatus mg_gamma_ell_regular(const struct MgInstance *h,
                                   uint64_t i,
                                   uint64_t j,
                                   uint32_t *out,
                                   uintptr_t len);

/**
 * Number of duplicate row pairs in the gamma table of `(ell, q)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MgStatus mg_search_duplicates(uint64_t ell, uint64_t q, uintptr_t *out);

/**
 * The versioned JSON table for the instance. Release with `mg_string_free`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum MgStatus mg_table_json(const struct MgInstance *h, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void mg_string_free(char *s);

/**
 * Static description of a status code.
 */
const char *mg_status_message(enum MgStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODGAMMA_H */

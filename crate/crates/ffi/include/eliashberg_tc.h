#ifndef ELIASHBERG_TC_H
#define ELIASHBERG_TC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EtcStatus {
  ETC_STATUS_OK = 0,
  ETC_STATUS_NULL_POINTER = 1,
  ETC_STATUS_VALIDATION = 2,
  ETC_STATUS_NUMERICAL = 3,
  ETC_STATUS_IO = 4,
  ETC_STATUS_PANIC = 5,
} EtcStatus;

/**
 * Status of one inverted temperature.
 */
typedef enum EtcTcStatus {
  ETC_TC_STATUS_PROVEN = 0,
  ETC_TC_STATUS_HEURISTIC = 1,
  ETC_TC_STATUS_UNDEFINED = 2,
} EtcTcStatus;

/**
 * A validated spectral measure.
 */
typedef struct EtcMeasure EtcMeasure;

/**
 * A T_c report: ladder, brackets and converged estimate.
 */
typedef struct EtcReport EtcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *etc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *etc_version(void);

/**
 * Parses a measure from the JSON measure-file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EtcStatus etc_measure_from_json(const char *json, struct EtcMeasure **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EtcStatus etc_measure_from_file(const char *path, struct EtcMeasure **out);

/**
 * A single atom at `omega`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EtcStatus etc_measure_einstein(double omega, struct EtcMeasure **out);

/**
 * Atoms `(weights[i], omegas[i])`, `i < len`.
 *
 * # Safety
 * `weights` and `omegas` must point to `len` doubles and `out` must be valid.
 */
enum EtcStatus etc_measure_discrete(const double *weights,
                                    const double *omegas,
                                    size_t len,
                                    struct EtcMeasure **out);

/**
 * # Safety
 * `m` must come from an `etc_measure_*` constructor and not be used afterwards. Null is ignored.
 */
void etc_measure_free(struct EtcMeasure *m);

/**
 * Upper edge Ω̄ of the support, or NaN for a null handle.
 *
 * # Safety
 * `m` must be null or a live measure handle.
 */
double etc_measure_omega_bar(const struct EtcMeasure *m);

/**
 * ⟨ω^k⟩, or NaN for a null handle.
 *
 * # Safety
 * `m` must be null or a live measure handle.
 */
double etc_measure_moment(const struct EtcMeasure *m, uint32_t k);

/**
 * 𝔨^(N)(P, T) by the dense eigensolver: a lower bound on 𝔨.
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_k_numeric(const struct EtcMeasure *m, double t, size_t n, double *out);

/**
 * 𝔨^(N)(P, T) for N = 1..4 from the explicit root formulas.
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_k_closed_form(const struct EtcMeasure *m, double t, size_t n, double *out);

/**
 * 𝔨*(P, T), an upper bound on 𝔨.
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_k_star(const struct EtcMeasure *m, double t, double *out);

/**
 * 𝔨♯(P, T) ≥ 𝔨*(P, T).
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_k_sharp(const struct EtcMeasure *m, double t, double *out);

/**
 * T_c^(N): writes NaN and `ETC_TC_STATUS_UNDEFINED` when λ ≤ λ_N.
 *
 * # Safety
 * `m` must be a live measure handle; `value` and `status` valid pointers.
 */
enum EtcStatus etc_tc_n(const struct EtcMeasure *m,
                        double lambda,
                        size_t n,
                        double *value,
                        enum EtcTcStatus *status);

/**
 * T_c♭, a proven lower bound; NaN when λ ≤ Ω̄²/⟨ω²⟩.
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_tc_flat(const struct EtcMeasure *m, double lambda, double *out);

/**
 * T_c♯, a proven upper bound.
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_tc_sharp(const struct EtcMeasure *m, double lambda, double *out);

/**
 * T_c~, the conjectured upper bound.
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_tc_tilde(const struct EtcMeasure *m, double lambda, double *out);

/**
 * Runs the T_c ladder until consecutive orders agree to `tol`.
 *
 * # Safety
 * `m` must be a live measure handle and `out` a valid pointer.
 */
enum EtcStatus etc_tc_converged(const struct EtcMeasure *m,
                                double lambda,
                                double tol,
                                struct EtcReport **out);

/**
 * # Safety
 * `r` must come from [`etc_tc_converged`] and not be used afterwards. Null is ignored.
 */
void etc_report_free(struct EtcReport *r);

/**
 * Converged T_c and the order it settled at; NaN and 0 if the ladder did not settle.
 *
 * # Safety
 * `r` must be a live report handle; `value` and `n` valid pointers.
 */
enum EtcStatus etc_report_converged(const struct EtcReport *r, double *value, size_t *n);

/**
 * Number of ladder entries, or 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
size_t etc_report_ladder_len(const struct EtcReport *r);

/**
 * Ladder entry `index`: order, value (NaN if undefined) and status.
 *
 * # Safety
 * `r` must be a live report handle; the outputs valid pointers.
 */
enum EtcStatus etc_report_ladder_entry(const struct EtcReport *r,
                                       size_t index,
                                       size_t *n,
                                       double *value,
                                       enum EtcTcStatus *status);

/**
 * The report as JSON; free with [`etc_string_free`].
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum EtcStatus etc_report_to_json(const struct EtcReport *r, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void etc_string_free(char *s);

/**
 * g^(N)(γ), the top eigenvalue of the γ-model operator.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EtcStatus etc_gamma_top(double gamma, size_t n, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ELIASHBERG_TC_H */

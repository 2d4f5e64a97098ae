#ifndef SPINCORR_H
#define SPINCORR_H

/* Generated by cbindgen from the spincorr-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every FFI call.
 */
typedef enum SpincorrStatus {
  /**
   * Success.
   */
  SpincorrStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  SpincorrStatus_NullPointer = 1,
  /**
   * Arguments outside their documented domain.
   */
  SpincorrStatus_InvalidArgument = 2,
  /**
   * Inputs describe a non-physical density matrix.
   */
  SpincorrStatus_NonPhysical = 3,
  /**
   * A numerical routine failed to converge or hit a degenerate case.
   */
  SpincorrStatus_NumericalFailure = 4,
  /**
   * An internal panic was caught; the output is untouched.
   */
  SpincorrStatus_Panic = 5,
} SpincorrStatus;

/**
 * Opaque sweep result; free with `spincorr_sweep_free`.
 */
typedef struct SpincorrSweep SpincorrSweep;

/**
 * Flat copy of one correlation report (all entropic quantities in bits).
 */
typedef struct SpincorrReport {
  double gxx;
  double gyy;
  double gzz;
  double gz;
  double c1;
  double c2;
  double c3;
  double c4;
  double c5;
  double mutual_info;
  double classical;
  double discord;
  double theta_opt;
  double phi_opt;
} SpincorrReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Correlation report of a bare X-state given its Bloch coefficients.
 */
enum SpincorrStatus spincorr_xstate_report(double c1,
                                           double c2,
                                           double c3,
                                           double c4,
                                           double c5,
                                           struct SpincorrReport *out);

/**
 * Transverse-field Ising chain (free-fermion solution) at field `g`.
 */
enum SpincorrStatus spincorr_tfim_report(double g, uintptr_t sites, struct SpincorrReport *out);

/**
 * XXZ ring (exact diagonalization) at anisotropy `delta`.
 */
enum SpincorrStatus spincorr_xxz_report(double delta, uintptr_t sites, struct SpincorrReport *out);

/**
 * Collective mean-field model at coupling `lambda`; `same_mode` selects a
 * pair within one mode (nonzero) or across two modes (zero).
 */
enum SpincorrStatus spincorr_lmg_report(double lambda,
                                        int32_t same_mode,
                                        struct SpincorrReport *out);

/**
 * Transverse-field Ising sweep over `[from, to]` with `points` grid
 * points. On success `*out` owns the handle.
 */
enum SpincorrStatus spincorr_sweep_tfim(double from,
                                        double to,
                                        uintptr_t points,
                                        uintptr_t sites,
                                        struct SpincorrSweep **out);

/**
 * Number of rows in a sweep, or 0 for a null handle.
 */
uintptr_t spincorr_sweep_len(const struct SpincorrSweep *handle);

/**
 * Copy row `index` out of the sweep.
 */
enum SpincorrStatus spincorr_sweep_row(const struct SpincorrSweep *handle,
                                       uintptr_t index,
                                       double *param,
                                       struct SpincorrReport *out);

/**
 * Release a sweep handle. Null is a no-op.
 */
void spincorr_sweep_free(struct SpincorrSweep *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINCORR_H */

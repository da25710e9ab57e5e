#ifndef SPINCHAIN_H
#define SPINCHAIN_H

/* Generated by cbindgen from spinchain-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum SpinchainStatus {
  SpinchainStatus_Ok = 0,
  SpinchainStatus_InvalidArgument = 1,
  SpinchainStatus_InvalidSpec = 2,
  SpinchainStatus_NumericalFailure = 3,
  SpinchainStatus_ParseError = 4,
} SpinchainStatus;

/**
 * Opaque chain-spec handle.
 */
typedef struct SpinchainSpec SpinchainSpec;

/**
 * Located fidelity peak.
 */
typedef struct SpinchainPeak {
  double t_star;
  double f_star;
  double fidelity_star;
} SpinchainPeak;

/**
 * Gate extraction result for the three-spin chain or a star network.
 */
typedef struct SpinchainGateReport {
  double leakage;
  double decomposition_residual;
  /**
   * Row-major 4x4 effective gate, interleaved re/im pairs (32 doubles).
   */
  double effective_gate[32];
} SpinchainGateReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a homogeneous linear chain spec. `model` is 0 for XY, 1 for
 * Heisenberg. Returns null on failure.
 */
struct SpinchainSpec *spinchain_spec_new_homogeneous(uintptr_t n_spins,
                                                     uint32_t model,
                                                     double omega);

/**
 * Create a chain spec from a JSON document (same schema as the CLI's
 * --spec files). Returns null on failure.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct SpinchainSpec *spinchain_spec_from_json(const char *json);

/**
 * Set per-site sigma_z field strengths (length must equal n_spins).
 *
 * # Safety
 * `spec` must be a live handle from this library; `fields` must point to
 * `len` doubles.
 */
enum SpinchainStatus spinchain_spec_set_fields(struct SpinchainSpec *spec,
                                               const double *fields,
                                               uintptr_t len);

/**
 * # Safety
 * `spec` must be a handle from this library or null; double frees are
 * undefined.
 */
void spinchain_spec_free(struct SpinchainSpec *spec);

/**
 * Transfer amplitude f(t) = |<10..0| exp(-iHt) |0..01>|.
 *
 * # Safety
 * `spec` must be a live handle; `out_f` must be a valid pointer.
 */
enum SpinchainStatus spinchain_transfer_amplitude(const struct SpinchainSpec *spec,
                                                  double t,
                                                  double *out_f);

/**
 * Input-averaged fidelity F = f/3 + f^2/6 + 1/2.
 */
double spinchain_average_fidelity(double f);

/**
 * Sample f(t) on a uniform grid of `samples` points over [t_min, t_max];
 * `out_f` must hold `samples` doubles.
 *
 * # Safety
 * `spec` must be a live handle; `out_f` must point to `samples` doubles.
 */
enum SpinchainStatus spinchain_scan(const struct SpinchainSpec *spec,
                                    double t_min,
                                    double t_max,
                                    uintptr_t samples,
                                    double *out_f);

/**
 * Scan and refine the best fidelity peak in [t_min, t_max].
 *
 * # Safety
 * `spec` must be a live handle; `out` must be a valid pointer.
 */
enum SpinchainStatus spinchain_find_peak(const struct SpinchainSpec *spec,
                                         double t_min,
                                         double t_max,
                                         uintptr_t samples,
                                         double refine_tol,
                                         struct SpinchainPeak *out);

/**
 * The three-spin gate time tau = pi/(sqrt(2) omega).
 */
double spinchain_tau(double omega);

/**
 * Extract the effective end-spin gate of a star network with the given
 * branch couplings at t = pi/(sqrt(2) omega_collective).
 *
 * # Safety
 * `branches` must point to `n_branches` doubles; `out` must be valid.
 */
enum SpinchainStatus spinchain_network_gate(const double *branches,
                                            uintptr_t n_branches,
                                            struct SpinchainGateReport *out);

/**
 * Engineered half-time entanglement design for an N-spin chain.
 *
 * `out_couplings` must hold n_spins - 1 doubles and `out_fields` n_spins
 * doubles; `out_time` receives the predicted rotation time.
 *
 * # Safety
 * Output pointers must be valid for the stated lengths.
 */
enum SpinchainStatus spinchain_design_half_time(uintptr_t n_spins,
                                                double lambda,
                                                double *out_couplings,
                                                double *out_fields,
                                                double *out_time);

/**
 * Verify an engineered design: the achieved end-pair amplitude at the
 * predicted time.
 *
 * # Safety
 * `out_amplitude` must be a valid pointer.
 */
enum SpinchainStatus spinchain_design_verify(uintptr_t n_spins,
                                             double lambda,
                                             double *out_amplitude);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINCHAIN_H */

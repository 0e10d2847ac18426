#ifndef DMCHAIN_H
#define DMCHAIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define DM_VARIANT_DZ 0

#define DM_VARIANT_DX 1

#define DM_FAMILY_ANTIPARALLEL 0

#define DM_FAMILY_PARALLEL 1

typedef enum DmStatus {
  DM_STATUS_OK = 0,
  DM_STATUS_NULL_POINTER = 1,
  /**
   * Bad parameter, config or recipe name. Matches CLI exit code 1.
   */
  DM_STATUS_INVALID = 2,
  /**
   * A numerical invariant failed. Matches CLI exit code 2.
   */
  DM_STATUS_NUMERICAL = 3,
  DM_STATUS_IO = 4,
  DM_STATUS_PANIC = 5,
} DmStatus;

typedef struct DmDensity DmDensity;

/**
 * Model parameters with their cached eigendecomposition.
 */
typedef struct DmModel DmModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *dm_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dm_version(void);

/**
 * Builds a model and diagonalizes its Hamiltonian.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum DmStatus dm_model_new(uint32_t variant_code,
                           double j,
                           double gamma,
                           double jz,
                           double d,
                           struct DmModel **out);

/**
 * # Safety
 * `model` must come from [`dm_model_new`] and not be freed twice. Null is ignored.
 */
void dm_model_free(struct DmModel *model);

/**
 * Ascending energies, written to `out[0..4]`.
 *
 * # Safety
 * `model` must be a live handle; `out` must hold 4 doubles.
 */
enum DmStatus dm_model_energies(const struct DmModel *model, double *out);

/**
 * Row-major Hamiltonian, real and imaginary parts into two 16-double buffers.
 *
 * # Safety
 * `model` must be a live handle; `re` and `im` must hold 16 doubles each.
 */
enum DmStatus dm_model_hamiltonian(const struct DmModel *model, double *re, double *im);

/**
 * `cos(alpha)|01> + sin(alpha)|10>` or `cos(alpha)|00> + sin(alpha)|11>` as a density matrix.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum DmStatus dm_initial_state(uint32_t family_code, double alpha, struct DmDensity **out);

/**
 * Validates a row-major matrix as a density operator.
 *
 * # Safety
 * `re` and `im` must hold 16 doubles each; `out` must be valid for a pointer write.
 */
enum DmStatus dm_density_from_entries(const double *re, const double *im, struct DmDensity **out);

/**
 * # Safety
 * `rho` must be a live handle; `re` and `im` must hold 16 doubles each.
 */
enum DmStatus dm_density_entries(const struct DmDensity *rho, double *re, double *im);

/**
 * # Safety
 * `rho` must come from this library and not be freed twice. Null is ignored.
 */
void dm_density_free(struct DmDensity *rho);

/**
 * State at time `t` under decoherence rate `gamma`.
 *
 * # Safety
 * `model` and `rho0` must be live handles; `out` must be valid for a pointer write.
 */
enum DmStatus dm_evolve(const struct DmModel *model,
                        const struct DmDensity *rho0,
                        double gamma,
                        double t,
                        struct DmDensity **out);

/**
 * Long-time limit for any positive decoherence rate.
 *
 * # Safety
 * `model` and `rho0` must be live handles; `out` must be valid for a pointer write.
 */
enum DmStatus dm_asymptotic_state(const struct DmModel *model,
                                  const struct DmDensity *rho0,
                                  struct DmDensity **out);

/**
 * # Safety
 * `rho` must be a live handle; `out` must be valid for a write.
 */
enum DmStatus dm_concurrence(const struct DmDensity *rho, double *out);

/**
 * Mixed-state fidelity between two density matrices.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for a write.
 */
enum DmStatus dm_fidelity(const struct DmDensity *a, const struct DmDensity *b, double *out);

/**
 * Fidelity of teleporting `cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>` through two copies of `channel`.
 *
 * # Safety
 * `channel` must be a live handle; `out` must be valid for a write.
 */
enum DmStatus dm_teleport_fidelity(const struct DmDensity *channel,
                                   double theta,
                                   double phi,
                                   double *out);

/**
 * Concurrence of the teleported state.
 *
 * # Safety
 * `channel` must be a live handle; `out` must be valid for a write.
 */
enum DmStatus dm_output_concurrence(const struct DmDensity *channel,
                                    double theta,
                                    double phi,
                                    double *out);

/**
 * Runs a TOML sweep config and returns the CSV. Free with [`dm_string_free`].
 *
 * # Safety
 * `config_toml` must be a NUL-terminated string; `out` must be valid for a pointer write.
 */
enum DmStatus dm_sweep_csv(const char *config_toml, char **out);

/**
 * Runs a named figure recipe and returns the CSV. Free with [`dm_string_free`].
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be valid for a pointer write.
 */
enum DmStatus dm_figure_csv(const char *name, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void dm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DMCHAIN_H */

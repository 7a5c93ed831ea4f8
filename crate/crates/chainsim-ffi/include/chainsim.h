/* C interface to the chainsim kicked Ising chain simulator. */

#ifndef CHAINSIM_H
#define CHAINSIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChainsimStatus {
  CHAINSIM_STATUS_OK = 0,
  CHAINSIM_STATUS_NULL_POINTER = 1,
  CHAINSIM_STATUS_INVALID_ARGUMENT = 2,
  CHAINSIM_STATUS_OUT_OF_RANGE = 3,
  CHAINSIM_STATUS_NON_PHYSICAL = 4,
  CHAINSIM_STATUS_VERIFY_FAILED = 5,
} ChainsimStatus;

/**
 * Opaque chain description: spin count, bond couplings, bond on/off mask.
 */
typedef struct ChainsimConfig ChainsimConfig;

/**
 * Opaque kick schedule under construction; validated when a run starts.
 */
typedef struct ChainsimSchedule ChainsimSchedule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the current thread's last error message into `buffer` (NUL
 * terminated, truncated to `capacity`). Returns the full message length in
 * bytes, excluding the NUL; call with a null buffer to query the length.
 */
size_t chainsim_last_error_message(char *buffer, size_t capacity);

/**
 * Library version as a static NUL-terminated string.
 */
const char *chainsim_version(void);

/**
 * Default kick angle magnitude in radians (a Bloch rotation by pi/2).
 */
double chainsim_default_kick_angle(void);

/**
 * Creates a chain of `n_spins` spins with every bond coupling set to 1.
 */
enum ChainsimStatus chainsim_config_new_uniform(size_t n_spins, struct ChainsimConfig **out);

/**
 * Sets bond `bond` (1-based, coupling spins `bond` and `bond + 1`) to the
 * given coupling strength, and switches it on or off.
 */
enum ChainsimStatus chainsim_config_set_bond(struct ChainsimConfig *config,
                                             size_t bond,
                                             double coupling,
                                             bool active);

void chainsim_config_free(struct ChainsimConfig *config);

/**
 * Creates an empty schedule (free evolution).
 */
enum ChainsimStatus chainsim_schedule_new(struct ChainsimSchedule **out);

/**
 * Creates the standard end-to-end entangling sequence for `n_spins` spins:
 * N - 2 kicks at t = k*pi on spins 1..N-1 with alternating sign, each a
 * y rotation of magnitude `angle`.
 */
enum ChainsimStatus chainsim_schedule_new_standard(size_t n_spins,
                                                   double angle,
                                                   struct ChainsimSchedule **out);

/**
 * Appends a kick: at `time`, rotate each spin in `targets` (1-based,
 * `n_targets` entries) about y by `sign * angle`. Events may be pushed in
 * any order; times are validated when the schedule is run.
 */
enum ChainsimStatus chainsim_schedule_push(struct ChainsimSchedule *schedule,
                                           double time,
                                           const size_t *targets,
                                           size_t n_targets,
                                           int32_t sign,
                                           double angle);

void chainsim_schedule_free(struct ChainsimSchedule *schedule);

/**
 * Evolves the plus-product initial state under `config` and `schedule`,
 * sampling at the `n_times` strictly increasing `times`.
 *
 * For each time and each of the `n_pairs` spin pairs `(pairs_i[k],
 * pairs_j[k])`, the pair concurrence is written to
 * `out_concurrence[t * n_pairs + k]`. If non-null, `out_purity` receives the
 * purity of the (first, last) pair's reduced state and `out_norm` the state
 * norm, one entry per time. Kicks scheduled exactly at a sample time are
 * applied before that sample is taken.
 */
enum ChainsimStatus chainsim_run(const struct ChainsimConfig *config,
                                 const struct ChainsimSchedule *schedule,
                                 const double *times,
                                 size_t n_times,
                                 const size_t *pairs_i,
                                 const size_t *pairs_j,
                                 size_t n_pairs,
                                 double *out_concurrence,
                                 double *out_purity,
                                 double *out_norm);

/**
 * Runs the built-in closed-form checks for an `n_spins` chain kicked with
 * `angle` and writes the largest deviation to `out_max_deviation` (if
 * non-null). Returns `VerifyFailed` when any check exceeds its tolerance.
 */
enum ChainsimStatus chainsim_verify(size_t n_spins, double angle, double *out_max_deviation);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAINSIM_H */

#ifndef REWARDLAB_CAPI_H
#define REWARDLAB_CAPI_H

/* C interface of the rewardlab shared library.
 *
 * All functions return an rl_status; RL_OK means success. On failure a
 * human-readable message is available from rl_last_error() (thread-local).
 * Objects are opaque handles created by rl_*_create/from_* functions and
 * released with the matching rl_*_free. Strings returned through char**
 * parameters are heap-allocated and must be released with rl_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
  RL_OK = 0,
  RL_ERR_INVALID_ARGUMENT = 1,
  RL_ERR_DIMENSION_MISMATCH = 2,
  RL_ERR_IO = 3,
  RL_ERR_PARSE = 4,
  RL_ERR_CHECK_FAILED = 5,
  RL_ERR_NO_PREFERENCE_SIGNAL = 6,
  RL_ERR_UNSUPPORTED = 7,
  RL_ERR_INTERNAL = 8
} rl_status;

typedef struct rl_mdp rl_mdp;
typedef struct rl_solution rl_solution;
typedef struct rl_surrogate rl_surrogate;

const char* rl_version(void);

/* Message of the most recent failure on this thread; empty string if none. */
const char* rl_last_error(void);

void rl_string_free(char* text);

/* ---- MDP construction and serialization -------------------------------- */

rl_status rl_mdp_from_json(const char* json_text, rl_mdp** out);
rl_status rl_mdp_to_json(const rl_mdp* mdp, char** out_json);

rl_status rl_mdp_four_state(double r_a, double r_b, double r_c, rl_mdp** out);
rl_status rl_mdp_chain(int num_states, const double* rewards, int horizon, rl_mdp** out);
rl_status rl_mdp_puddle_canonical(rl_mdp** out);
rl_status rl_mdp_puddle_from_layout_json(const char* json_text, rl_mdp** out);
rl_status rl_mdp_random(int num_states, int num_actions, int horizon, uint64_t seed,
                        rl_mdp** out);
void rl_mdp_free(rl_mdp* mdp);

int rl_mdp_num_states(const rl_mdp* mdp);
int rl_mdp_num_actions(const rl_mdp* mdp);
int rl_mdp_horizon(const rl_mdp* mdp);

/* ---- Solving ------------------------------------------------------------ */

/* Backward-induction solution of the gamma-discounted problem; `surrogate`
 * may be NULL to use the MDP's own reward. */
rl_status rl_solve(const rl_mdp* mdp, double gamma, const rl_surrogate* surrogate,
                   rl_solution** out);
void rl_solution_free(rl_solution* solution);

rl_status rl_solution_action(const rl_solution* solution, int t, int s, int* out);
rl_status rl_solution_value(const rl_solution* solution, int t, int s, double* out);

/* Undiscounted expected episode return of the solution's policy. */
rl_status rl_total_return(const rl_mdp* mdp, const rl_solution* solution, double* out);

/* Smallest grid discount from which the induced policies stay total-return
 * optimal. The grid must be ascending and end at 1.0. */
rl_status rl_gamma_crit(const rl_mdp* mdp, const double* grid, size_t grid_len, double tolerance,
                        double* out);

/* ---- Surrogate rewards -------------------------------------------------- */

rl_status rl_surrogate_value_correction(const rl_mdp* mdp, double gamma_source,
                                        double gamma_target, rl_surrogate** out);
rl_status rl_surrogate_inverse_discount(const rl_mdp* mdp, double gamma, rl_surrogate** out);
rl_status rl_surrogate_value(const rl_surrogate* surrogate, int s, int t, double* out);
void rl_surrogate_free(rl_surrogate* surrogate);

/* ---- Experiment runners (the CLI is a thin shell over these) ------------ */

/* Each reads a JSON config, writes artifacts plus a manifest into out_dir.
 * seed_override < 0 keeps the config's seed. Returns RL_OK on success,
 * RL_ERR_CHECK_FAILED when a verified property failed, and a config/IO error
 * code otherwise. */
rl_status rl_cmd_solve(const char* config_path, const char* out_dir, int64_t seed_override,
                       int jobs);
rl_status rl_cmd_gamma_crit(const char* config_path, const char* out_dir, int64_t seed_override,
                            int jobs);
rl_status rl_cmd_tweak(const char* config_path, const char* out_dir, int64_t seed_override,
                       int jobs);
rl_status rl_cmd_robustness(const char* config_path, const char* out_dir, int64_t seed_override,
                            int jobs);
rl_status rl_cmd_theorems(const char* config_path, const char* out_dir, int64_t seed_override,
                          int jobs);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REWARDLAB_CAPI_H */

#include "rewardlab/capi.h"

#include <cstring>
#include <exception>
#include <string>

#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/experiments.hpp"
#include "rewardlab/mdp.hpp"
#include "rewardlab/serialize.hpp"
#include "rewardlab/solver.hpp"
#include "rewardlab/surrogate.hpp"
#include "rewardlab/version.hpp"

struct rl_mdp {
  rewardlab::FiniteHorizonMdp value;
};

struct rl_solution {
  rewardlab::Solution value;
};

struct rl_surrogate {
  rewardlab::SurrogateReward value;
};

namespace {

thread_local std::string g_last_error;

rl_status to_status(rewardlab::ErrorCode code) {
  switch (code) {
    case rewardlab::ErrorCode::invalid_argument: return RL_ERR_INVALID_ARGUMENT;
    case rewardlab::ErrorCode::dimension_mismatch: return RL_ERR_DIMENSION_MISMATCH;
    case rewardlab::ErrorCode::io: return RL_ERR_IO;
    case rewardlab::ErrorCode::parse: return RL_ERR_PARSE;
    case rewardlab::ErrorCode::check_failed: return RL_ERR_CHECK_FAILED;
    case rewardlab::ErrorCode::no_preference_signal: return RL_ERR_NO_PREFERENCE_SIGNAL;
    case rewardlab::ErrorCode::unsupported: return RL_ERR_UNSUPPORTED;
    case rewardlab::ErrorCode::internal: return RL_ERR_INTERNAL;
  }
  return RL_ERR_INTERNAL;
}

template <typename Fn>
rl_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RL_OK;
  } catch (const rewardlab::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RL_ERR_INTERNAL;
  }
}

rl_status set_error(rl_status status, const char* message) {
  g_last_error = message;
  return status;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

rl_status run_cmd(bool (*runner)(const std::string&, const std::string&, int64_t, int),
                  const char* config_path, const char* out_dir, int64_t seed_override, int jobs) {
  if (!config_path || !out_dir) return set_error(RL_ERR_INVALID_ARGUMENT, "null path argument");
  bool ok = false;
  rl_status status =
      guarded([&] { ok = runner(config_path, out_dir, seed_override, jobs < 1 ? 1 : jobs); });
  if (status != RL_OK) return status;
  if (!ok) return set_error(RL_ERR_CHECK_FAILED, "one or more verified properties failed");
  return RL_OK;
}

}  // namespace

extern "C" {

const char* rl_version(void) { return rewardlab::kVersion; }

const char* rl_last_error(void) { return g_last_error.c_str(); }

void rl_string_free(char* text) { delete[] text; }

rl_status rl_mdp_from_json(const char* json_text, rl_mdp** out) {
  if (!json_text || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rl_mdp{rewardlab::mdp_from_json(json_text)}; });
}

rl_status rl_mdp_to_json(const rl_mdp* mdp, char** out_json) {
  if (!mdp || !out_json) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_json = copy_string(rewardlab::mdp_to_json(mdp->value)); });
}

rl_status rl_mdp_four_state(double r_a, double r_b, double r_c, rl_mdp** out) {
  if (!out) return set_error(RL_ERR_INVALID_ARGUMENT, "null output argument");
  return guarded([&] { *out = new rl_mdp{rewardlab::make_four_state_mdp(r_a, r_b, r_c)}; });
}

rl_status rl_mdp_chain(int num_states, const double* rewards, int horizon, rl_mdp** out) {
  if (!rewards || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::span<const double> span(rewards, static_cast<size_t>(num_states > 0 ? num_states : 0));
    *out = new rl_mdp{rewardlab::make_chain_mdp(num_states, span, horizon)};
  });
}

rl_status rl_mdp_puddle_canonical(rl_mdp** out) {
  if (!out) return set_error(RL_ERR_INVALID_ARGUMENT, "null output argument");
  return guarded([&] {
    *out = new rl_mdp{rewardlab::make_puddle_world(rewardlab::canonical_puddle_layout())};
  });
}

rl_status rl_mdp_puddle_from_layout_json(const char* json_text, rl_mdp** out) {
  if (!json_text || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new rl_mdp{rewardlab::make_puddle_world(rewardlab::layout_from_json(json_text))};
  });
}

rl_status rl_mdp_random(int num_states, int num_actions, int horizon, uint64_t seed,
                        rl_mdp** out) {
  if (!out) return set_error(RL_ERR_INVALID_ARGUMENT, "null output argument");
  return guarded([&] {
    *out = new rl_mdp{rewardlab::make_random_mdp(num_states, num_actions, horizon, seed)};
  });
}

void rl_mdp_free(rl_mdp* mdp) { delete mdp; }

int rl_mdp_num_states(const rl_mdp* mdp) { return mdp ? mdp->value.num_states : 0; }
int rl_mdp_num_actions(const rl_mdp* mdp) { return mdp ? mdp->value.num_actions : 0; }
int rl_mdp_horizon(const rl_mdp* mdp) { return mdp ? mdp->value.horizon : 0; }

rl_status rl_solve(const rl_mdp* mdp, double gamma, const rl_surrogate* surrogate,
                   rl_solution** out) {
  if (!mdp || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new rl_solution{
        rewardlab::solve_optimal(mdp->value, gamma, surrogate ? &surrogate->value : nullptr)};
  });
}

void rl_solution_free(rl_solution* solution) { delete solution; }

rl_status rl_solution_action(const rl_solution* solution, int t, int s, int* out) {
  if (!solution || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  const auto& policy = solution->value.policy;
  if (t < 0 || t >= policy.horizon || s < 0 || s >= policy.num_states) {
    return set_error(RL_ERR_INVALID_ARGUMENT, "(t, s) outside the policy table");
  }
  *out = policy.at(t, s);
  return RL_OK;
}

rl_status rl_solution_value(const rl_solution* solution, int t, int s, double* out) {
  if (!solution || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  const auto& values = solution->value.values;
  if (t < 0 || t > values.horizon || s < 0 || s >= values.num_states) {
    return set_error(RL_ERR_INVALID_ARGUMENT, "(t, s) outside the value table");
  }
  *out = values.at(t, s);
  return RL_OK;
}

rl_status rl_total_return(const rl_mdp* mdp, const rl_solution* solution, double* out) {
  if (!mdp || !solution || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = rewardlab::total_return(mdp->value, solution->value.policy); });
}

rl_status rl_gamma_crit(const rl_mdp* mdp, const double* grid, size_t grid_len, double tolerance,
                        double* out) {
  if (!mdp || !grid || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = rewardlab::find_gamma_crit(mdp->value, {grid, grid_len}, tolerance);
  });
}

rl_status rl_surrogate_value_correction(const rl_mdp* mdp, double gamma_source,
                                        double gamma_target, rl_surrogate** out) {
  if (!mdp || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new rl_surrogate{
        rewardlab::make_value_correction_surrogate(mdp->value, gamma_source, gamma_target)};
  });
}

rl_status rl_surrogate_inverse_discount(const rl_mdp* mdp, double gamma, rl_surrogate** out) {
  if (!mdp || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new rl_surrogate{rewardlab::make_inverse_discount_surrogate(mdp->value, gamma)};
  });
}

rl_status rl_surrogate_value(const rl_surrogate* surrogate, int s, int t, double* out) {
  if (!surrogate || !out) return set_error(RL_ERR_INVALID_ARGUMENT, "null argument");
  const auto& table = surrogate->value;
  if (s < 0 || s >= table.num_states || t < 0 || t >= table.horizon) {
    return set_error(RL_ERR_INVALID_ARGUMENT, "(s, t) outside the surrogate table");
  }
  *out = table.at(s, t);
  return RL_OK;
}

void rl_surrogate_free(rl_surrogate* surrogate) { delete surrogate; }

rl_status rl_cmd_solve(const char* config_path, const char* out_dir, int64_t seed_override,
                       int jobs) {
  return run_cmd(rewardlab::run_solve, config_path, out_dir, seed_override, jobs);
}

rl_status rl_cmd_gamma_crit(const char* config_path, const char* out_dir, int64_t seed_override,
                            int jobs) {
  return run_cmd(rewardlab::run_gamma_crit, config_path, out_dir, seed_override, jobs);
}

rl_status rl_cmd_tweak(const char* config_path, const char* out_dir, int64_t seed_override,
                       int jobs) {
  return run_cmd(rewardlab::run_tweak, config_path, out_dir, seed_override, jobs);
}

rl_status rl_cmd_robustness(const char* config_path, const char* out_dir, int64_t seed_override,
                            int jobs) {
  return run_cmd(rewardlab::run_robustness, config_path, out_dir, seed_override, jobs);
}

rl_status rl_cmd_theorems(const char* config_path, const char* out_dir, int64_t seed_override,
                          int jobs) {
  return run_cmd(rewardlab::run_theorems, config_path, out_dir, seed_override, jobs);
}

}  // extern "C"

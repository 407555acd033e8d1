// Command-line front end; a thin shell over the shared library's C API.
//
// Exit codes: 0 success, 1 a verified property failed, 2 usage/config error.
// Failures also emit one machine-readable JSON error record on stderr.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "rewardlab/capi.h"

namespace {

struct CommonOptions {
  std::string config;
  std::string out;
  int64_t seed = -1;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--config", options.config, "experiment config file (JSON)")->required();
  cmd->add_option("--out", options.out, "artifact output directory")->required();
  cmd->add_option("--seed", options.seed, "override the config's root seed");
  cmd->add_option("--jobs", options.jobs, "worker threads for independent sub-runs")
      ->check(CLI::PositiveNumber);
}

const char* status_name(rl_status status) {
  switch (status) {
    case RL_OK: return "ok";
    case RL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case RL_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case RL_ERR_IO: return "io";
    case RL_ERR_PARSE: return "parse";
    case RL_ERR_CHECK_FAILED: return "check_failed";
    case RL_ERR_NO_PREFERENCE_SIGNAL: return "no_preference_signal";
    case RL_ERR_UNSUPPORTED: return "unsupported";
    case RL_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

std::string json_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

int finish(rl_status status) {
  if (status == RL_OK) return 0;
  std::fprintf(stderr, "{\"error\": \"%s\", \"status\": \"%s\", \"code\": %d}\n",
               json_escape(rl_last_error()).c_str(), status_name(status),
               static_cast<int>(status));
  return status == RL_ERR_CHECK_FAILED ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("rewardlab ") + rl_version() +
               " - finite-horizon MDP lab for surrogate-reward experiments"};
  app.require_subcommand(1);

  struct Subcommand {
    const char* name;
    const char* help;
    rl_status (*run)(const char*, const char*, int64_t, int);
    CommonOptions options;
  };
  Subcommand subcommands[] = {
      {"solve", "solve one discounted problem and export values/policy", rl_cmd_solve, {}},
      {"gamma-crit", "sweep the discount grid and locate the critical discount",
       rl_cmd_gamma_crit, {}},
      {"tweak", "adaptive surrogate-reward learning vs. the true-reward baseline", rl_cmd_tweak,
       {}},
      {"robustness", "randomized kernel-perturbation trials against the value-error bounds",
       rl_cmd_robustness, {}},
      {"theorems", "run the surrogate existence/ordering/scaling checks", rl_cmd_theorems, {}},
  };

  for (Subcommand& sub : subcommands) {
    add_common(app.add_subcommand(sub.name, sub.help), sub.options);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "{\"error\": \"%s\", \"status\": \"usage\", \"code\": 2}\n",
                 json_escape(e.what()).c_str());
    return 2;
  }

  for (const Subcommand& sub : subcommands) {
    if (app.get_subcommand(sub.name)->parsed()) {
      return finish(sub.run(sub.options.config.c_str(), sub.options.out.c_str(),
                            sub.options.seed, sub.options.jobs));
    }
  }
  return 2;
}

#pragma once

#include <cstdint>
#include <string>

namespace rewardlab {

/// Config-file driven experiment runners, one per CLI subcommand. Each reads
/// a JSON config (strict keys, schema_version checked), writes its artifacts
/// plus a manifest into out_dir, and returns false when a verified property
/// failed (CLI exit code 1). Config or I/O problems throw Error (exit 2).
/// seed_override < 0 keeps the config seed. Artifacts are byte-stable across
/// repeated runs with the same inputs.

bool run_solve(const std::string& config_path, const std::string& out_dir, int64_t seed_override,
               int jobs);
bool run_gamma_crit(const std::string& config_path, const std::string& out_dir,
                    int64_t seed_override, int jobs);
bool run_tweak(const std::string& config_path, const std::string& out_dir, int64_t seed_override,
               int jobs);
bool run_robustness(const std::string& config_path, const std::string& out_dir,
                    int64_t seed_override, int jobs);
bool run_theorems(const std::string& config_path, const std::string& out_dir,
                  int64_t seed_override, int jobs);

/// Dispatch by subcommand name: solve | gamma-crit | tweak | robustness |
/// theorems.
bool run_command(const std::string& command, const std::string& config_path,
                 const std::string& out_dir, int64_t seed_override, int jobs);

}  // namespace rewardlab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rewardlab/mdp.hpp"
#include "rewardlab/robustness.hpp"

namespace rewardlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NamedMdp {
  std::string label;
  FiniteHorizonMdp mdp;
};

/// The fixture set the surrogate checks run on: the two-action fork, a
/// 10-state chain with fixed rewards, the canonical puddle world, and
/// `random_count` random MDPs of at most 8 states.
std::vector<NamedMdp> check_environments(int random_count, uint64_t seed);

struct RecoveryCheckOptions {
  std::vector<double> gammas = {0.0, 0.3, 0.7, 1.0};
  double tolerance = 1e-9;
  bool wrong_sign = false;  // negative control: flips the correction term
};

/// For every (gamma_source, gamma_target) pair on the grid, solving the
/// gamma_target problem under the value-correction surrogate must reproduce
/// the gamma_source-optimal value table on reachable (t, s), and evaluating
/// its greedy policy on the original reward at gamma_source must do the same.
CheckResult check_value_recovery_grid(const NamedMdp& env, const RecoveryCheckOptions& options);

struct OrderCheckOptions {
  std::vector<double> gammas = {0.5, 0.9, 1.0};
  int trajectories = 500;
  double tolerance = 1e-9;
  uint64_t seed = 0;
};

/// The inverse-discount surrogate's discounted return must equal the raw
/// undiscounted return on every sampled rollout, and strictly ordered rollout
/// pairs must stay strictly ordered.
CheckResult check_return_identity_and_order(const NamedMdp& env, const OrderCheckOptions& options);

/// The fixed counterexample: for `num_vectors` random state-based rewards the
/// myopic utilities of the first two trajectories are identical bit-for-bit,
/// so no state-based reward realizes the strict ordering at gamma = 0.
CheckResult check_gamma_zero_impossibility(int num_vectors, uint64_t seed);

struct ScaleCheckOptions {
  std::vector<double> alphas = {1e-3, 1.0, 1e3};
  double gamma = 0.5;
  int random_mdps = 20;
  uint64_t seed = 0;
};

/// Positive rescaling of a surrogate must leave every greedy action table
/// unchanged.
CheckResult check_scale_invariance_sweep(const ScaleCheckOptions& options);

struct TrialOptions {
  int trials = 1000;
  PerturbationMode mode = PerturbationMode::uniform_all_states;
  std::vector<double> gammas = {0.5, 0.9, 0.99};
  bool use_surrogate = false;  // evaluate the gap under a value-correction surrogate
  uint64_t seed = 0;
  int jobs = 1;
};

struct TrialRecord {
  int trial = 0;
  double gamma = 0.0;
  double epsilon_p = 0.0;
  int last_layers = 0;  // 0 in uniform mode
  double gap = 0.0;
  double bound = 0.0;         // the bound matching the trial's mode
  double bound_uniform = 0.0; // the uniform-mode bound, for comparison
  bool holds = false;
  double ratio_error = 0.0;  // |bound/bound_uniform - improvement factor|
};

std::vector<TrialRecord> run_robustness_trials(const TrialOptions& options);

struct TrialSummary {
  int trials = 0;
  int violations = 0;
  double mean_gap = 0.0;
  double min_slack = 0.0;
  double max_ratio_error = 0.0;
};

TrialSummary summarize_trials(const std::vector<TrialRecord>& records);

struct PairedComparison {
  int trials = 0;
  double mean_gap_uniform = 0.0;
  double mean_gap_end = 0.0;
};

/// Perturbs the same layered MDPs under both modes at matched budgets and
/// compares the resulting value gaps.
PairedComparison run_paired_mode_comparison(int trials, uint64_t seed, int jobs = 1);

}  // namespace rewardlab

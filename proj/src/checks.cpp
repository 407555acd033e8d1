#include "rewardlab/checks.hpp"

#include <algorithm>
#include <cmath>

#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/parallel.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/serialize.hpp"
#include "rewardlab/solver.hpp"
#include "rewardlab/surrogate.hpp"

namespace rewardlab {

namespace {

constexpr double kChainFixtureRewards[] = {0.05, -0.3, 0.8, -0.1, 0.0,
                                           0.4,  -0.7, 0.2, 0.9,  -0.2};

NonStationaryPolicy random_policy(const FiniteHorizonMdp& mdp, Rng& rng) {
  NonStationaryPolicy policy;
  policy.horizon = mdp.horizon;
  policy.num_states = mdp.num_states;
  policy.actions.resize(static_cast<size_t>(mdp.horizon) * mdp.num_states);
  for (int& a : policy.actions) a = rng.next_index(mdp.num_actions);
  return policy;
}

double max_abs_reward(const FiniteHorizonMdp& mdp) {
  double m = 0.0;
  for (double r : mdp.reward) m = std::max(m, std::abs(r));
  return m;
}

double max_abs_surrogate(const SurrogateReward& s) {
  double m = 0.0;
  for (double v : s.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::vector<NamedMdp> check_environments(int random_count, uint64_t seed) {
  std::vector<NamedMdp> envs;
  envs.push_back({"four_state", make_four_state_mdp(0.5, 0.0, 2.0)});
  envs.push_back({"chain10", make_chain_mdp(10, kChainFixtureRewards, 8)});
  envs.push_back({"puddle", make_puddle_world(canonical_puddle_layout())});
  for (int i = 0; i < random_count; ++i) {
    Rng rng(derive_seed(seed, 11, i));
    const int states = 3 + rng.next_index(6);  // 3..8
    const int actions = 2 + rng.next_index(3);
    const int horizon = 4 + rng.next_index(7);
    envs.push_back({"random_" + std::to_string(i),
                    make_random_mdp(states, actions, horizon, derive_seed(seed, 12, i))});
  }
  return envs;
}

CheckResult check_value_recovery_grid(const NamedMdp& env, const RecoveryCheckOptions& options) {
  const FiniteHorizonMdp& mdp = env.mdp;
  const auto reachable = reachable_states_by_time(mdp);
  double worst = 0.0;
  std::string worst_pair;

  for (double gamma_source : options.gammas) {
    const Solution source = solve_optimal(mdp, gamma_source);
    for (double gamma_target : options.gammas) {
      SurrogateReward surrogate = make_value_correction_surrogate(mdp, gamma_source, gamma_target);
      if (options.wrong_sign) {
        for (int s = 0; s < mdp.num_states; ++s) {
          for (int t = 0; t < mdp.horizon; ++t) {
            surrogate.at(s, t) = 2.0 * mdp.reward[s] - surrogate.at(s, t);
          }
        }
      }
      const Solution bridged = solve_optimal(mdp, gamma_target, &surrogate);
      const ValueTable replay = evaluate_policy(mdp, bridged.policy, gamma_source);

      double delta = 0.0;
      for (int t = 0; t <= mdp.horizon; ++t) {
        for (int s = 0; s < mdp.num_states; ++s) {
          if (!reachable[t][s]) continue;
          delta = std::max(delta, std::abs(bridged.values.at(t, s) - source.values.at(t, s)));
          delta = std::max(delta, std::abs(replay.at(t, s) - source.values.at(t, s)));
        }
      }
      if (delta > worst) {
        worst = delta;
        worst_pair = "(" + format_double(gamma_source) + ", " + format_double(gamma_target) + ")";
      }
    }
  }

  CheckResult result;
  result.name = "value_recovery_grid[" + env.label + "]";
  result.passed = worst <= options.tolerance;
  result.detail = "max value error " + format_double(worst) +
                  (worst_pair.empty() ? "" : " at gammas " + worst_pair);
  return result;
}

CheckResult check_return_identity_and_order(const NamedMdp& env,
                                            const OrderCheckOptions& options) {
  const FiniteHorizonMdp& mdp = env.mdp;
  const NonStationaryPolicy uniform{mdp.horizon, mdp.num_states,
                                    std::vector<int>(static_cast<size_t>(mdp.horizon) *
                                                         mdp.num_states,
                                                     0)};
  double worst_identity = 0.0;
  int violations = 0;
  int pairs = 0;

  for (size_t gi = 0; gi < options.gammas.size(); ++gi) {
    const double gamma = options.gammas[gi];
    const SurrogateReward surrogate = make_inverse_discount_surrogate(mdp, gamma);
    std::vector<Trajectory> sample;
    sample.reserve(options.trajectories);
    for (int i = 0; i < options.trajectories; ++i) {
      sample.push_back(
          sample_trajectory(mdp, uniform, 1.0, derive_seed(options.seed, 20 + gi, i)));
    }
    for (const Trajectory& traj : sample) {
      worst_identity =
          std::max(worst_identity, std::abs(traj.discounted_surrogate_return(surrogate, gamma) -
                                            traj.undiscounted_return()));
    }
    const OrderReport report =
        verify_order_preservation(mdp, surrogate, gamma, sample, options.tolerance);
    violations += static_cast<int>(report.violations.size());
    pairs += report.pairs_checked;
  }

  CheckResult result;
  result.name = "return_identity_and_order[" + env.label + "]";
  result.passed = worst_identity <= options.tolerance && violations == 0;
  result.detail = "max identity error " + format_double(worst_identity) + ", " +
                  std::to_string(violations) + " order violations over " + std::to_string(pairs) +
                  " pairs";
  return result;
}

CheckResult check_gamma_zero_impossibility(int num_vectors, uint64_t seed) {
  const GammaZeroCounterexample instance = gamma_zero_counterexample();

  // Sanity-check the published instance first: raw returns order 2 > 1 > -1.
  std::vector<double> returns;
  for (const Trajectory& traj : instance.trajectories) {
    returns.push_back(traj.undiscounted_return());
  }
  bool ordering_ok = returns[instance.expected_ordering[0]] >
                         returns[instance.expected_ordering[1]] &&
                     returns[instance.expected_ordering[1]] >
                         returns[instance.expected_ordering[2]];

  int exact_ties = 0;
  Rng rng(seed);
  for (int i = 0; i < num_vectors; ++i) {
    std::vector<double> candidate(instance.num_states);
    for (double& v : candidate) v = 20.0 * rng.next_double() - 10.0;
    if (gamma_zero_utility_gap(instance, candidate) == 0.0) ++exact_ties;
  }

  CheckResult result;
  result.name = "gamma_zero_impossibility";
  result.passed = ordering_ok && exact_ties == num_vectors;
  result.detail = std::to_string(exact_ties) + "/" + std::to_string(num_vectors) +
                  " candidate rewards tie the top two trajectories exactly";
  return result;
}

CheckResult check_scale_invariance_sweep(const ScaleCheckOptions& options) {
  int failures = 0;
  int cases = 0;

  auto sweep = [&](const FiniteHorizonMdp& mdp, const SurrogateReward& surrogate) {
    for (double alpha : options.alphas) {
      ++cases;
      if (!check_scale_invariance(mdp, surrogate, options.gamma, alpha)) ++failures;
    }
  };

  const FiniteHorizonMdp fork = make_four_state_mdp(0.5, 0.0, 2.0);
  sweep(fork, make_value_correction_surrogate(fork, 1.0, options.gamma));
  sweep(fork, make_inverse_discount_surrogate(fork, 0.5));
  for (int i = 0; i < options.random_mdps; ++i) {
    const FiniteHorizonMdp mdp = make_random_mdp(6, 3, 8, derive_seed(options.seed, 31, i));
    sweep(mdp, make_value_correction_surrogate(mdp, 1.0, options.gamma));
  }

  CheckResult result;
  result.name = "scale_invariance";
  result.passed = failures == 0;
  result.detail = std::to_string(cases - failures) + "/" + std::to_string(cases) +
                  " rescaled solves kept their greedy tables";
  return result;
}

std::vector<TrialRecord> run_robustness_trials(const TrialOptions& options) {
  std::vector<TrialRecord> records(options.trials);
  parallel_for(options.trials, options.jobs, [&](int i) {
    Rng rng(derive_seed(options.seed, 40, i));
    TrialRecord rec;
    rec.trial = i;
    rec.gamma = options.gammas[rng.next_index(static_cast<int>(options.gammas.size()))];
    rec.epsilon_p = 0.02 + 0.48 * rng.next_double();

    FiniteHorizonMdp mdp;
    PerturbationSpec spec;
    spec.epsilon_p = rec.epsilon_p;
    spec.mode = options.mode;
    spec.seed = derive_seed(options.seed, 41, i);
    if (options.mode == PerturbationMode::end_concentrated) {
      const int layers = 5 + rng.next_index(5);  // horizon 4..8
      const int width = 2 + rng.next_index(3);
      mdp = make_layered_random_mdp(layers, width, 2 + rng.next_index(2),
                                    derive_seed(options.seed, 42, i));
      spec.last_layers = 1 + rng.next_index(mdp.horizon);
      rec.last_layers = spec.last_layers;
    } else {
      mdp = make_random_mdp(4 + rng.next_index(5), 2 + rng.next_index(3), 6 + rng.next_index(7),
                            derive_seed(options.seed, 42, i));
    }

    const FiniteHorizonMdp perturbed = perturb_kernel(mdp, spec);
    const NonStationaryPolicy policy = random_policy(mdp, rng);

    SurrogateReward surrogate;
    const SurrogateReward* surrogate_ptr = nullptr;
    double r_max = max_abs_reward(mdp);
    if (options.use_surrogate) {
      surrogate = make_value_correction_surrogate(mdp, 1.0, rec.gamma);
      surrogate_ptr = &surrogate;
      r_max = max_abs_surrogate(surrogate);
    }

    rec.gap = simulation_gap(mdp, perturbed, policy, rec.gamma, surrogate_ptr);
    const BoundCheck uniform =
        check_bound(rec.gap, rec.gamma, mdp.horizon, std::nullopt, r_max, rec.epsilon_p);
    rec.bound_uniform = uniform.bound;
    if (options.mode == PerturbationMode::end_concentrated) {
      const BoundCheck window =
          check_bound(rec.gap, rec.gamma, mdp.horizon, spec.last_layers, r_max, rec.epsilon_p);
      rec.bound = window.bound;
      rec.holds = window.holds && uniform.holds;
      rec.ratio_error = std::abs(window.bound / uniform.bound -
                                 bound_improvement_factor(rec.gamma, mdp.horizon,
                                                          spec.last_layers));
    } else {
      rec.bound = uniform.bound;
      rec.holds = uniform.holds;
    }
    records[i] = rec;
  });
  return records;
}

TrialSummary summarize_trials(const std::vector<TrialRecord>& records) {
  TrialSummary summary;
  summary.trials = static_cast<int>(records.size());
  if (records.empty()) return summary;
  summary.min_slack = records.front().bound - records.front().gap;
  for (const TrialRecord& rec : records) {
    if (!rec.holds) ++summary.violations;
    summary.mean_gap += rec.gap;
    summary.min_slack = std::min(summary.min_slack, rec.bound - rec.gap);
    summary.max_ratio_error = std::max(summary.max_ratio_error, rec.ratio_error);
  }
  summary.mean_gap /= summary.trials;
  return summary;
}

PairedComparison run_paired_mode_comparison(int trials, uint64_t seed, int jobs) {
  std::vector<double> gap_uniform(trials), gap_end(trials);
  parallel_for(trials, jobs, [&](int i) {
    Rng rng(derive_seed(seed, 50, i));
    const int layers = 5 + rng.next_index(5);
    const FiniteHorizonMdp mdp = make_layered_random_mdp(layers, 2 + rng.next_index(3),
                                                         2, derive_seed(seed, 51, i));
    const double gamma = 0.9;
    const double epsilon = 0.05 + 0.4 * rng.next_double();
    const int window = 1 + rng.next_index(std::max(1, mdp.horizon / 2));
    const NonStationaryPolicy policy = random_policy(mdp, rng);

    PerturbationSpec spec;
    spec.epsilon_p = epsilon;
    spec.seed = derive_seed(seed, 52, i);
    spec.mode = PerturbationMode::uniform_all_states;
    gap_uniform[i] = simulation_gap(mdp, perturb_kernel(mdp, spec), policy, gamma);

    spec.mode = PerturbationMode::end_concentrated;
    spec.last_layers = window;
    gap_end[i] = simulation_gap(mdp, perturb_kernel(mdp, spec), policy, gamma);
  });

  PairedComparison cmp;
  cmp.trials = trials;
  for (int i = 0; i < trials; ++i) {
    cmp.mean_gap_uniform += gap_uniform[i];
    cmp.mean_gap_end += gap_end[i];
  }
  cmp.mean_gap_uniform /= trials;
  cmp.mean_gap_end /= trials;
  return cmp;
}

}  // namespace rewardlab

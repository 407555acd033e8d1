#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rewardlab {

/// Tabular finite-horizon MDP with a state-based reward.
///
/// Conventions used throughout the library:
///  - `transition` is flattened as [state][action][next_state].
///  - An episode visits states s_0..s_T; the reward `reward[s_t]` is
///    collected at each decision time t = 0..horizon-1. The state reached
///    when time runs out pays nothing.
///  - Absorbing states self-loop under every action.
struct FiniteHorizonMdp {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<double> transition;    // [s][a][s']
  std::vector<double> reward;        // [s]
  std::vector<double> initial_dist;  // [s]
  std::vector<uint8_t> absorbing;    // [s], 0/1

  double p(int s, int a, int next) const {
    return transition[(static_cast<size_t>(s) * num_actions + a) * num_states + next];
  }
  std::span<const double> row(int s, int a) const {
    return {transition.data() + (static_cast<size_t>(s) * num_actions + a) * num_states,
            static_cast<size_t>(num_states)};
  }
  std::span<double> row_mut(int s, int a) {
    return {transition.data() + (static_cast<size_t>(s) * num_actions + a) * num_states,
            static_cast<size_t>(num_states)};
  }
};

/// Checks every structural invariant (row sums, probability ranges,
/// absorbing self-loops, dimension consistency). Throws Error naming the
/// offending axis.
void validate(const FiniteHorizonMdp& mdp);

/// Deterministic action table indexed by (time, state).
struct NonStationaryPolicy {
  int horizon = 0;
  int num_states = 0;
  std::vector<int> actions;  // [t][s]

  int at(int t, int s) const { return actions[static_cast<size_t>(t) * num_states + s]; }
  int& at(int t, int s) { return actions[static_cast<size_t>(t) * num_states + s]; }
};

void validate(const NonStationaryPolicy& policy, const FiniteHorizonMdp& mdp);

/// Return-to-go table; values[t][s] for t = 0..horizon, with the final row
/// identically zero.
struct ValueTable {
  int horizon = 0;
  int num_states = 0;
  std::vector<double> values;  // [t][s], horizon+1 rows

  double at(int t, int s) const { return values[static_cast<size_t>(t) * num_states + s]; }
  double& at(int t, int s) { return values[static_cast<size_t>(t) * num_states + s]; }
};

/// Time-indexed reward table r(s, t) for t = 0..horizon-1.
struct SurrogateReward {
  int num_states = 0;
  int horizon = 0;
  std::vector<double> values;  // [s][t]

  double at(int s, int t) const { return values[static_cast<size_t>(s) * horizon + t]; }
  double& at(int s, int t) { return values[static_cast<size_t>(s) * horizon + t]; }
};

SurrogateReward zero_surrogate(int num_states, int horizon);

void validate(const SurrogateReward& surrogate, const FiniteHorizonMdp& mdp);

/// One realized rollout, or a suffix view of one.
///
/// `states` holds one more entry than `actions`; `rewards[k]` is the reward
/// collected at `states[k]`, so it runs parallel to `states` but stops one
/// short (the final state pays nothing). `start_time` is the absolute
/// decision time of `states[0]` within the episode.
struct Trajectory {
  std::vector<int> states;
  std::vector<int> actions;
  std::vector<double> rewards;
  int start_time = 0;

  int num_steps() const { return static_cast<int>(actions.size()); }

  double undiscounted_return() const;

  /// gamma-discounted sum of the surrogate along the trajectory, re-based so
  /// states[0] is scored at surrogate time 0.
  double discounted_surrogate_return(const SurrogateReward& surrogate, double gamma) const;

  /// Same re-based discounted sum for a plain state-indexed reward vector.
  double discounted_state_reward_return(std::span<const double> state_reward, double gamma) const;

  /// Sub-view starting `offset` steps in (start_time shifts accordingly).
  Trajectory suffix(int offset) const;
};

void validate(const Trajectory& traj, const FiniteHorizonMdp& mdp);

}  // namespace rewardlab

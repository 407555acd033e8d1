#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rewardlab/mdp.hpp"

namespace rewardlab {

struct Solution {
  NonStationaryPolicy policy;
  ValueTable values;
};

/// Exact backward induction of a fixed policy:
///   values[t][s] = E[ sum_{k=t}^{T-1} gamma^{k-t} R(s_k, k) | s_t = s, policy ]
/// where R is the MDP's own reward, or `reward_override` when given.
ValueTable evaluate_policy(const FiniteHorizonMdp& mdp, const NonStationaryPolicy& policy,
                           double gamma, const SurrogateReward* reward_override = nullptr);

/// Optimal backward induction. The greedy action at (t, s) maximizes the
/// expected continuation value sum_{s'} P(s'|s,a) v[t+1][s']; since the step
/// reward is action-independent this coincides with the discounted greedy
/// choice for gamma > 0, and at gamma = 0 it yields the natural myopic policy
/// (move toward the best next state) instead of treating every action as
/// tied. Ties break toward the lowest action index.
Solution solve_optimal(const FiniteHorizonMdp& mdp, double gamma,
                       const SurrogateReward* reward_override = nullptr);

/// Undiscounted expected episode return of `policy` from the initial
/// distribution.
double total_return(const FiniteHorizonMdp& mdp, const NonStationaryPolicy& policy);

struct GammaSweep {
  std::vector<double> gammas;
  std::vector<double> policy_total_returns;  // total return of the gamma-optimal policy
  double optimal_total_return = 0.0;
  double gamma_crit = 1.0;
};

/// Solves the discounted problem at every grid value and locates the smallest
/// grid gamma from which the induced policies stay total-return optimal.
GammaSweep sweep_gamma_crit(const FiniteHorizonMdp& mdp, std::span<const double> grid,
                            double tolerance);

/// Smallest grid value g such that the gamma'-optimal policy attains the
/// optimal total return (within `tolerance`) for every grid gamma' >= g.
/// The grid must be sorted ascending and include 1.0.
double find_gamma_crit(const FiniteHorizonMdp& mdp, std::span<const double> grid,
                       double tolerance);

/// Length-(horizon+1) rollout from the initial distribution. Each step the
/// policy action is replaced by a uniform random action with probability
/// exploration_eps. Deterministic for a fixed seed.
Trajectory sample_trajectory(const FiniteHorizonMdp& mdp, const NonStationaryPolicy& policy,
                             double exploration_eps, uint64_t seed);

/// reachable[t][s] = 1 iff some action sequence starting from the support of
/// the initial distribution can occupy s at time t (t = 0..horizon).
std::vector<std::vector<uint8_t>> reachable_states_by_time(const FiniteHorizonMdp& mdp);

/// Ascending grid {0, step, 2*step, ..., 1}; the endpoint 1.0 is always
/// included exactly.
std::vector<double> make_gamma_grid(double step);

}  // namespace rewardlab

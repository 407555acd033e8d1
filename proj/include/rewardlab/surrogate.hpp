#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rewardlab/mdp.hpp"

namespace rewardlab {

/// Constructive surrogate bridging two discount factors:
///
///   r~(s, i) = r(s) + (gamma_source - gamma_target)
///                     * sum_{s'} P(s' | s, pi*(i, s)) * v*(i+1, s')
///
/// with pi*, v* the gamma_source-optimal solution. Optimizing the
/// gamma_target-discounted problem under the result reproduces the
/// gamma_source-optimal value table, and its greedy policy is
/// gamma_source-optimal. With gamma_source = 1 this turns a short-horizon
/// optimizer into a total-return optimizer.
SurrogateReward make_value_correction_surrogate(const FiniteHorizonMdp& mdp, double gamma_source,
                                                double gamma_target);

/// Inverse-discount surrogate r~(s, t) = r(s) / gamma^t. The gamma-discounted
/// surrogate return of any trajectory equals its undiscounted original return
/// exactly, so return ordering is preserved. Requires gamma in (0, 1]
/// (no state-based or time-indexed reward can preserve strict orderings at
/// gamma = 0; see gamma_zero_counterexample). Rejects gamma small enough that
/// gamma^-(horizon-1) would leave the double range (gamma^(horizon-1) below
/// 1e-300).
SurrogateReward make_inverse_discount_surrogate(const FiniteHorizonMdp& mdp, double gamma);

struct OrderReport {
  int pairs_checked = 0;
  // (i, j): trajectory i strictly outranks j on raw return but its discounted
  // surrogate utility is not strictly larger.
  std::vector<std::pair<int, int>> violations;
};

/// For every ordered pair whose raw-return gap exceeds tie_tolerance, the
/// winner's discounted surrogate utility must be strictly larger. Pairs
/// within tie_tolerance of each other are skipped. Sub-trajectory views are
/// scored re-based at time 0, matching their feature encoding.
OrderReport verify_order_preservation(const FiniteHorizonMdp& mdp,
                                      const SurrogateReward& surrogate, double gamma,
                                      std::span<const Trajectory> trajectories,
                                      double tie_tolerance = 1e-9);

/// Fixed 5-state instance (states A, B, C, D, E) with three trajectories
///   tau1: B -> C,  tau2: B -> D,  tau3: E
/// whose total returns order tau1 > tau3 > tau2. For gamma > 0 the ordering
/// is realizable (e.g. by the inverse-discount surrogate), but at gamma = 0
/// every state-based reward gives tau1 and tau2 identical utility, so the
/// strict ordering is unachievable.
struct GammaZeroCounterexample {
  static constexpr int kA = 0, kB = 1, kC = 2, kD = 3, kE = 4;
  int num_states = 5;
  std::vector<double> rewards;           // original state rewards
  std::vector<Trajectory> trajectories;  // tau1, tau2, tau3
  std::vector<int> expected_ordering;    // trajectory indices, best first
};

GammaZeroCounterexample gamma_zero_counterexample();

/// Myopic (gamma = 0) utility gap U(tau1) - U(tau2) under an arbitrary
/// state-based candidate reward; identically zero, bit-exact.
double gamma_zero_utility_gap(const GammaZeroCounterexample& instance,
                              std::span<const double> state_reward);

/// True iff scaling the surrogate by alpha > 0 leaves every greedy action of
/// the gamma-discounted solution unchanged (values scale by alpha; the policy
/// must not move).
bool check_scale_invariance(const FiniteHorizonMdp& mdp, const SurrogateReward& surrogate,
                            double gamma, double alpha);

SurrogateReward scale_surrogate(const SurrogateReward& surrogate, double alpha);

}  // namespace rewardlab

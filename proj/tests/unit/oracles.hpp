// Test-only oracles, deliberately independent of the library's solver path:
// values come from forward path enumeration and reachability from a separate
// BFS, so the backward-induction implementation is checked against a
// different formulation of the same quantities.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rewardlab/mdp.hpp"

namespace oracles {

using rewardlab::FiniteHorizonMdp;
using rewardlab::NonStationaryPolicy;
using rewardlab::SurrogateReward;

/// E[ sum_{k=t}^{T-1} gamma^{k-t} R(s_k, k) | s_t = s ] by plain recursion
/// over every continuation path (exponential; small instances only).
inline double path_expectation(const FiniteHorizonMdp& mdp, const NonStationaryPolicy& policy,
                               double gamma, const SurrogateReward* override_reward, int t,
                               int s) {
  if (t == mdp.horizon) return 0.0;
  const double r = override_reward ? override_reward->at(s, t) : mdp.reward[s];
  double continuation = 0.0;
  const auto row = mdp.row(s, policy.at(t, s));
  for (int next = 0; next < mdp.num_states; ++next) {
    if (row[next] == 0.0) continue;
    continuation += row[next] * path_expectation(mdp, policy, gamma, override_reward, t + 1, next);
  }
  return r + gamma * continuation;
}

/// Calls fn with every deterministic non-stationary policy. The table has
/// num_actions^(horizon * num_states) entries; keep instances tiny.
inline void for_each_policy(const FiniteHorizonMdp& mdp,
                            const std::function<void(const NonStationaryPolicy&)>& fn) {
  NonStationaryPolicy policy;
  policy.horizon = mdp.horizon;
  policy.num_states = mdp.num_states;
  policy.actions.assign(static_cast<size_t>(mdp.horizon) * mdp.num_states, 0);
  const size_t cells = policy.actions.size();
  while (true) {
    fn(policy);
    size_t i = 0;
    while (i < cells) {
      if (++policy.actions[i] < mdp.num_actions) break;
      policy.actions[i] = 0;
      ++i;
    }
    if (i == cells) return;
  }
}

/// Independent BFS over the kernel support.
inline std::vector<std::vector<uint8_t>> bfs_reachable(const FiniteHorizonMdp& mdp) {
  std::vector<std::vector<uint8_t>> seen(mdp.horizon + 1,
                                         std::vector<uint8_t>(mdp.num_states, 0));
  for (int s = 0; s < mdp.num_states; ++s) {
    if (mdp.initial_dist[s] > 0.0) seen[0][s] = 1;
  }
  for (int t = 0; t < mdp.horizon; ++t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      if (!seen[t][s]) continue;
      for (int a = 0; a < mdp.num_actions; ++a) {
        for (int next = 0; next < mdp.num_states; ++next) {
          if (mdp.p(s, a, next) > 0.0) seen[t + 1][next] = 1;
        }
      }
    }
  }
  return seen;
}

}  // namespace oracles

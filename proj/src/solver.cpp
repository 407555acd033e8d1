#include "rewardlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rewardlab/errors.hpp"
#include "rewardlab/rng.hpp"

namespace rewardlab {

namespace {

void check_gamma(double gamma) {
  require(gamma >= 0.0 && gamma <= 1.0, ErrorCode::invalid_argument,
          "gamma " + std::to_string(gamma) + " outside [0, 1]");
}

double step_reward(const FiniteHorizonMdp& mdp, const SurrogateReward* override_reward, int s,
                   int t) {
  return override_reward ? override_reward->at(s, t) : mdp.reward[s];
}

ValueTable make_value_table(const FiniteHorizonMdp& mdp) {
  ValueTable v;
  v.horizon = mdp.horizon;
  v.num_states = mdp.num_states;
  v.values.assign(static_cast<size_t>(mdp.horizon + 1) * mdp.num_states, 0.0);
  return v;
}

}  // namespace

ValueTable evaluate_policy(const FiniteHorizonMdp& mdp, const NonStationaryPolicy& policy,
                           double gamma, const SurrogateReward* reward_override) {
  check_gamma(gamma);
  validate(policy, mdp);
  if (reward_override) validate(*reward_override, mdp);

  ValueTable v = make_value_table(mdp);
  for (int t = mdp.horizon - 1; t >= 0; --t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      double cont = 0.0;
      if (gamma > 0.0) {
        const auto row = mdp.row(s, policy.at(t, s));
        for (int next = 0; next < mdp.num_states; ++next) {
          cont += row[next] * v.at(t + 1, next);
        }
      }
      v.at(t, s) = step_reward(mdp, reward_override, s, t) + gamma * cont;
    }
  }
  return v;
}

Solution solve_optimal(const FiniteHorizonMdp& mdp, double gamma,
                       const SurrogateReward* reward_override) {
  check_gamma(gamma);
  if (reward_override) validate(*reward_override, mdp);

  Solution sol;
  sol.values = make_value_table(mdp);
  sol.policy.horizon = mdp.horizon;
  sol.policy.num_states = mdp.num_states;
  sol.policy.actions.assign(static_cast<size_t>(mdp.horizon) * mdp.num_states, 0);

  for (int t = mdp.horizon - 1; t >= 0; --t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      int best_action = 0;
      double best_cont = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < mdp.num_actions; ++a) {
        const auto row = mdp.row(s, a);
        double cont = 0.0;
        for (int next = 0; next < mdp.num_states; ++next) {
          cont += row[next] * sol.values.at(t + 1, next);
        }
        if (cont > best_cont) {
          best_cont = cont;
          best_action = a;
        }
      }
      sol.policy.at(t, s) = best_action;
      sol.values.at(t, s) = step_reward(mdp, reward_override, s, t) + gamma * best_cont;
    }
  }
  return sol;
}

double total_return(const FiniteHorizonMdp& mdp, const NonStationaryPolicy& policy) {
  ValueTable v = evaluate_policy(mdp, policy, 1.0);
  double sum = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) {
    sum += mdp.initial_dist[s] * v.at(0, s);
  }
  return sum;
}

GammaSweep sweep_gamma_crit(const FiniteHorizonMdp& mdp, std::span<const double> grid,
                            double tolerance) {
  require(!grid.empty(), ErrorCode::invalid_argument, "gamma grid is empty");
  require(std::is_sorted(grid.begin(), grid.end()), ErrorCode::invalid_argument,
          "gamma grid must be sorted ascending");
  require(grid.back() == 1.0, ErrorCode::invalid_argument, "gamma grid must include 1.0");

  GammaSweep sweep;
  sweep.gammas.assign(grid.begin(), grid.end());
  sweep.optimal_total_return = total_return(mdp, solve_optimal(mdp, 1.0).policy);
  sweep.policy_total_returns.reserve(grid.size());
  for (double g : grid) {
    sweep.policy_total_returns.push_back(total_return(mdp, solve_optimal(mdp, g).policy));
  }

  size_t first_good = 0;
  for (size_t i = grid.size(); i-- > 0;) {
    if (std::abs(sweep.policy_total_returns[i] - sweep.optimal_total_return) > tolerance) {
      first_good = i + 1;
      break;
    }
  }
  sweep.gamma_crit = sweep.gammas[first_good];
  return sweep;
}

double find_gamma_crit(const FiniteHorizonMdp& mdp, std::span<const double> grid,
                       double tolerance) {
  return sweep_gamma_crit(mdp, grid, tolerance).gamma_crit;
}

Trajectory sample_trajectory(const FiniteHorizonMdp& mdp, const NonStationaryPolicy& policy,
                             double exploration_eps, uint64_t seed) {
  validate(policy, mdp);
  require(exploration_eps >= 0.0 && exploration_eps <= 1.0, ErrorCode::invalid_argument,
          "exploration_eps outside [0, 1]");

  Rng rng(seed);
  Trajectory traj;
  traj.start_time = 0;
  traj.states.reserve(mdp.horizon + 1);
  traj.actions.reserve(mdp.horizon);
  traj.rewards.reserve(mdp.horizon);

  int s = rng.categorical(mdp.initial_dist);
  traj.states.push_back(s);
  for (int t = 0; t < mdp.horizon; ++t) {
    int a = policy.at(t, s);
    if (exploration_eps > 0.0 && rng.bernoulli(exploration_eps)) {
      a = rng.next_index(mdp.num_actions);
    }
    traj.actions.push_back(a);
    traj.rewards.push_back(mdp.reward[s]);
    s = rng.categorical(mdp.row(s, a));
    traj.states.push_back(s);
  }
  return traj;
}

std::vector<std::vector<uint8_t>> reachable_states_by_time(const FiniteHorizonMdp& mdp) {
  std::vector<std::vector<uint8_t>> reachable(mdp.horizon + 1,
                                              std::vector<uint8_t>(mdp.num_states, 0));
  for (int s = 0; s < mdp.num_states; ++s) {
    if (mdp.initial_dist[s] > 0.0) reachable[0][s] = 1;
  }
  for (int t = 0; t < mdp.horizon; ++t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      if (!reachable[t][s]) continue;
      for (int a = 0; a < mdp.num_actions; ++a) {
        const auto row = mdp.row(s, a);
        for (int next = 0; next < mdp.num_states; ++next) {
          if (row[next] > 0.0) reachable[t + 1][next] = 1;
        }
      }
    }
  }
  return reachable;
}

std::vector<double> make_gamma_grid(double step) {
  require(step > 0.0 && step <= 1.0, ErrorCode::invalid_argument, "grid step must be in (0, 1]");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    double g = i * step;
    if (g >= 1.0 - 1e-12) break;
    grid.push_back(g);
  }
  grid.push_back(1.0);
  return grid;
}

}  // namespace rewardlab

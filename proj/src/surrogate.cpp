#include "rewardlab/surrogate.hpp"

#include <cmath>
#include <string>

#include "rewardlab/errors.hpp"
#include "rewardlab/solver.hpp"

namespace rewardlab {

SurrogateReward make_value_correction_surrogate(const FiniteHorizonMdp& mdp, double gamma_source,
                                                double gamma_target) {
  require(gamma_source >= 0.0 && gamma_source <= 1.0, ErrorCode::invalid_argument,
          "gamma_source outside [0, 1]");
  require(gamma_target >= 0.0 && gamma_target <= 1.0, ErrorCode::invalid_argument,
          "gamma_target outside [0, 1]");

  const Solution source = solve_optimal(mdp, gamma_source);
  SurrogateReward out = zero_surrogate(mdp.num_states, mdp.horizon);
  const double shift = gamma_source - gamma_target;
  for (int t = 0; t < mdp.horizon; ++t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      const auto row = mdp.row(s, source.policy.at(t, s));
      double expected_next = 0.0;
      for (int next = 0; next < mdp.num_states; ++next) {
        expected_next += row[next] * source.values.at(t + 1, next);
      }
      out.at(s, t) = mdp.reward[s] + shift * expected_next;
    }
  }
  return out;
}

SurrogateReward make_inverse_discount_surrogate(const FiniteHorizonMdp& mdp, double gamma) {
  require(gamma > 0.0 && gamma <= 1.0, ErrorCode::invalid_argument,
          "inverse-discount surrogate needs gamma in (0, 1]; at gamma = 0 no reward can "
          "preserve strict return orderings");
  // The largest entry is r(s) * gamma^-(horizon-1); refuse inputs whose
  // magnitudes leave the double range.
  const double smallest_power = (mdp.horizon - 1) * std::log(gamma);
  require(smallest_power >= std::log(1e-300), ErrorCode::invalid_argument,
          "gamma^" + std::to_string(mdp.horizon - 1) +
              " underflows; raise gamma or shorten the horizon");

  SurrogateReward out = zero_surrogate(mdp.num_states, mdp.horizon);
  double inv_power = 1.0;
  for (int t = 0; t < mdp.horizon; ++t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      out.at(s, t) = mdp.reward[s] * inv_power;
    }
    inv_power /= gamma;
  }
  return out;
}

OrderReport verify_order_preservation(const FiniteHorizonMdp& mdp,
                                      const SurrogateReward& surrogate, double gamma,
                                      std::span<const Trajectory> trajectories,
                                      double tie_tolerance) {
  validate(surrogate, mdp);
  const int n = static_cast<int>(trajectories.size());
  std::vector<double> raw(n), utility(n);
  for (int i = 0; i < n; ++i) {
    raw[i] = trajectories[i].undiscounted_return();
    utility[i] = trajectories[i].discounted_surrogate_return(surrogate, gamma);
  }

  OrderReport report;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || raw[i] < raw[j] + tie_tolerance) continue;
      ++report.pairs_checked;
      if (!(utility[i] > utility[j])) report.violations.emplace_back(i, j);
    }
  }
  return report;
}

GammaZeroCounterexample gamma_zero_counterexample() {
  using C = GammaZeroCounterexample;
  GammaZeroCounterexample instance;
  instance.rewards = {0.0, 0.0, 2.0, -1.0, 1.0};  // A, B, C, D, E

  auto make = [&](std::vector<int> states) {
    Trajectory t;
    t.states = std::move(states);
    t.actions.assign(t.states.size() - 1, 0);
    t.rewards.clear();
    for (size_t k = 0; k + 1 < t.states.size(); ++k) {
      t.rewards.push_back(instance.rewards[t.states[k]]);
    }
    t.start_time = 1;  // views begin after the shared opening state A
    return t;
  };
  // tau1 visits B then C, tau2 visits B then D, tau3 visits E only; the
  // trailing state in each sequence marks where time runs out.
  instance.trajectories = {make({C::kB, C::kC, C::kC}), make({C::kB, C::kD, C::kD}),
                           make({C::kE, C::kE})};
  instance.expected_ordering = {0, 2, 1};  // returns 2 > 1 > -1
  return instance;
}

double gamma_zero_utility_gap(const GammaZeroCounterexample& instance,
                              std::span<const double> state_reward) {
  require(state_reward.size() == static_cast<size_t>(instance.num_states),
          ErrorCode::dimension_mismatch, "candidate reward vector must cover 5 states");
  const double u1 = instance.trajectories[0].discounted_state_reward_return(state_reward, 0.0);
  const double u2 = instance.trajectories[1].discounted_state_reward_return(state_reward, 0.0);
  return u1 - u2;
}

SurrogateReward scale_surrogate(const SurrogateReward& surrogate, double alpha) {
  SurrogateReward out = surrogate;
  for (double& v : out.values) v *= alpha;
  return out;
}

bool check_scale_invariance(const FiniteHorizonMdp& mdp, const SurrogateReward& surrogate,
                            double gamma, double alpha) {
  require(alpha > 0.0, ErrorCode::invalid_argument,
          "scale factor must be positive; nonpositive scaling can reorder policies");
  const SurrogateReward scaled = scale_surrogate(surrogate, alpha);
  const Solution base = solve_optimal(mdp, gamma, &surrogate);
  const Solution rescaled = solve_optimal(mdp, gamma, &scaled);
  return base.policy.actions == rescaled.policy.actions;
}

}  // namespace rewardlab

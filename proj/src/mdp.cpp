#include "rewardlab/mdp.hpp"

#include <cmath>
#include <string>

#include "rewardlab/errors.hpp"

namespace rewardlab {

namespace {
constexpr double kRowSumTolerance = 1e-12;
}

void validate(const FiniteHorizonMdp& mdp) {
  require(mdp.num_states > 0, ErrorCode::invalid_argument, "num_states must be positive");
  require(mdp.num_actions > 0, ErrorCode::invalid_argument, "num_actions must be positive");
  require(mdp.horizon > 0, ErrorCode::invalid_argument, "horizon must be positive");

  const size_t s = static_cast<size_t>(mdp.num_states);
  require(mdp.transition.size() == s * mdp.num_actions * s, ErrorCode::dimension_mismatch,
          "transition tensor holds " + std::to_string(mdp.transition.size()) +
              " entries, expected states*actions*states = " +
              std::to_string(s * mdp.num_actions * s));
  require(mdp.reward.size() == s, ErrorCode::dimension_mismatch,
          "reward vector length " + std::to_string(mdp.reward.size()) + " != num_states " +
              std::to_string(s));
  require(mdp.initial_dist.size() == s, ErrorCode::dimension_mismatch,
          "initial_dist length " + std::to_string(mdp.initial_dist.size()) + " != num_states " +
              std::to_string(s));
  require(mdp.absorbing.size() == s, ErrorCode::dimension_mismatch,
          "absorbing flags length " + std::to_string(mdp.absorbing.size()) + " != num_states " +
              std::to_string(s));

  for (int state = 0; state < mdp.num_states; ++state) {
    for (int a = 0; a < mdp.num_actions; ++a) {
      double sum = 0.0;
      for (double p : mdp.row(state, a)) {
        require(p >= 0.0, ErrorCode::invalid_argument,
                "negative transition probability at state " + std::to_string(state) +
                    ", action " + std::to_string(a));
        sum += p;
      }
      require(std::abs(sum - 1.0) <= kRowSumTolerance, ErrorCode::invalid_argument,
              "transition row (state " + std::to_string(state) + ", action " + std::to_string(a) +
                  ") sums to " + std::to_string(sum));
      if (mdp.absorbing[state]) {
        require(mdp.p(state, a, state) == 1.0, ErrorCode::invalid_argument,
                "absorbing state " + std::to_string(state) + " does not self-loop under action " +
                    std::to_string(a));
      }
    }
  }

  double mass = 0.0;
  for (double p : mdp.initial_dist) {
    require(p >= 0.0, ErrorCode::invalid_argument, "negative initial_dist entry");
    mass += p;
  }
  require(std::abs(mass - 1.0) <= kRowSumTolerance, ErrorCode::invalid_argument,
          "initial_dist sums to " + std::to_string(mass));
}

void validate(const NonStationaryPolicy& policy, const FiniteHorizonMdp& mdp) {
  require(policy.horizon == mdp.horizon, ErrorCode::dimension_mismatch,
          "policy holds " + std::to_string(policy.horizon) + " decision steps but mdp horizon is " +
              std::to_string(mdp.horizon));
  require(policy.num_states == mdp.num_states, ErrorCode::dimension_mismatch,
          "policy covers " + std::to_string(policy.num_states) + " states but mdp has " +
              std::to_string(mdp.num_states));
  require(policy.actions.size() ==
              static_cast<size_t>(policy.horizon) * static_cast<size_t>(policy.num_states),
          ErrorCode::dimension_mismatch, "policy action table size mismatch");
  for (int a : policy.actions) {
    require(a >= 0 && a < mdp.num_actions, ErrorCode::invalid_argument,
            "policy action " + std::to_string(a) + " outside [0, " +
                std::to_string(mdp.num_actions) + ")");
  }
}

SurrogateReward zero_surrogate(int num_states, int horizon) {
  SurrogateReward s;
  s.num_states = num_states;
  s.horizon = horizon;
  s.values.assign(static_cast<size_t>(num_states) * horizon, 0.0);
  return s;
}

void validate(const SurrogateReward& surrogate, const FiniteHorizonMdp& mdp) {
  require(surrogate.num_states == mdp.num_states, ErrorCode::dimension_mismatch,
          "surrogate covers " + std::to_string(surrogate.num_states) + " states but mdp has " +
              std::to_string(mdp.num_states));
  require(surrogate.horizon == mdp.horizon, ErrorCode::dimension_mismatch,
          "surrogate horizon " + std::to_string(surrogate.horizon) + " != mdp horizon " +
              std::to_string(mdp.horizon));
  require(surrogate.values.size() ==
              static_cast<size_t>(surrogate.num_states) * static_cast<size_t>(surrogate.horizon),
          ErrorCode::dimension_mismatch, "surrogate table size mismatch");
  for (double v : surrogate.values) {
    require(std::isfinite(v), ErrorCode::invalid_argument, "surrogate entry is not finite");
  }
}

double Trajectory::undiscounted_return() const {
  double sum = 0.0;
  for (double r : rewards) sum += r;
  return sum;
}

double Trajectory::discounted_surrogate_return(const SurrogateReward& surrogate,
                                               double gamma) const {
  double sum = 0.0;
  double weight = 1.0;
  for (size_t k = 0; k < rewards.size(); ++k) {
    sum += weight * surrogate.at(states[k], static_cast<int>(k));
    weight *= gamma;
  }
  return sum;
}

double Trajectory::discounted_state_reward_return(std::span<const double> state_reward,
                                                  double gamma) const {
  double sum = 0.0;
  double weight = 1.0;
  for (size_t k = 0; k < rewards.size(); ++k) {
    sum += weight * state_reward[states[k]];
    weight *= gamma;
  }
  return sum;
}

Trajectory Trajectory::suffix(int offset) const {
  Trajectory out;
  out.states.assign(states.begin() + offset, states.end());
  out.actions.assign(actions.begin() + offset, actions.end());
  out.rewards.assign(rewards.begin() + offset, rewards.end());
  out.start_time = start_time + offset;
  return out;
}

void validate(const Trajectory& traj, const FiniteHorizonMdp& mdp) {
  require(!traj.states.empty(), ErrorCode::invalid_argument, "trajectory has no states");
  require(traj.actions.size() + 1 == traj.states.size(), ErrorCode::dimension_mismatch,
          "trajectory actions length " + std::to_string(traj.actions.size()) +
              " must be one less than states length " + std::to_string(traj.states.size()));
  require(traj.rewards.size() + 1 == traj.states.size(), ErrorCode::dimension_mismatch,
          "trajectory rewards length " + std::to_string(traj.rewards.size()) +
              " must be one less than states length " + std::to_string(traj.states.size()));
  require(traj.start_time >= 0 &&
              traj.start_time + static_cast<int>(traj.states.size()) <= mdp.horizon + 1,
          ErrorCode::invalid_argument,
          "trajectory spans [" + std::to_string(traj.start_time) + ", " +
              std::to_string(traj.start_time + traj.states.size()) + ") beyond horizon " +
              std::to_string(mdp.horizon));
  for (int s : traj.states) {
    require(s >= 0 && s < mdp.num_states, ErrorCode::invalid_argument,
            "trajectory state " + std::to_string(s) + " out of range");
  }
  for (int a : traj.actions) {
    require(a >= 0 && a < mdp.num_actions, ErrorCode::invalid_argument,
            "trajectory action " + std::to_string(a) + " out of range");
  }
}

}  // namespace rewardlab

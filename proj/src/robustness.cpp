#include "rewardlab/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rewardlab/errors.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/solver.hpp"

namespace rewardlab {

void validate(const PerturbationSpec& spec, const FiniteHorizonMdp& mdp) {
  require(spec.epsilon_p >= 0.0 && spec.epsilon_p <= 2.0, ErrorCode::invalid_argument,
          "epsilon_p outside [0, 2] (L1 distance between distributions is at most 2)");
  if (spec.mode == PerturbationMode::end_concentrated) {
    require(spec.last_layers >= 1 && spec.last_layers <= mdp.horizon,
            ErrorCode::invalid_argument,
            "last_layers " + std::to_string(spec.last_layers) + " outside [1, horizon]");
  }
}

std::vector<uint8_t> late_window_states(const FiniteHorizonMdp& mdp, int last_layers) {
  require(last_layers >= 1 && last_layers <= mdp.horizon, ErrorCode::invalid_argument,
          "last_layers outside [1, horizon]");
  const auto reachable = reachable_states_by_time(mdp);
  const int window_start = mdp.horizon - last_layers;
  std::vector<uint8_t> early(mdp.num_states, 0), late(mdp.num_states, 0);
  for (int t = 0; t <= mdp.horizon; ++t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      if (!reachable[t][s]) continue;
      (t < window_start ? early[s] : late[s]) = 1;
    }
  }
  for (int s = 0; s < mdp.num_states; ++s) {
    require(!(early[s] && late[s]), ErrorCode::unsupported,
            "kernel is not layered: state " + std::to_string(s) +
                " is reachable both before and inside the final " +
                std::to_string(last_layers) + " steps");
  }
  return late;
}

FiniteHorizonMdp perturb_kernel(const FiniteHorizonMdp& mdp, const PerturbationSpec& spec) {
  validate(spec, mdp);
  FiniteHorizonMdp out = mdp;
  if (spec.epsilon_p == 0.0) return out;

  std::vector<uint8_t> selected(mdp.num_states, 1);
  if (spec.mode == PerturbationMode::end_concentrated) {
    selected = late_window_states(mdp, spec.last_layers);
  }

  Rng rng(spec.seed);
  for (int s = 0; s < mdp.num_states; ++s) {
    if (!selected[s] || mdp.absorbing[s]) continue;
    for (int a = 0; a < mdp.num_actions; ++a) {
      auto row = out.row_mut(s, a);
      const int n = static_cast<int>(row.size());

      // Split entries into a random donor half and the receiving rest.
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      for (int i = n; i > 1; --i) std::swap(order[i - 1], order[rng.next_index(i)]);
      const int donors = std::max(1, n / 2);

      double donor_mass = 0.0;
      for (int i = 0; i < donors; ++i) donor_mass += row[order[i]];
      if (donor_mass == 0.0) continue;

      // Move strictly less than the budget so the measured row L1 distance
      // (2 * moved mass, up to rounding) stays below epsilon_p.
      const double utilization = 0.5 + 0.49 * rng.next_double();
      const double moved = std::min(utilization * spec.epsilon_p / 2.0, donor_mass);
      const double donor_scale = 1.0 - moved / donor_mass;
      for (int i = 0; i < donors; ++i) row[order[i]] *= donor_scale;
      const double gain = moved / (n - donors);
      for (int i = donors; i < n; ++i) row[order[i]] += gain;

      double sum = 0.0;
      for (double p : row) sum += p;
      for (double& p : row) p /= sum;
    }
  }
  validate(out);
  return out;
}

double simulation_gap(const FiniteHorizonMdp& mdp, const FiniteHorizonMdp& perturbed,
                      const NonStationaryPolicy& policy, double gamma,
                      const SurrogateReward* surrogate) {
  require(mdp.num_states == perturbed.num_states && mdp.num_actions == perturbed.num_actions &&
              mdp.horizon == perturbed.horizon,
          ErrorCode::dimension_mismatch, "perturbed mdp dimensions differ from the original");
  const ValueTable base = evaluate_policy(mdp, policy, gamma, surrogate);
  const ValueTable shifted = evaluate_policy(perturbed, policy, gamma, surrogate);
  double gap = 0.0;
  for (int s = 0; s < mdp.num_states; ++s) {
    if (mdp.initial_dist[s] > 0.0) {
      gap = std::max(gap, std::abs(shifted.at(0, s) - base.at(0, s)));
    }
  }
  return gap;
}

BoundCheck check_bound(double gap, double gamma, int horizon, std::optional<int> last_layers,
                       double r_max, double epsilon_p) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::invalid_argument,
          "bound undefined at gamma = " + std::to_string(gamma) +
              "; it requires gamma in (0, 1)");
  require(horizon >= 1, ErrorCode::invalid_argument, "horizon must be positive");
  require(r_max >= 0.0 && epsilon_p >= 0.0, ErrorCode::invalid_argument,
          "r_max and epsilon_p must be nonnegative");

  double bound;
  const double denom = 2.0 * (1.0 - gamma) * (1.0 - gamma);
  if (last_layers) {
    const int window = *last_layers;
    require(window >= 1 && window <= horizon, ErrorCode::invalid_argument,
            "last_layers outside [1, horizon]");
    bound = std::pow(gamma, horizon - window) * gamma *
            (1.0 - std::pow(gamma, window)) * r_max / denom * epsilon_p;
  } else {
    bound = gamma * (1.0 - std::pow(gamma, horizon)) * r_max / denom * epsilon_p;
  }

  BoundCheck check;
  check.bound = bound;
  check.slack = bound - gap;
  check.holds = gap <= bound;
  return check;
}

double bound_improvement_factor(double gamma, int horizon, int last_layers) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::invalid_argument,
          "improvement factor requires gamma in (0, 1)");
  require(last_layers >= 1 && last_layers <= horizon, ErrorCode::invalid_argument,
          "last_layers outside [1, horizon]");
  return std::pow(gamma, horizon - last_layers) * (1.0 - std::pow(gamma, last_layers)) /
         (1.0 - std::pow(gamma, horizon));
}

}  // namespace rewardlab

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rewardlab/mdp.hpp"

namespace rewardlab {

enum class PerturbationMode {
  uniform_all_states,  // every non-absorbing row may move mass
  end_concentrated,    // only rows of states reachable solely in the last L steps
};

struct PerturbationSpec {
  double epsilon_p = 0.0;  // L1 budget per (state, action) row; at most 2
  PerturbationMode mode = PerturbationMode::uniform_all_states;
  int last_layers = 0;  // L, required in end_concentrated mode (1 <= L <= horizon)
  uint64_t seed = 0;
};

void validate(const PerturbationSpec& spec, const FiniteHorizonMdp& mdp);

/// States reachable at some time >= horizon - L but never earlier. Errors
/// with ErrorCode::unsupported when the kernel is not layered that way
/// (some state is reachable both before and inside the final window).
std::vector<uint8_t> late_window_states(const FiniteHorizonMdp& mdp, int last_layers);

/// Returns a copy of the MDP whose selected transition rows each move at most
/// epsilon_p/2 of probability mass from a random donor subset to the
/// remaining entries (so the row L1 distance stays <= epsilon_p), then are
/// re-normalized. Rows outside the selection - and absorbing rows - are
/// bit-identical to the input.
FiniteHorizonMdp perturb_kernel(const FiniteHorizonMdp& mdp, const PerturbationSpec& spec);

/// max over initial-distribution support of |v_perturbed(0, s) - v(0, s)|,
/// both evaluated with the same reward (surrogate when given).
double simulation_gap(const FiniteHorizonMdp& mdp, const FiniteHorizonMdp& perturbed,
                      const NonStationaryPolicy& policy, double gamma,
                      const SurrogateReward* surrogate = nullptr);

struct BoundCheck {
  bool holds = false;
  double bound = 0.0;
  double slack = 0.0;  // bound - gap
};

/// Closed-form value-error bound for a per-row L1 kernel error of epsilon_p:
///
///   gamma (1 - gamma^T) Rmax / (2 (1-gamma)^2) * epsilon_p
///
/// and, when the error is confined to the last L steps (pass `last_layers`),
/// the tighter
///
///   gamma^(T-L) gamma (1 - gamma^L) Rmax / (2 (1-gamma)^2) * epsilon_p.
///
/// Undefined at gamma = 1 (the denominator vanishes); r_max is the largest
/// reward magnitude of the evaluated reward table.
BoundCheck check_bound(double gap, double gamma, int horizon, std::optional<int> last_layers,
                       double r_max, double epsilon_p);

/// The factor by which the end-concentrated bound improves on the uniform
/// one: gamma^(T-L) (1 - gamma^L) / (1 - gamma^T).
double bound_improvement_factor(double gamma, int horizon, int last_layers);

}  // namespace rewardlab

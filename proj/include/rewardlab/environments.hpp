#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rewardlab/mdp.hpp"

namespace rewardlab {

/// Grid actions for puddle worlds, in index order.
enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

/// Rectangular gridworld: an absorbing goal column on the right, a uniform
/// step cost elsewhere, and a cheaper puddle region that tempts short-horizon
/// agents to stall inside it.
struct PuddleLayout {
  int width = 0;
  int height = 0;
  int start_row = 0;
  int start_col = 0;
  int goal_column = 0;
  std::vector<std::pair<int, int>> puddle_cells;  // (row, col)
  int horizon = 0;
  double r_step = -1.0;
  double r_puddle = -0.5;
  double r_goal = 0.0;

  int cell_index(int row, int col) const { return row * width + col; }
  bool is_puddle(int row, int col) const;
  bool is_goal(int col) const { return col == goal_column; }
};

void validate(const PuddleLayout& layout);

/// The committed reference layout. Its solved constants (optimal total return
/// -6.5, short-horizon trap return -11, critical discount near 0.7) are
/// frozen test data; the same layout ships at data/puddle_canonical.json.
PuddleLayout canonical_puddle_layout();

/// Two-action fork used as the smallest discount-sensitivity example: from
/// the start state, `left` (action 0) reaches a state paying r_a and stays
/// there for a second payment, while `right` (action 1) pays r_b then r_c.
/// The start state itself pays nothing; the MDP runs three reward epochs so
/// both two-move paths pay in full.
FiniteHorizonMdp make_four_state_mdp(double r_a, double r_b, double r_c);

/// Line of n states started at state 0. Action 0 moves left, action 1 moves
/// right, the left wall blocks and the far end absorbs. `horizon` counts
/// movement steps; the constructed MDP carries one extra reward epoch so the
/// state reached by the final move still collects its reward.
FiniteHorizonMdp make_chain_mdp(int n, std::span<const double> rewards, int horizon);

FiniteHorizonMdp make_puddle_world(const PuddleLayout& layout);

/// Dirichlet(1) transition rows, rewards uniform in [-1, 1], uniform initial
/// distribution, no absorbing states. Deterministic for a fixed seed.
FiniteHorizonMdp make_random_mdp(int num_states, int num_actions, int horizon, uint64_t seed);

/// Strictly layered random MDP: layer t transitions only into layer t+1 and
/// the final layer absorbs, so states of late layers are unreachable early.
/// This is the structure required by end-concentrated kernel perturbations.
/// The horizon equals num_layers - 1.
FiniteHorizonMdp make_layered_random_mdp(int num_layers, int layer_width, int num_actions,
                                         uint64_t seed);

}  // namespace rewardlab

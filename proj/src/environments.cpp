#include "rewardlab/environments.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "rewardlab/errors.hpp"
#include "rewardlab/rng.hpp"

namespace rewardlab {

namespace {

FiniteHorizonMdp blank_mdp(int num_states, int num_actions, int horizon) {
  FiniteHorizonMdp mdp;
  mdp.num_states = num_states;
  mdp.num_actions = num_actions;
  mdp.horizon = horizon;
  mdp.transition.assign(static_cast<size_t>(num_states) * num_actions * num_states, 0.0);
  mdp.reward.assign(num_states, 0.0);
  mdp.initial_dist.assign(num_states, 0.0);
  mdp.absorbing.assign(num_states, 0);
  return mdp;
}

void set_deterministic(FiniteHorizonMdp& mdp, int s, int a, int next) {
  mdp.row_mut(s, a)[next] = 1.0;
}

/// Shortest move count from the start to the goal column (4-connected).
int shortest_path_moves(const PuddleLayout& layout) {
  std::vector<int> dist(static_cast<size_t>(layout.width) * layout.height, -1);
  std::deque<std::pair<int, int>> queue;
  queue.emplace_back(layout.start_row, layout.start_col);
  dist[layout.cell_index(layout.start_row, layout.start_col)] = 0;
  const int dr[4] = {-1, 1, 0, 0};
  const int dc[4] = {0, 0, -1, 1};
  while (!queue.empty()) {
    auto [r, c] = queue.front();
    queue.pop_front();
    if (layout.is_goal(c)) return dist[layout.cell_index(r, c)];
    for (int k = 0; k < 4; ++k) {
      int nr = r + dr[k], nc = c + dc[k];
      if (nr < 0 || nr >= layout.height || nc < 0 || nc >= layout.width) continue;
      int idx = layout.cell_index(nr, nc);
      if (dist[idx] < 0) {
        dist[idx] = dist[layout.cell_index(r, c)] + 1;
        queue.emplace_back(nr, nc);
      }
    }
  }
  return -1;
}

}  // namespace

bool PuddleLayout::is_puddle(int row, int col) const {
  return std::find(puddle_cells.begin(), puddle_cells.end(), std::make_pair(row, col)) !=
         puddle_cells.end();
}

void validate(const PuddleLayout& layout) {
  require(layout.width > 0 && layout.height > 0, ErrorCode::invalid_argument,
          "puddle layout dimensions must be positive");
  require(layout.start_row >= 0 && layout.start_row < layout.height && layout.start_col >= 0 &&
              layout.start_col < layout.width,
          ErrorCode::invalid_argument,
          "start cell (" + std::to_string(layout.start_row) + ", " +
              std::to_string(layout.start_col) + ") out of bounds");
  require(layout.goal_column >= 0 && layout.goal_column < layout.width,
          ErrorCode::invalid_argument, "goal column out of bounds");
  require(!layout.is_goal(layout.start_col), ErrorCode::invalid_argument,
          "start cell lies in the goal column");
  for (auto [r, c] : layout.puddle_cells) {
    require(r >= 0 && r < layout.height && c >= 0 && c < layout.width,
            ErrorCode::invalid_argument,
            "puddle cell (" + std::to_string(r) + ", " + std::to_string(c) + ") out of bounds");
    require(!layout.is_goal(c), ErrorCode::invalid_argument,
            "puddle cell (" + std::to_string(r) + ", " + std::to_string(c) +
                ") overlaps the goal column");
  }
  int shortest = shortest_path_moves(layout);
  require(shortest >= 0, ErrorCode::invalid_argument, "goal column unreachable from start");
  require(layout.horizon >= shortest, ErrorCode::invalid_argument,
          "horizon " + std::to_string(layout.horizon) + " shorter than the shortest path (" +
              std::to_string(shortest) + " moves)");
}

PuddleLayout canonical_puddle_layout() {
  PuddleLayout layout;
  layout.width = 8;
  layout.height = 5;
  layout.start_row = 4;
  layout.start_col = 0;
  layout.goal_column = 7;
  layout.puddle_cells = {{2, 3}, {2, 4}, {3, 3}, {3, 4}, {4, 4}};
  layout.horizon = 18;
  layout.r_step = -1.0;
  layout.r_puddle = -0.5;
  layout.r_goal = 0.0;
  return layout;
}

FiniteHorizonMdp make_four_state_mdp(double r_a, double r_b, double r_c) {
  // States: 0 = start, 1 = a (left branch), 2 = b, 3 = c (right branch).
  FiniteHorizonMdp mdp = blank_mdp(4, 2, 3);
  mdp.reward = {0.0, r_a, r_b, r_c};
  mdp.initial_dist[0] = 1.0;
  set_deterministic(mdp, 0, 0, 1);  // left
  set_deterministic(mdp, 0, 1, 2);  // right
  for (int a = 0; a < 2; ++a) {
    set_deterministic(mdp, 1, a, 1);
    set_deterministic(mdp, 2, a, 3);
    set_deterministic(mdp, 3, a, 3);
  }
  mdp.absorbing[1] = 1;
  mdp.absorbing[3] = 1;
  validate(mdp);
  return mdp;
}

FiniteHorizonMdp make_chain_mdp(int n, std::span<const double> rewards, int horizon) {
  require(n >= 2, ErrorCode::invalid_argument, "chain needs at least 2 states");
  require(static_cast<int>(rewards.size()) == n, ErrorCode::dimension_mismatch,
          "chain rewards length " + std::to_string(rewards.size()) + " != n " + std::to_string(n));
  require(horizon >= 1, ErrorCode::invalid_argument, "chain horizon must be positive");

  FiniteHorizonMdp mdp = blank_mdp(n, 2, horizon + 1);
  mdp.reward.assign(rewards.begin(), rewards.end());
  mdp.initial_dist[0] = 1.0;
  for (int s = 0; s < n; ++s) {
    if (s == n - 1) {
      set_deterministic(mdp, s, 0, s);
      set_deterministic(mdp, s, 1, s);
      mdp.absorbing[s] = 1;
      continue;
    }
    set_deterministic(mdp, s, 0, std::max(0, s - 1));  // left, wall blocks at 0
    set_deterministic(mdp, s, 1, s + 1);               // right
  }
  validate(mdp);
  return mdp;
}

FiniteHorizonMdp make_puddle_world(const PuddleLayout& layout) {
  validate(layout);
  const int cells = layout.width * layout.height;
  FiniteHorizonMdp mdp = blank_mdp(cells, 4, layout.horizon);
  mdp.initial_dist[layout.cell_index(layout.start_row, layout.start_col)] = 1.0;

  const int dr[4] = {-1, 1, 0, 0};  // up, down, left, right
  const int dc[4] = {0, 0, -1, 1};
  for (int r = 0; r < layout.height; ++r) {
    for (int c = 0; c < layout.width; ++c) {
      int s = layout.cell_index(r, c);
      if (layout.is_goal(c)) {
        mdp.reward[s] = layout.r_goal;
        mdp.absorbing[s] = 1;
        for (int a = 0; a < 4; ++a) set_deterministic(mdp, s, a, s);
        continue;
      }
      mdp.reward[s] = layout.is_puddle(r, c) ? layout.r_puddle : layout.r_step;
      for (int a = 0; a < 4; ++a) {
        int nr = r + dr[a], nc = c + dc[a];
        bool blocked = nr < 0 || nr >= layout.height || nc < 0 || nc >= layout.width;
        set_deterministic(mdp, s, a, blocked ? s : layout.cell_index(nr, nc));
      }
    }
  }
  validate(mdp);
  return mdp;
}

FiniteHorizonMdp make_random_mdp(int num_states, int num_actions, int horizon, uint64_t seed) {
  require(num_states > 0 && num_actions > 0 && horizon > 0, ErrorCode::invalid_argument,
          "random mdp dimensions must be positive");
  FiniteHorizonMdp mdp = blank_mdp(num_states, num_actions, horizon);
  Rng rng(seed);
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < num_actions; ++a) {
      auto row = mdp.row_mut(s, a);
      double sum = 0.0;
      for (double& p : row) {
        p = -std::log(rng.next_open());  // Exp(1) draws; normalized -> Dirichlet(1)
        sum += p;
      }
      for (double& p : row) p /= sum;
    }
    mdp.reward[s] = 2.0 * rng.next_double() - 1.0;
    mdp.initial_dist[s] = 1.0 / num_states;
  }
  validate(mdp);
  return mdp;
}

FiniteHorizonMdp make_layered_random_mdp(int num_layers, int layer_width, int num_actions,
                                         uint64_t seed) {
  require(num_layers >= 2 && layer_width >= 1 && num_actions >= 1, ErrorCode::invalid_argument,
          "layered mdp needs >= 2 layers and positive width/actions");
  const int num_states = num_layers * layer_width;
  FiniteHorizonMdp mdp = blank_mdp(num_states, num_actions, num_layers - 1);
  Rng rng(seed);

  auto state_of = [layer_width](int layer, int k) { return layer * layer_width + k; };
  for (int layer = 0; layer < num_layers; ++layer) {
    for (int k = 0; k < layer_width; ++k) {
      int s = state_of(layer, k);
      mdp.reward[s] = 2.0 * rng.next_double() - 1.0;
      if (layer == num_layers - 1) {
        for (int a = 0; a < num_actions; ++a) set_deterministic(mdp, s, a, s);
        mdp.absorbing[s] = 1;
        continue;
      }
      for (int a = 0; a < num_actions; ++a) {
        auto row = mdp.row_mut(s, a);
        double sum = 0.0;
        for (int j = 0; j < layer_width; ++j) {
          double w = -std::log(rng.next_open());
          row[state_of(layer + 1, j)] = w;
          sum += w;
        }
        for (int j = 0; j < layer_width; ++j) row[state_of(layer + 1, j)] /= sum;
      }
    }
  }
  for (int k = 0; k < layer_width; ++k) {
    mdp.initial_dist[state_of(0, k)] = 1.0 / layer_width;
  }
  validate(mdp);
  return mdp;
}

}  // namespace rewardlab

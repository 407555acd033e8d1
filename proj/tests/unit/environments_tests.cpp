#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/serialize.hpp"
#include "rewardlab/solver.hpp"

using namespace rewardlab;

TEST_CASE("symmetric fork rewards make both arms equal") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(1.0, 1.0, 1.0);
  NonStationaryPolicy left{mdp.horizon, mdp.num_states,
                           std::vector<int>(static_cast<size_t>(mdp.horizon) * mdp.num_states, 0)};
  NonStationaryPolicy right = left;
  for (int& a : right.actions) a = 1;
  CHECK(total_return(mdp, left) == doctest::Approx(total_return(mdp, right)));
  CHECK(find_gamma_crit(mdp, make_gamma_grid(0.1), 1e-9) == 0.0);
}

TEST_CASE("fork with distant payoff prefers right under the total objective") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const Solution sol = solve_optimal(mdp, 1.0);
  CHECK(sol.policy.at(0, 0) == 1);
  CHECK(total_return(mdp, sol.policy) == doctest::Approx(2.0));
}

TEST_CASE("two-state chain: one move right collects the far reward") {
  const double rewards[] = {0.0, 1.0};
  const FiniteHorizonMdp mdp = make_chain_mdp(2, rewards, 1);
  const Solution sol = solve_optimal(mdp, 1.0);
  CHECK(total_return(mdp, sol.policy) == doctest::Approx(1.0));
  CHECK(sol.policy.at(0, 0) == 1);
}

TEST_CASE("zero-reward chain: every policy is worth zero") {
  const double rewards[] = {0.0, 0.0, 0.0};
  const FiniteHorizonMdp mdp = make_chain_mdp(3, rewards, 4);
  CHECK(total_return(mdp, solve_optimal(mdp, 1.0).policy) == 0.0);
  NonStationaryPolicy left{mdp.horizon, mdp.num_states,
                           std::vector<int>(static_cast<size_t>(mdp.horizon) * mdp.num_states, 0)};
  CHECK(total_return(mdp, left) == 0.0);
}

TEST_CASE("chain with a near distractor has a positive critical discount") {
  // A small payoff next door, a large one at the far end.
  std::vector<double> rewards(10, 0.0);
  rewards[1] = 0.2;
  rewards[9] = 1.0;
  const FiniteHorizonMdp mdp = make_chain_mdp(10, rewards, 11);

  // Hand-computed path sums on the deterministic chain: marching right visits
  // the 0.2 once and then sits on the absorbing end for three payments;
  // bouncing on the distractor pays 0.2 every other step.
  CHECK(total_return(mdp, solve_optimal(mdp, 1.0).policy) == doctest::Approx(3.2));

  const auto grid = make_gamma_grid(0.05);
  const double crit = find_gamma_crit(mdp, grid, 1e-9);
  CHECK(crit > 0.0);
  CHECK(total_return(mdp, solve_optimal(mdp, grid.front()).policy) < 3.2 - 1e-9);
}

TEST_CASE("chain rejects mismatched reward length") {
  const double rewards[] = {0.0, 1.0};
  CHECK_THROWS_AS(make_chain_mdp(3, rewards, 2), Error);
}

TEST_CASE("canonical puddle layout reproduces the committed constants") {
  const PuddleLayout layout = canonical_puddle_layout();
  const FiniteHorizonMdp mdp = make_puddle_world(layout);

  CHECK(total_return(mdp, solve_optimal(mdp, 1.0).policy) == doctest::Approx(-6.5).epsilon(1e-12));
  CHECK(total_return(mdp, solve_optimal(mdp, 0.3).policy) ==
        doctest::Approx(-11.0).epsilon(1e-12));
  const double crit = find_gamma_crit(mdp, make_gamma_grid(0.01), 1e-9);
  CHECK(crit >= 0.65);
  CHECK(crit <= 0.75);
}

TEST_CASE("optimal puddle path crosses exactly one puddle cell") {
  const PuddleLayout layout = canonical_puddle_layout();
  const FiniteHorizonMdp mdp = make_puddle_world(layout);
  const Trajectory traj = sample_trajectory(mdp, solve_optimal(mdp, 1.0).policy, 0.0, 1);

  int ordinary = 0, puddle = 0;
  for (size_t k = 0; k + 1 < traj.states.size(); ++k) {
    const int s = traj.states[k];
    const int row = s / layout.width, col = s % layout.width;
    if (layout.is_goal(col)) break;
    layout.is_puddle(row, col) ? ++puddle : ++ordinary;
  }
  CHECK(puddle == 1);
  CHECK(ordinary == 6);  // -6.5 decomposes as 6*(-1) + 1*(-0.5)
}

TEST_CASE("puddle-free layout costs the shortest path") {
  PuddleLayout layout = canonical_puddle_layout();
  layout.puddle_cells.clear();
  const FiniteHorizonMdp mdp = make_puddle_world(layout);
  CHECK(total_return(mdp, solve_optimal(mdp, 1.0).policy) == doctest::Approx(-7.0));
}

TEST_CASE("layout validation rejects malformed inputs") {
  PuddleLayout bad_start = canonical_puddle_layout();
  bad_start.start_row = 9;
  CHECK_THROWS_AS(make_puddle_world(bad_start), Error);

  PuddleLayout puddle_on_goal = canonical_puddle_layout();
  puddle_on_goal.puddle_cells.push_back({1, 7});
  CHECK_THROWS_AS(make_puddle_world(puddle_on_goal), Error);

  PuddleLayout too_short = canonical_puddle_layout();
  too_short.horizon = 3;
  CHECK_THROWS_AS(make_puddle_world(too_short), Error);
}

TEST_CASE("random MDPs are deterministic per seed and well formed") {
  const FiniteHorizonMdp a = make_random_mdp(6, 3, 7, 2024);
  const FiniteHorizonMdp b = make_random_mdp(6, 3, 7, 2024);
  CHECK(a.transition == b.transition);
  CHECK(a.reward == b.reward);

  for (uint64_t seed = 0; seed < 100; ++seed) {
    const FiniteHorizonMdp mdp = make_random_mdp(5, 2, 4, seed);
    for (int s = 0; s < mdp.num_states; ++s) {
      for (int act = 0; act < mdp.num_actions; ++act) {
        double sum = 0.0;
        for (double p : mdp.row(s, act)) sum += p;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("layered MDPs only flow forward") {
  const FiniteHorizonMdp mdp = make_layered_random_mdp(5, 3, 2, 77);
  const int width = 3;
  for (int s = 0; s < mdp.num_states; ++s) {
    const int layer = s / width;
    for (int a = 0; a < mdp.num_actions; ++a) {
      for (int next = 0; next < mdp.num_states; ++next) {
        if (mdp.p(s, a, next) == 0.0) continue;
        const int next_layer = next / width;
        if (layer == 4) {
          CHECK(next == s);
        } else {
          CHECK(next_layer == layer + 1);
        }
      }
    }
  }
}

TEST_CASE("shipped canonical layout file matches the built-in constants") {
  std::ifstream in(std::string(REWARDLAB_SOURCE_DIR) + "/data/puddle_canonical.json");
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const PuddleLayout from_file = layout_from_json(buffer.str());
  const PuddleLayout builtin = canonical_puddle_layout();
  CHECK(layout_to_json(from_file) == layout_to_json(builtin));
}

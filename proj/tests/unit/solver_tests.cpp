#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/solver.hpp"

using namespace rewardlab;

namespace {

NonStationaryPolicy constant_policy(const FiniteHorizonMdp& mdp, int action) {
  NonStationaryPolicy policy;
  policy.horizon = mdp.horizon;
  policy.num_states = mdp.num_states;
  policy.actions.assign(static_cast<size_t>(mdp.horizon) * mdp.num_states, action);
  return policy;
}

NonStationaryPolicy random_policy(const FiniteHorizonMdp& mdp, uint64_t seed) {
  Rng rng(seed);
  NonStationaryPolicy policy = constant_policy(mdp, 0);
  for (int& a : policy.actions) a = rng.next_index(mdp.num_actions);
  return policy;
}

}  // namespace

TEST_CASE("four-state fork: left path value at gamma 1") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const ValueTable v = evaluate_policy(mdp, constant_policy(mdp, 0), 1.0);
  CHECK(v.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));  // r_a paid twice
  const ValueTable v_right = evaluate_policy(mdp, constant_policy(mdp, 1), 1.0);
  CHECK(v_right.at(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("gamma 0 policy evaluation is the state reward everywhere") {
  const FiniteHorizonMdp mdp = make_random_mdp(5, 3, 6, 99);
  const ValueTable v = evaluate_policy(mdp, random_policy(mdp, 7), 0.0);
  for (int t = 0; t < mdp.horizon; ++t) {
    for (int s = 0; s < mdp.num_states; ++s) {
      CHECK(v.at(t, s) == mdp.reward[s]);
    }
  }
  for (int s = 0; s < mdp.num_states; ++s) CHECK(v.at(mdp.horizon, s) == 0.0);
}

TEST_CASE("chain evaluation matches forward path enumeration") {
  const double rewards[] = {0.3, -0.2, 0.5, 0.1, 0.9};
  const FiniteHorizonMdp mdp = make_chain_mdp(5, rewards, 4);
  for (int action = 0; action < 2; ++action) {
    const NonStationaryPolicy policy = constant_policy(mdp, action);
    const ValueTable v = evaluate_policy(mdp, policy, 0.9);
    for (int t = 0; t <= mdp.horizon; ++t) {
      for (int s = 0; s < mdp.num_states; ++s) {
        const double expected = oracles::path_expectation(mdp, policy, 0.9, nullptr, t, s);
        CHECK(v.at(t, s) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("backward induction equals path enumeration on random MDPs") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(derive_seed(4242, 0, seed));
    const int states = 2 + rng.next_index(5);   // 2..6
    const int actions = 1 + rng.next_index(3);  // 1..3
    const int horizon = 1 + rng.next_index(5);  // 1..5
    const FiniteHorizonMdp mdp = make_random_mdp(states, actions, horizon, seed);
    const NonStationaryPolicy policy = random_policy(mdp, seed + 1);
    for (double gamma : {0.0, 0.37, 0.9, 1.0}) {
      const ValueTable v = evaluate_policy(mdp, policy, gamma);
      for (int t = 0; t <= horizon; ++t) {
        for (int s = 0; s < states; ++s) {
          const double expected = oracles::path_expectation(mdp, policy, gamma, nullptr, t, s);
          CHECK(v.at(t, s) == doctest::Approx(expected).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("optimal values dominate every enumerated policy") {
  // Instances small enough to enumerate the full policy space.
  const FiniteHorizonMdp small_a = make_random_mdp(3, 2, 3, 11);  // 2^9 policies
  const FiniteHorizonMdp small_b = make_random_mdp(2, 3, 2, 12);  // 3^4 policies
  for (const FiniteHorizonMdp& mdp : {small_a, small_b}) {
    for (double gamma : {0.0, 0.5, 1.0}) {
      const Solution sol = solve_optimal(mdp, gamma);
      double best_start = -1e300;
      oracles::for_each_policy(mdp, [&](const NonStationaryPolicy& policy) {
        for (int t = 0; t <= mdp.horizon; ++t) {
          for (int s = 0; s < mdp.num_states; ++s) {
            const double value = oracles::path_expectation(mdp, policy, gamma, nullptr, t, s);
            CHECK(sol.values.at(t, s) >= value - 1e-9);
          }
        }
        best_start =
            std::max(best_start, oracles::path_expectation(mdp, policy, gamma, nullptr, 0, 0));
      });
      CHECK(sol.values.at(0, 0) == doctest::Approx(best_start).epsilon(1e-9));
    }
  }
}

TEST_CASE("puddle sitting policy collects -11") {
  const PuddleLayout layout = canonical_puddle_layout();
  const FiniteHorizonMdp mdp = make_puddle_world(layout);
  // Walk right along the bottom row, then bounce between the two stacked
  // puddle cells at column 4.
  NonStationaryPolicy policy = constant_policy(mdp, kRight);
  for (int t = 0; t < mdp.horizon; ++t) {
    policy.at(t, layout.cell_index(4, 4)) = kUp;
    policy.at(t, layout.cell_index(3, 4)) = kDown;
  }
  CHECK(total_return(mdp, policy) == doctest::Approx(-11.0).epsilon(1e-12));
}

TEST_CASE("total return basics") {
  const FiniteHorizonMdp fork = make_four_state_mdp(0.5, 0.0, 2.0);
  CHECK(total_return(fork, constant_policy(fork, 1)) == doctest::Approx(2.0));

  FiniteHorizonMdp zero = make_random_mdp(4, 2, 5, 3);
  zero.reward.assign(zero.num_states, 0.0);
  CHECK(total_return(zero, random_policy(zero, 17)) == 0.0);
}

TEST_CASE("four-state optimal action flips at the critical discount") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  CHECK(solve_optimal(mdp, 0.5).policy.at(0, 0) == 1);  // right
  CHECK(solve_optimal(mdp, 0.2).policy.at(0, 0) == 0);  // left
}

TEST_CASE("four-state gamma sweep: single switch at 0.34") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const auto grid = make_gamma_grid(0.01);
  CHECK(find_gamma_crit(mdp, grid, 1e-9) == doctest::Approx(0.34).epsilon(1e-12));

  int switches = 0;
  int previous = solve_optimal(mdp, grid[0]).policy.at(0, 0);
  for (double gamma : grid) {
    const int action = solve_optimal(mdp, gamma).policy.at(0, 0);
    if (action != previous) ++switches;
    previous = action;
  }
  CHECK(switches == 1);
}

TEST_CASE("single-action MDP: critical discount is the grid minimum") {
  const FiniteHorizonMdp mdp = make_random_mdp(4, 1, 5, 8);
  const auto grid = make_gamma_grid(0.1);
  CHECK(find_gamma_crit(mdp, grid, 1e-9) == grid.front());
}

TEST_CASE("puddle critical discount sits near 0.7") {
  const FiniteHorizonMdp mdp = make_puddle_world(canonical_puddle_layout());
  const double crit = find_gamma_crit(mdp, make_gamma_grid(0.01), 1e-9);
  CHECK(std::abs(crit - 0.7) <= 0.05);
}

TEST_CASE("total return of the gamma-optimal policy is flat above gamma_crit") {
  for (const FiniteHorizonMdp& mdp :
       {make_four_state_mdp(0.5, 0.0, 2.0), make_puddle_world(canonical_puddle_layout())}) {
    const auto grid = make_gamma_grid(0.01);
    const GammaSweep sweep = sweep_gamma_crit(mdp, grid, 1e-9);
    for (size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] >= sweep.gamma_crit) {
        CHECK(std::abs(sweep.policy_total_returns[i] - sweep.optimal_total_return) <= 1e-9);
      }
    }
  }
}

TEST_CASE("gamma grid validation") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  CHECK_THROWS_AS(find_gamma_crit(mdp, {}, 1e-9), Error);
  const double unsorted[] = {0.5, 0.2, 1.0};
  CHECK_THROWS_AS(find_gamma_crit(mdp, unsorted, 1e-9), Error);
  const double no_one[] = {0.0, 0.5, 0.9};
  CHECK_THROWS_AS(find_gamma_crit(mdp, no_one, 1e-9), Error);

  const auto grid = make_gamma_grid(0.25);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
}

TEST_CASE("deterministic rollout without exploration is the unique path") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const Trajectory traj = sample_trajectory(mdp, constant_policy(mdp, 1), 0.0, 5);
  CHECK(traj.states == std::vector<int>{0, 2, 3, 3});
  CHECK(traj.rewards == std::vector<double>{0.0, 0.0, 2.0});
  CHECK(traj.undiscounted_return() == doctest::Approx(2.0));
}

TEST_CASE("same seed gives the identical exploratory rollout") {
  const FiniteHorizonMdp mdp = make_puddle_world(canonical_puddle_layout());
  const NonStationaryPolicy policy = constant_policy(mdp, kRight);
  const Trajectory a = sample_trajectory(mdp, policy, 1.0, 123);
  const Trajectory b = sample_trajectory(mdp, policy, 1.0, 123);
  CHECK(a.states == b.states);
  CHECK(a.actions == b.actions);
  CHECK(a.rewards == b.rewards);
}

TEST_CASE("uniform exploration covers every reachable state") {
  const FiniteHorizonMdp mdp = make_puddle_world(canonical_puddle_layout());
  const auto reachable = oracles::bfs_reachable(mdp);
  std::set<int> reachable_states;
  for (const auto& row : reachable) {
    for (int s = 0; s < mdp.num_states; ++s) {
      if (row[s]) reachable_states.insert(s);
    }
  }
  std::set<int> visited;
  const NonStationaryPolicy policy = constant_policy(mdp, kUp);
  for (int i = 0; i < 10000; ++i) {
    for (int s : sample_trajectory(mdp, policy, 1.0, derive_seed(31337, 1, i)).states) {
      visited.insert(s);
    }
  }
  for (int s : reachable_states) CHECK(visited.count(s) == 1);
}

TEST_CASE("library reachability agrees with the BFS oracle") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const FiniteHorizonMdp mdp = make_layered_random_mdp(4, 3, 2, seed);
    CHECK(reachable_states_by_time(mdp) == oracles::bfs_reachable(mdp));
  }
}

TEST_CASE("dimension mismatches name the offending axis") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  NonStationaryPolicy wrong;
  wrong.horizon = 5;
  wrong.num_states = mdp.num_states;
  wrong.actions.assign(5 * 4, 0);
  CHECK_THROWS_WITH_AS(evaluate_policy(mdp, wrong, 1.0), doctest::Contains("decision steps"),
                       Error);

  SurrogateReward surrogate = zero_surrogate(3, mdp.horizon);
  NonStationaryPolicy ok_policy = constant_policy(mdp, 0);
  CHECK_THROWS_WITH_AS(evaluate_policy(mdp, ok_policy, 1.0, &surrogate),
                       doctest::Contains("states"), Error);

  try {
    evaluate_policy(mdp, wrong, 1.0);
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension_mismatch);
  }
}

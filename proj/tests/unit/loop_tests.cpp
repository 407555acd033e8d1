#include <cmath>

#include "doctest.h"
#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/loop.hpp"
#include "rewardlab/solver.hpp"

using namespace rewardlab;

namespace {

LoopConfig small_config(double gamma, int iterations, uint64_t seed) {
  LoopConfig config;
  config.gamma = gamma;
  config.iterations = iterations;
  config.reward_train_epochs_per_iter = 25;
  config.train = {24, 48, 0.3};
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("fork at a short horizon: adaptive loop beats the baseline") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const LoopConfig config = small_config(0.2, 60, 11);

  const LoopResult tweaked = run(mdp, config);
  CHECK(tweaked.policy.at(0, 0) == 1);  // right
  CHECK(total_return(mdp, tweaked.policy) == doctest::Approx(2.0));

  const BaselineResult baseline = run_baseline(mdp, config);
  CHECK(total_return(mdp, baseline.policy) == doctest::Approx(1.0));
}

TEST_CASE("at gamma 1 the surrogate is unnecessary: both arms reach the optimum") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const LoopConfig config = small_config(1.0, 40, 3);
  CHECK(total_return(mdp, run(mdp, config).policy) == doctest::Approx(2.0));
  CHECK(total_return(mdp, run_baseline(mdp, config).policy) == doctest::Approx(2.0));
}

TEST_CASE("loop runs are bit-identical across repeats") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const LoopConfig config = small_config(0.2, 30, 99);
  const LoopResult a = run(mdp, config);
  const LoopResult b = run(mdp, config);
  REQUIRE(a.log.records.size() == b.log.records.size());
  for (size_t i = 0; i < a.log.records.size(); ++i) {
    CHECK(a.log.records[i].total_return == b.log.records[i].total_return);
    CHECK(a.log.records[i].rank_accuracy == b.log.records[i].rank_accuracy);
    CHECK(a.log.records[i].surrogate_hash == b.log.records[i].surrogate_hash);
  }
  CHECK(a.model.weights == b.model.weights);
  CHECK(a.policy.actions == b.policy.actions);
}

TEST_CASE("logged returns are measured on the original reward") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const LoopConfig config = small_config(0.2, 25, 5);
  const LoopResult result = run(mdp, config);
  CHECK(result.log.records.back().total_return ==
        doctest::Approx(total_return(mdp, result.policy)).epsilon(1e-12));
  CHECK(static_cast<int>(result.log.records.size()) == config.iterations);
}

TEST_CASE("converged loop never loses to the baseline") {
  const double chain_rewards[] = {0.0, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  struct Case {
    FiniteHorizonMdp mdp;
    double gamma;
    int iterations;
  };
  const Case cases[] = {
      {make_four_state_mdp(0.5, 0.0, 2.0), 0.2, 60},
      {make_chain_mdp(10, chain_rewards, 11), 0.1, 120},
      {make_puddle_world(canonical_puddle_layout()), 0.3, 250},
  };
  for (const Case& c : cases) {
    const LoopConfig config = small_config(c.gamma, c.iterations, 21);
    const LoopResult tweaked = run(c.mdp, config);
    const BaselineResult baseline = run_baseline(c.mdp, config);
    CHECK(total_return(c.mdp, tweaked.policy) >=
          total_return(c.mdp, baseline.policy) - 1e-9);
  }
}

TEST_CASE("without preference signal the reward update is skipped, not an error") {
  FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  mdp.reward.assign(mdp.num_states, 0.0);  // every trajectory returns zero
  const LoopConfig config = small_config(0.5, 10, 2);
  const LoopResult result = run(mdp, config);
  CHECK(result.log.train_records.empty());
  CHECK(static_cast<int>(result.log.records.size()) == config.iterations);
  for (const LoopRecord& rec : result.log.records) {
    CHECK(rec.total_return == 0.0);
    CHECK(rec.rank_accuracy == 0.0);
  }
}

TEST_CASE("zero iterations returns the cold-start policy") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  const LoopConfig config = small_config(0.4, 0, 8);
  const LoopResult result = run(mdp, config);
  CHECK(result.log.records.empty());
  const SurrogateReward zeros = zero_surrogate(mdp.num_states, mdp.horizon);
  CHECK(result.policy.actions == solve_optimal(mdp, config.gamma, &zeros).policy.actions);
}

TEST_CASE("invalid loop configs are rejected") {
  LoopConfig config;
  config.gamma = 1.5;
  CHECK_THROWS_AS(validate(config), Error);
  config.gamma = 0.5;
  config.iterations = -1;
  CHECK_THROWS_AS(validate(config), Error);
  config.iterations = 5;
  config.buffer_capacity = 0;
  CHECK_THROWS_AS(validate(config), Error);
}

TEST_CASE("tabular q-learning recovers the fork optimum and is seeded") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  QLearnParams params{4000, 0.3, 0.3};
  const NonStationaryPolicy a = tabular_q_learning(mdp, 0.9, nullptr, params, 123);
  const NonStationaryPolicy b = tabular_q_learning(mdp, 0.9, nullptr, params, 123);
  CHECK(a.actions == b.actions);
  CHECK(a.at(0, 0) == 1);  // right is optimal at gamma 0.9 > 1/3
  CHECK(total_return(mdp, a) == doctest::Approx(2.0));
}

TEST_CASE("q-learning policy solver works inside the loop") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  LoopConfig config = small_config(0.2, 50, 31);
  config.policy_solver = PolicySolver::tabular_q_learning;
  config.qlearn = {3000, 0.3, 0.3};
  const LoopResult result = run(mdp, config);
  CHECK(total_return(mdp, result.policy) == doctest::Approx(2.0));
}

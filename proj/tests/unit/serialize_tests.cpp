#include "doctest.h"
#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/ranking.hpp"
#include "rewardlab/serialize.hpp"

using namespace rewardlab;

TEST_CASE("mdp JSON round trip is bit-exact") {
  const FiniteHorizonMdp original = make_random_mdp(6, 3, 7, 555);
  const FiniteHorizonMdp restored = mdp_from_json(mdp_to_json(original));
  CHECK(restored.num_states == original.num_states);
  CHECK(restored.num_actions == original.num_actions);
  CHECK(restored.horizon == original.horizon);
  CHECK(restored.transition == original.transition);
  CHECK(restored.reward == original.reward);
  CHECK(restored.initial_dist == original.initial_dist);
  CHECK(restored.absorbing == original.absorbing);
}

TEST_CASE("mdp parser rejects unknown and missing keys") {
  const FiniteHorizonMdp mdp = make_four_state_mdp(0.5, 0.0, 2.0);
  std::string text = mdp_to_json(mdp);

  std::string with_extra = text;
  with_extra.insert(1, "\n  \"speed\": 11,");
  CHECK_THROWS_WITH_AS(mdp_from_json(with_extra), doctest::Contains("unknown key"), Error);

  CHECK_THROWS_AS(mdp_from_json("{\"states\": 2}"), Error);
  CHECK_THROWS_AS(mdp_from_json("not json at all"), Error);
}

TEST_CASE("surrogate, model, policy and layout round trips") {
  SurrogateReward surrogate = zero_surrogate(3, 4);
  for (size_t i = 0; i < surrogate.values.size(); ++i) surrogate.values[i] = 0.1 * i - 0.3;
  const SurrogateReward s2 = surrogate_from_json(surrogate_to_json(surrogate));
  CHECK(s2.values == surrogate.values);

  LinearRewardModel model = make_zero_model(3, 4, true);
  for (size_t i = 0; i < model.weights.size(); ++i) model.weights[i] = 1.0 / (i + 1);
  const LinearRewardModel m2 = model_from_json(model_to_json(model));
  CHECK(m2.weights == model.weights);
  CHECK(m2.layout.time_indexed == model.layout.time_indexed);

  NonStationaryPolicy policy{2, 3, {0, 1, 0, 1, 0, 1}};
  const NonStationaryPolicy p2 = policy_from_json(policy_to_json(policy));
  CHECK(p2.actions == policy.actions);

  const PuddleLayout layout = canonical_puddle_layout();
  const PuddleLayout l2 = layout_from_json(layout_to_json(layout));
  CHECK(l2.puddle_cells == layout.puddle_cells);
  CHECK(l2.horizon == layout.horizon);
}

TEST_CASE("doubles survive formatting with full precision") {
  for (double v : {0.1, -6.5, 1.0 / 3.0, 2.930947019550000123, 1e-300, -0.0}) {
    const std::string text = format_double(v);
    CHECK(std::stod(text) == v);
  }
  CHECK(format_double(-6.5) == "-6.5");
  CHECK(format_double(0.34) == "0.34");
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS_WITH_AS(read_text_file("/nonexistent/rewardlab.json"),
                       doctest::Contains("config not found"), Error);
}

TEST_CASE("surrogate hashes are content hashes") {
  SurrogateReward a = zero_surrogate(2, 3);
  SurrogateReward b = zero_surrogate(2, 3);
  CHECK(surrogate_hash(a) == surrogate_hash(b));
  b.at(1, 2) = 1e-9;
  CHECK(surrogate_hash(a) != surrogate_hash(b));
}

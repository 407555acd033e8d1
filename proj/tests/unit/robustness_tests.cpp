#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rewardlab/checks.hpp"
#include "rewardlab/environments.hpp"
#include "rewardlab/errors.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/robustness.hpp"
#include "rewardlab/solver.hpp"

using namespace rewardlab;

namespace {

NonStationaryPolicy random_policy(const FiniteHorizonMdp& mdp, uint64_t seed) {
  Rng rng(seed);
  NonStationaryPolicy policy{mdp.horizon, mdp.num_states,
                             std::vector<int>(static_cast<size_t>(mdp.horizon) * mdp.num_states)};
  for (int& a : policy.actions) a = rng.next_index(mdp.num_actions);
  return policy;
}

double row_l1(const FiniteHorizonMdp& a, const FiniteHorizonMdp& b, int s, int action) {
  double sum = 0.0;
  for (int next = 0; next < a.num_states; ++next) {
    sum += std::abs(a.p(s, action, next) - b.p(s, action, next));
  }
  return sum;
}

}  // namespace

TEST_CASE("zero budget returns a bit-identical kernel") {
  const FiniteHorizonMdp mdp = make_random_mdp(5, 3, 6, 1);
  PerturbationSpec spec;
  spec.epsilon_p = 0.0;
  spec.seed = 17;
  CHECK(perturb_kernel(mdp, spec).transition == mdp.transition);
}

TEST_CASE("perturbed rows respect the L1 budget across many seeds") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const FiniteHorizonMdp mdp = make_random_mdp(5, 2, 4, derive_seed(2, 0, seed));
    PerturbationSpec spec;
    spec.epsilon_p = 0.1;
    spec.seed = derive_seed(2, 1, seed);
    const FiniteHorizonMdp perturbed = perturb_kernel(mdp, spec);
    for (int s = 0; s < mdp.num_states; ++s) {
      for (int a = 0; a < mdp.num_actions; ++a) {
        CHECK(row_l1(mdp, perturbed, s, a) <= 0.1);
      }
    }
  }
}

TEST_CASE("end-concentrated mode leaves early rows bit-exact") {
  const FiniteHorizonMdp mdp = make_layered_random_mdp(6, 3, 2, 9);  // horizon 5
  PerturbationSpec spec;
  spec.epsilon_p = 0.3;
  spec.mode = PerturbationMode::end_concentrated;
  spec.last_layers = 2;
  spec.seed = 4;
  const FiniteHorizonMdp perturbed = perturb_kernel(mdp, spec);

  const auto late = late_window_states(mdp, 2);
  bool some_late_changed = false;
  for (int s = 0; s < mdp.num_states; ++s) {
    for (int a = 0; a < mdp.num_actions; ++a) {
      if (!late[s]) {
        for (int next = 0; next < mdp.num_states; ++next) {
          CHECK(perturbed.p(s, a, next) == mdp.p(s, a, next));
        }
      } else if (row_l1(mdp, perturbed, s, a) > 0.0) {
        some_late_changed = true;
      }
    }
  }
  CHECK(some_late_changed);
}

TEST_CASE("non-layered kernels are rejected in end-concentrated mode") {
  const double rewards[] = {0.0, 0.1, 0.2, 0.3};
  const FiniteHorizonMdp chain = make_chain_mdp(4, rewards, 5);
  PerturbationSpec spec;
  spec.epsilon_p = 0.2;
  spec.mode = PerturbationMode::end_concentrated;
  spec.last_layers = 2;
  try {
    perturb_kernel(chain, spec);
    FAIL("expected a structured error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported);
    CHECK(std::string(e.what()).find("not layered") != std::string::npos);
  }
}

TEST_CASE("identical kernels have zero gap; gamma 0 ignores the kernel") {
  const FiniteHorizonMdp mdp = make_random_mdp(5, 2, 6, 3);
  const NonStationaryPolicy policy = random_policy(mdp, 4);
  CHECK(simulation_gap(mdp, mdp, policy, 0.9) == 0.0);

  PerturbationSpec spec;
  spec.epsilon_p = 0.4;
  spec.seed = 5;
  const FiniteHorizonMdp perturbed = perturb_kernel(mdp, spec);
  CHECK(simulation_gap(mdp, perturbed, policy, 0.0) == 0.0);
}

TEST_CASE("simulation gap matches forward path enumeration at horizon 10") {
  FiniteHorizonMdp mdp = make_random_mdp(6, 2, 10, 12);
  mdp.initial_dist.assign(mdp.num_states, 0.0);
  mdp.initial_dist[0] = 1.0;  // single start keeps the enumeration tractable
  PerturbationSpec spec;
  spec.epsilon_p = 0.2;
  spec.seed = 13;
  const FiniteHorizonMdp perturbed = perturb_kernel(mdp, spec);
  const NonStationaryPolicy policy = random_policy(mdp, 14);

  const double gap = simulation_gap(mdp, perturbed, policy, 0.9);
  const double v_base = oracles::path_expectation(mdp, policy, 0.9, nullptr, 0, 0);
  const double v_shift = oracles::path_expectation(perturbed, policy, 0.9, nullptr, 0, 0);
  CHECK(gap == doctest::Approx(std::abs(v_shift - v_base)).epsilon(1e-9));
}

TEST_CASE("closed-form bound values") {
  const BoundCheck check = check_bound(0.0, 0.9, 10, std::nullopt, 1.0, 0.1);
  CHECK(check.bound == doctest::Approx(2.93094701955).epsilon(1e-9));
  CHECK(check.holds);

  const BoundCheck zero = check_bound(0.0, 0.9, 10, std::nullopt, 1.0, 0.0);
  CHECK(zero.bound == 0.0);
  CHECK(zero.holds);

  CHECK_THROWS_WITH_AS(check_bound(0.0, 1.0, 10, std::nullopt, 1.0, 0.1),
                       doctest::Contains("gamma = 1"), Error);
}

TEST_CASE("window bound divided by uniform bound is the improvement factor") {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const double gamma = 0.3 + 0.69 * rng.next_double();
    const int horizon = 2 + rng.next_index(12);
    const int window = 1 + rng.next_index(horizon);
    const double r_max = 0.1 + rng.next_double();
    const double eps = 0.01 + rng.next_double();
    const double uniform = check_bound(0.0, gamma, horizon, std::nullopt, r_max, eps).bound;
    const double windowed = check_bound(0.0, gamma, horizon, window, r_max, eps).bound;
    const double factor = bound_improvement_factor(gamma, horizon, window);
    CHECK(std::abs(windowed / uniform - factor) <= 1e-12);
    CHECK(factor < 1.0 + 1e-12);
  }
}

TEST_CASE("uniform-mode trials never violate the bound") {
  TrialOptions options;
  options.trials = 300;
  options.seed = 60;
  const TrialSummary summary = summarize_trials(run_robustness_trials(options));
  CHECK(summary.trials == 300);
  CHECK(summary.violations == 0);
  CHECK(summary.min_slack >= 0.0);
}

TEST_CASE("end-concentrated trials satisfy the tighter window bound too") {
  TrialOptions options;
  options.trials = 300;
  options.mode = PerturbationMode::end_concentrated;
  options.seed = 61;
  const auto records = run_robustness_trials(options);
  const TrialSummary summary = summarize_trials(records);
  CHECK(summary.violations == 0);
  CHECK(summary.max_ratio_error <= 1e-12);
  for (const TrialRecord& rec : records) {
    CHECK(rec.bound <= rec.bound_uniform + 1e-15);
  }
}

TEST_CASE("surrogate-evaluated trials also sit under the bound") {
  TrialOptions options;
  options.trials = 100;
  options.use_surrogate = true;
  options.seed = 62;
  CHECK(summarize_trials(run_robustness_trials(options)).violations == 0);
}

TEST_CASE("matched budgets: end-concentrated errors hurt less than uniform ones") {
  const PairedComparison cmp = run_paired_mode_comparison(100, 63);
  CHECK(cmp.mean_gap_end < cmp.mean_gap_uniform);
}

TEST_CASE("perturbation specs are validated") {
  const FiniteHorizonMdp mdp = make_random_mdp(4, 2, 5, 7);
  PerturbationSpec spec;
  spec.epsilon_p = 2.5;
  CHECK_THROWS_AS(perturb_kernel(mdp, spec), Error);
  spec.epsilon_p = 0.1;
  spec.mode = PerturbationMode::end_concentrated;
  spec.last_layers = 0;
  CHECK_THROWS_AS(perturb_kernel(mdp, spec), Error);
}

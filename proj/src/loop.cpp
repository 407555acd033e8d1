#include "rewardlab/loop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rewardlab/errors.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/serialize.hpp"
#include "rewardlab/solver.hpp"

namespace rewardlab {

namespace {

// Seed streams within one loop run.
enum SeedStream : uint64_t { kRollout = 1, kTrain = 2, kQLearn = 3 };

NonStationaryPolicy optimize_policy(const FiniteHorizonMdp& mdp, const LoopConfig& config,
                                    const SurrogateReward* surrogate, uint64_t seed) {
  if (config.policy_solver == PolicySolver::exact_backward_induction) {
    return solve_optimal(mdp, config.gamma, surrogate).policy;
  }
  return tabular_q_learning(mdp, config.gamma, surrogate, config.qlearn, seed);
}

}  // namespace

void validate(const LoopConfig& config) {
  require(config.gamma >= 0.0 && config.gamma <= 1.0, ErrorCode::invalid_argument,
          "loop gamma outside [0, 1]");
  require(config.iterations >= 0, ErrorCode::invalid_argument, "iterations must be >= 0");
  require(config.exploration_eps >= 0.0 && config.exploration_eps <= 1.0,
          ErrorCode::invalid_argument, "exploration_eps outside [0, 1]");
  require(config.eps_decay > 0.0 && config.eps_decay <= 1.0, ErrorCode::invalid_argument,
          "eps_decay outside (0, 1]");
  require(config.buffer_capacity > 0, ErrorCode::invalid_argument,
          "buffer_capacity must be positive");
  require(config.reward_train_epochs_per_iter >= 1, ErrorCode::invalid_argument,
          "reward_train_epochs_per_iter must be >= 1");
}

LoopResult run(const FiniteHorizonMdp& mdp, const LoopConfig& config) {
  validate(config);
  RankingConfig ranking = config.ranking;
  ranking.gamma = config.gamma;

  LoopResult result;
  result.model = make_zero_model(mdp.num_states, mdp.horizon, ranking.time_indexed);
  SurrogateReward surrogate = to_surrogate(result.model);
  result.policy = optimize_policy(mdp, config, &surrogate, derive_seed(config.seed, kQLearn, 0));

  ReplayBuffer buffer(config.buffer_capacity);
  double eps = config.exploration_eps;
  double last_rank_accuracy = 0.0;
  int epoch_counter = 0;

  for (int iter = 0; iter < config.iterations; ++iter) {
    const bool cold = !buffer.has_preference_signal(ranking.tie_tolerance);
    // While no ranked pair exists every action ties on the zero surrogate,
    // so acting uniformly at random is the greedy policy's tie set.
    const double act_eps = cold ? 1.0 : eps;
    buffer.push(
        sample_trajectory(mdp, result.policy, act_eps, derive_seed(config.seed, kRollout, iter)));

    if (buffer.has_preference_signal(ranking.tie_tolerance)) {
      for (int e = 0; e < config.reward_train_epochs_per_iter; ++e) {
        TrainMetrics metrics =
            train_epoch(result.model, buffer, ranking, config.train,
                        derive_seed(config.seed, kTrain, static_cast<uint64_t>(epoch_counter)));
        result.log.train_records.push_back({epoch_counter, metrics.mean_loss,
                                            metrics.rank_accuracy});
        last_rank_accuracy = metrics.rank_accuracy;
        ++epoch_counter;
      }
      surrogate = to_surrogate(result.model);
      result.policy = optimize_policy(mdp, config, &surrogate,
                                      derive_seed(config.seed, kQLearn, 1 + iter));
    }

    result.log.records.push_back({iter, total_return(mdp, result.policy), last_rank_accuracy,
                                  buffer.size(), surrogate_hash(surrogate)});
    eps *= config.eps_decay;
  }
  return result;
}

BaselineResult run_baseline(const FiniteHorizonMdp& mdp, const LoopConfig& config) {
  validate(config);
  BaselineResult result;
  result.policy =
      optimize_policy(mdp, config, nullptr, derive_seed(config.seed, kQLearn, 0));

  ReplayBuffer buffer(config.buffer_capacity);
  double eps = config.exploration_eps;
  for (int iter = 0; iter < config.iterations; ++iter) {
    buffer.push(
        sample_trajectory(mdp, result.policy, eps, derive_seed(config.seed, kRollout, iter)));
    if (config.policy_solver == PolicySolver::tabular_q_learning) {
      result.policy = tabular_q_learning(mdp, config.gamma, nullptr, config.qlearn,
                                         derive_seed(config.seed, kQLearn, 1 + iter));
    }
    result.log.records.push_back(
        {iter, total_return(mdp, result.policy), 0.0, buffer.size(), 0});
    eps *= config.eps_decay;
  }
  return result;
}

NonStationaryPolicy tabular_q_learning(const FiniteHorizonMdp& mdp, double gamma,
                                       const SurrogateReward* reward_override,
                                       const QLearnParams& params, uint64_t seed) {
  require(params.episodes > 0 && params.alpha > 0.0 && params.alpha <= 1.0,
          ErrorCode::invalid_argument, "q-learning params out of range");
  if (reward_override) validate(*reward_override, mdp);

  const int S = mdp.num_states, A = mdp.num_actions, T = mdp.horizon;
  std::vector<double> q(static_cast<size_t>(T + 1) * S * A, 0.0);
  auto q_at = [&](int t, int s, int a) -> double& {
    return q[(static_cast<size_t>(t) * S + s) * A + a];
  };
  auto best_q = [&](int t, int s) {
    double best = q_at(t, s, 0);
    for (int a = 1; a < A; ++a) best = std::max(best, q_at(t, s, a));
    return best;
  };

  Rng rng(seed);
  for (int episode = 0; episode < params.episodes; ++episode) {
    int s = rng.categorical(mdp.initial_dist);
    for (int t = 0; t < T; ++t) {
      int a;
      if (rng.bernoulli(params.epsilon)) {
        a = rng.next_index(A);
      } else {
        a = 0;
        for (int cand = 1; cand < A; ++cand) {
          if (q_at(t, s, cand) > q_at(t, s, a)) a = cand;
        }
      }
      const int next = rng.categorical(mdp.row(s, a));
      const double r = reward_override ? reward_override->at(s, t) : mdp.reward[s];
      const double target = r + gamma * best_q(t + 1, next);
      q_at(t, s, a) += params.alpha * (target - q_at(t, s, a));
      s = next;
    }
  }

  NonStationaryPolicy policy;
  policy.horizon = T;
  policy.num_states = S;
  policy.actions.assign(static_cast<size_t>(T) * S, 0);
  for (int t = 0; t < T; ++t) {
    for (int s = 0; s < S; ++s) {
      int best = 0;
      for (int a = 1; a < A; ++a) {
        if (q_at(t, s, a) > q_at(t, s, best)) best = a;
      }
      policy.at(t, s) = best;
    }
  }
  return policy;
}

}  // namespace rewardlab

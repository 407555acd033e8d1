#pragma once

#include <cstdint>
#include <vector>

#include "rewardlab/mdp.hpp"
#include "rewardlab/ranking.hpp"

namespace rewardlab {

enum class PolicySolver {
  exact_backward_induction,  // solve the surrogate problem exactly each round
  tabular_q_learning,        // sampled updates, mimicking an approximate agent
};

struct QLearnParams {
  int episodes = 200;
  double alpha = 0.2;
  double epsilon = 0.2;
};

struct LoopConfig {
  double gamma = 0.99;
  int iterations = 100;  // 0 is allowed and returns the cold-start policy
  double exploration_eps = 0.5;
  double eps_decay = 0.995;
  int buffer_capacity = 256;
  int reward_train_epochs_per_iter = 20;
  PolicySolver policy_solver = PolicySolver::exact_backward_induction;
  QLearnParams qlearn;
  TrainParams train;
  RankingConfig ranking;
  uint64_t seed = 0;
};

void validate(const LoopConfig& config);

struct LoopRecord {
  int iteration = 0;
  double total_return = 0.0;  // of the greedy policy, on the original reward
  double rank_accuracy = 0.0;
  int buffer_size = 0;
  uint64_t surrogate_hash = 0;
};

struct TrainRecord {
  int epoch = 0;
  double mean_loss = 0.0;
  double rank_accuracy = 0.0;
};

struct LoopLog {
  std::vector<LoopRecord> records;        // one per iteration
  std::vector<TrainRecord> train_records; // one per reward-update epoch
};

struct LoopResult {
  NonStationaryPolicy policy;
  LinearRewardModel model;
  LoopLog log;
};

/// The adaptive loop: each iteration plays one exploratory rollout with the
/// current greedy policy, appends it to the buffer, updates the reward model
/// on ranked sub-trajectory pairs, and re-optimizes the policy against the
/// current surrogate at config.gamma. Logged returns are always measured on
/// the original reward. Until the buffer holds two trajectories of distinct
/// returns the reward update is skipped and the agent explores uniformly
/// (every action ties on the zero surrogate). Fully deterministic per seed.
LoopResult run(const FiniteHorizonMdp& mdp, const LoopConfig& config);

struct BaselineResult {
  NonStationaryPolicy policy;
  LoopLog log;
};

/// Control arm: the identical loop with the true reward in place of the
/// surrogate and no reward learning.
BaselineResult run_baseline(const FiniteHorizonMdp& mdp, const LoopConfig& config);

/// Tabular Q-learning on the (time, state, action) table against the given
/// reward (surrogate when non-null). Deterministic per seed.
NonStationaryPolicy tabular_q_learning(const FiniteHorizonMdp& mdp, double gamma,
                                       const SurrogateReward* reward_override,
                                       const QLearnParams& params, uint64_t seed);

}  // namespace rewardlab

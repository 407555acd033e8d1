#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rewardlab/mdp.hpp"

namespace rewardlab {

/// Feature indexing for the linear reward model. With time features on, the
/// vector holds one slot per (state, time) pair; switched off it collapses to
/// one slot per state (an ablation; time-indexed is the default since a
/// reward that ranks finite-horizon returns generally must depend on time).
struct FeatureLayout {
  int num_states = 0;
  int horizon = 0;
  bool time_indexed = true;

  int dim() const { return time_indexed ? num_states * horizon : num_states; }
  int index(int s, int k) const { return time_indexed ? s * horizon + k : s; }
};

/// How the two sides of a ranking pair pick their start offsets.
enum class PairMode {
  any_offsets,   // independent uniform offsets (sub-returns of unequal length)
  equal_length,  // one shared offset per batch
};

struct RankingConfig {
  double gamma = 0.99;
  bool time_indexed = true;
  int length_cap = 0;  // 0: full remaining horizon
  PairMode pair_mode = PairMode::any_offsets;
  double l2 = 0.0;  // optional ridge applied by train_epoch (in its step space)
  double tie_tolerance = 1e-9;  // sub-returns closer than this are ties, never sampled
};

struct TrajectoryFeatures {
  std::vector<double> phi;
};

/// Discounted visit vector of the sub-trajectory starting `start` steps into
/// `traj`: phi[(s_{start+k}, k)] += gamma^k over its reward-bearing states,
/// truncated at length_cap when set.
TrajectoryFeatures featurize(const Trajectory& traj, int start, double gamma,
                             const FeatureLayout& layout, int length_cap = 0);

/// Undiscounted return of the same (possibly capped) sub-trajectory window;
/// the quantity pair labels compare.
double sub_return(const Trajectory& traj, int start, int length_cap = 0);

struct LinearRewardModel {
  FeatureLayout layout;
  std::vector<double> weights;
};

LinearRewardModel make_zero_model(int num_states, int horizon, bool time_indexed = true);

/// Log-odds that the first feature vector outranks the second.
double pair_logit(const LinearRewardModel& model, const TrajectoryFeatures& a,
                  const TrajectoryFeatures& b);

/// Bounded FIFO store of full rollouts with cached undiscounted returns.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(Trajectory traj);
  int size() const { return static_cast<int>(items_.size()); }
  uint64_t inserted() const { return inserted_; }
  const Trajectory& trajectory(int i) const { return items_[i]; }
  double cached_return(int i) const { return returns_[i]; }

  /// True iff some pair of buffered trajectories has returns further apart
  /// than tie_tolerance.
  bool has_preference_signal(double tie_tolerance) const;

 private:
  int capacity_;
  uint64_t inserted_ = 0;
  int next_ = 0;
  std::vector<Trajectory> items_;
  std::vector<double> returns_;
};

struct PairSample {
  int traj_i = 0;
  int start_i = 0;
  int traj_j = 0;
  int start_j = 0;
  bool first_wins = true;
};

struct PairLoss {
  double loss = 0.0;
  std::vector<double> gradient;
};

/// Negative log-likelihood that the labelled winner outranks the loser under
/// the logistic pair model, with its exact analytic gradient in the weights.
PairLoss pairwise_loss(const LinearRewardModel& model, const PairSample& pair,
                       const ReplayBuffer& buffer, const RankingConfig& config);

struct TrainMetrics {
  double mean_loss = 0.0;
  double rank_accuracy = 0.0;
};

struct TrainParams {
  int batch_size = 16;       // (trajectory, offset) draws per update round
  int pairs_per_batch = 32;  // rankable pairs kept per round
  double learning_rate = 0.05;
};

/// One update round: draws batch_size (trajectory, start-offset) samples,
/// forms the rankable pairs among them (subsampled to pairs_per_batch), and
/// takes a single averaged gradient step. Deterministic for a fixed seed.
/// Throws no_preference_signal when no pair of buffered trajectories has
/// distinct returns.
TrainMetrics train_epoch(LinearRewardModel& model, const ReplayBuffer& buffer,
                         const RankingConfig& config, const TrainParams& params, uint64_t seed);

/// Fraction of the given pairs whose labelled winner gets a strictly positive
/// logit.
double rank_accuracy(const LinearRewardModel& model, const ReplayBuffer& buffer,
                     std::span<const PairSample> pairs, const RankingConfig& config);

/// Uniformly sampled rankable pairs (for held-out evaluation).
std::vector<PairSample> sample_pairs(const ReplayBuffer& buffer, int count,
                                     const RankingConfig& config, uint64_t seed);

/// Reshapes the weights into the [state][time] reward table the solvers
/// consume; state-only models broadcast across time.
SurrogateReward to_surrogate(const LinearRewardModel& model);

}  // namespace rewardlab

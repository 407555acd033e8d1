#include "rewardlab/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rewardlab/errors.hpp"
#include "rewardlab/rng.hpp"

namespace rewardlab {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

int reward_length(const Trajectory& traj) { return static_cast<int>(traj.rewards.size()); }

int window_length(const Trajectory& traj, int start, int length_cap) {
  int len = reward_length(traj) - start;
  if (length_cap > 0) len = std::min(len, length_cap);
  return len;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

TrajectoryFeatures featurize(const Trajectory& traj, int start, double gamma,
                             const FeatureLayout& layout, int length_cap) {
  require(start >= 0 && start < reward_length(traj), ErrorCode::invalid_argument,
          "sub-trajectory start " + std::to_string(start) + " outside [0, " +
              std::to_string(reward_length(traj)) + ")");
  TrajectoryFeatures f;
  f.phi.assign(layout.dim(), 0.0);
  double weight = 1.0;
  const int len = window_length(traj, start, length_cap);
  for (int k = 0; k < len; ++k) {
    f.phi[layout.index(traj.states[start + k], k)] += weight;
    weight *= gamma;
  }
  return f;
}

double sub_return(const Trajectory& traj, int start, int length_cap) {
  const int len = window_length(traj, start, length_cap);
  double sum = 0.0;
  for (int k = 0; k < len; ++k) sum += traj.rewards[start + k];
  return sum;
}

LinearRewardModel make_zero_model(int num_states, int horizon, bool time_indexed) {
  LinearRewardModel model;
  model.layout = {num_states, horizon, time_indexed};
  model.weights.assign(model.layout.dim(), 0.0);
  return model;
}

double pair_logit(const LinearRewardModel& model, const TrajectoryFeatures& a,
                  const TrajectoryFeatures& b) {
  require(a.phi.size() == model.weights.size() && b.phi.size() == model.weights.size(),
          ErrorCode::dimension_mismatch,
          "feature length " + std::to_string(a.phi.size()) + "/" + std::to_string(b.phi.size()) +
              " != model dimension " + std::to_string(model.weights.size()));
  return dot(model.weights, a.phi) - dot(model.weights, b.phi);
}

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  require(capacity > 0, ErrorCode::invalid_argument, "replay buffer capacity must be positive");
}

void ReplayBuffer::push(Trajectory traj) {
  double ret = traj.undiscounted_return();
  if (size() < capacity_) {
    items_.push_back(std::move(traj));
    returns_.push_back(ret);
  } else {
    items_[next_] = std::move(traj);
    returns_[next_] = ret;
    next_ = (next_ + 1) % capacity_;
  }
  ++inserted_;
}

bool ReplayBuffer::has_preference_signal(double tie_tolerance) const {
  if (size() < 2) return false;
  auto [lo, hi] = std::minmax_element(returns_.begin(), returns_.end());
  return *hi - *lo > tie_tolerance;
}

PairLoss pairwise_loss(const LinearRewardModel& model, const PairSample& pair,
                       const ReplayBuffer& buffer, const RankingConfig& config) {
  const PairSample p = pair.first_wins ? pair
                                       : PairSample{pair.traj_j, pair.start_j, pair.traj_i,
                                                    pair.start_i, true};
  const TrajectoryFeatures winner =
      featurize(buffer.trajectory(p.traj_i), p.start_i, config.gamma, model.layout,
                config.length_cap);
  const TrajectoryFeatures loser =
      featurize(buffer.trajectory(p.traj_j), p.start_j, config.gamma, model.layout,
                config.length_cap);

  const double z = pair_logit(model, winner, loser);
  PairLoss out;
  out.loss = softplus(-z);
  out.gradient.assign(model.weights.size(), 0.0);
  const double coeff = -sigmoid(-z);  // d softplus(-z) / dz
  for (size_t i = 0; i < out.gradient.size(); ++i) {
    out.gradient[i] = coeff * (winner.phi[i] - loser.phi[i]);
  }
  return out;
}

namespace {

struct Draw {
  int traj = 0;
  int start = 0;
  TrajectoryFeatures features;
  double window_return = 0.0;
};

}  // namespace

TrainMetrics train_epoch(LinearRewardModel& model, const ReplayBuffer& buffer,
                         const RankingConfig& config, const TrainParams& params, uint64_t seed) {
  require(params.batch_size >= 2 && params.pairs_per_batch >= 1 && params.learning_rate >= 0.0,
          ErrorCode::invalid_argument, "train params must give batch_size >= 2, pairs >= 1");
  require(buffer.has_preference_signal(config.tie_tolerance), ErrorCode::no_preference_signal,
          "no preference signal: the buffer holds no pair of trajectories with distinct returns");

  Rng rng(seed);
  std::vector<Draw> draws;
  std::vector<std::pair<int, int>> pairs;  // indices into draws, winner first

  for (int attempt = 0; attempt < 100 && pairs.empty(); ++attempt) {
    draws.clear();
    int shared_start = -1;
    for (int k = 0; k < params.batch_size; ++k) {
      Draw d;
      d.traj = rng.next_index(buffer.size());
      const int len = static_cast<int>(buffer.trajectory(d.traj).rewards.size());
      if (config.pair_mode == PairMode::equal_length) {
        if (shared_start < 0) shared_start = rng.next_index(len);
        d.start = std::min(shared_start, len - 1);
      } else {
        d.start = rng.next_index(len);
      }
      d.features = featurize(buffer.trajectory(d.traj), d.start, config.gamma, model.layout,
                             config.length_cap);
      d.window_return = sub_return(buffer.trajectory(d.traj), d.start, config.length_cap);
      draws.push_back(std::move(d));
    }
    for (int k = 0; k < params.batch_size; ++k) {
      for (int h = k + 1; h < params.batch_size; ++h) {
        const double gap = draws[k].window_return - draws[h].window_return;
        if (std::abs(gap) <= config.tie_tolerance) continue;
        pairs.emplace_back(gap > 0.0 ? k : h, gap > 0.0 ? h : k);
      }
    }
  }
  require(!pairs.empty(), ErrorCode::no_preference_signal,
          "no preference signal: batch sampling found no rankable sub-trajectory pair");

  // Fisher-Yates, then keep the first pairs_per_batch.
  for (size_t i = pairs.size(); i > 1; --i) {
    std::swap(pairs[i - 1], pairs[rng.next_index(static_cast<int>(i))]);
  }
  if (static_cast<int>(pairs.size()) > params.pairs_per_batch) {
    pairs.resize(params.pairs_per_batch);
  }

  std::vector<double> grad(model.weights.size(), 0.0);
  TrainMetrics metrics;
  int correct = 0;
  for (const auto& [w, l] : pairs) {
    const double z = pair_logit(model, draws[w].features, draws[l].features);
    metrics.mean_loss += softplus(-z);
    if (z > 0.0) ++correct;
    const double coeff = -sigmoid(-z);
    for (size_t i = 0; i < grad.size(); ++i) {
      grad[i] += coeff * (draws[w].features.phi[i] - draws[l].features.phi[i]);
    }
  }
  const double inv = 1.0 / static_cast<double>(pairs.size());
  metrics.mean_loss *= inv;
  metrics.rank_accuracy = correct * inv;

  if (params.learning_rate != 0.0) {
    // The step is taken under the inverse-discount parameterization
    // u(s, k) = gamma^k * w(s, k), where the exact return-reproducing
    // separator is the bounded table u(s, k) = r(s). In the raw weights the
    // gradient of a late-time coordinate is damped by gamma^k while the
    // separator needs gamma^-k magnitudes, so a fixed-rate step there stalls
    // far from convergence. State-only models have a single scale and keep
    // the plain step.
    std::vector<double> discount_pow(model.layout.horizon, 1.0);
    for (int k = 1; k < model.layout.horizon; ++k) {
      discount_pow[k] = discount_pow[k - 1] * config.gamma;
    }
    for (size_t i = 0; i < grad.size(); ++i) {
      const double scale =
          model.layout.time_indexed ? discount_pow[i % model.layout.horizon] : 1.0;
      if (scale == 0.0) continue;  // gamma = 0: no information beyond k = 0
      const double u = scale * model.weights[i];
      const double u_grad = grad[i] * inv / scale + config.l2 * u;
      model.weights[i] = (u - params.learning_rate * u_grad) / scale;
    }
  }
  return metrics;
}

double rank_accuracy(const LinearRewardModel& model, const ReplayBuffer& buffer,
                     std::span<const PairSample> pairs, const RankingConfig& config) {
  require(!pairs.empty(), ErrorCode::invalid_argument, "rank_accuracy needs at least one pair");
  int correct = 0;
  for (const PairSample& pair : pairs) {
    const TrajectoryFeatures a = featurize(buffer.trajectory(pair.traj_i), pair.start_i,
                                           config.gamma, model.layout, config.length_cap);
    const TrajectoryFeatures b = featurize(buffer.trajectory(pair.traj_j), pair.start_j,
                                           config.gamma, model.layout, config.length_cap);
    const double z = pair_logit(model, a, b);
    if ((pair.first_wins && z > 0.0) || (!pair.first_wins && z < 0.0)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

std::vector<PairSample> sample_pairs(const ReplayBuffer& buffer, int count,
                                     const RankingConfig& config, uint64_t seed) {
  require(buffer.has_preference_signal(config.tie_tolerance), ErrorCode::no_preference_signal,
          "no preference signal: the buffer holds no pair of trajectories with distinct returns");
  Rng rng(seed);
  std::vector<PairSample> pairs;
  pairs.reserve(count);
  for (long attempt = 0; attempt < 1000L * count && static_cast<int>(pairs.size()) < count;
       ++attempt) {
    PairSample p;
    p.traj_i = rng.next_index(buffer.size());
    p.traj_j = rng.next_index(buffer.size());
    const int len_i = static_cast<int>(buffer.trajectory(p.traj_i).rewards.size());
    const int len_j = static_cast<int>(buffer.trajectory(p.traj_j).rewards.size());
    if (config.pair_mode == PairMode::equal_length) {
      p.start_i = rng.next_index(std::min(len_i, len_j));
      p.start_j = p.start_i;
    } else {
      p.start_i = rng.next_index(len_i);
      p.start_j = rng.next_index(len_j);
    }
    const double gap = sub_return(buffer.trajectory(p.traj_i), p.start_i, config.length_cap) -
                       sub_return(buffer.trajectory(p.traj_j), p.start_j, config.length_cap);
    if (std::abs(gap) <= config.tie_tolerance) continue;
    p.first_wins = gap > 0.0;
    pairs.push_back(p);
  }
  require(static_cast<int>(pairs.size()) == count, ErrorCode::no_preference_signal,
          "no preference signal: could not sample enough rankable pairs");
  return pairs;
}

SurrogateReward to_surrogate(const LinearRewardModel& model) {
  SurrogateReward s = zero_surrogate(model.layout.num_states, model.layout.horizon);
  for (int state = 0; state < model.layout.num_states; ++state) {
    for (int t = 0; t < model.layout.horizon; ++t) {
      s.at(state, t) = model.weights[model.layout.index(state, t)];
    }
  }
  return s;
}

}  // namespace rewardlab

#include "dpo/adaptive_wrapper.hpp"

#include <cmath>
#include <limits>

#include "dpo/parallel.hpp"

namespace dpo {

AdaptiveWrapper::AdaptiveWrapper(LearnerFactory factory, std::int64_t horizon, std::uint64_t seed,
                                 WrapperMode mode)
    : factory_(std::move(factory)), horizon_(horizon), seed_(seed), mode_(mode) {
  if (horizon_ < 1) throw PreconditionError("AdaptiveWrapper: horizon must be positive");
  if (!factory_) throw PreconditionError("AdaptiveWrapper: null learner factory");
  history_.reserve(static_cast<std::size_t>(horizon_));
  if (mode_ == WrapperMode::kLive) {
    live_.reserve(static_cast<std::size_t>(horizon_));
    for (std::int64_t t = 1; t <= horizon_; ++t) live_.push_back(factory_(replica_seed(t)));
  }
}

std::uint64_t AdaptiveWrapper::replica_seed(std::int64_t t) const {
  return Rng(seed_).child(static_cast<std::uint64_t>(t)).seed();
}

Label AdaptiveWrapper::predict(Instance x) {
  if (round_ > horizon_) throw ProtocolError("AdaptiveWrapper: horizon exhausted");
  Label answer = 0;
  if (mode_ == WrapperMode::kReplay) {
    // Fresh replica for the current round; the revealed history is replayed
    // through its predict/update contract with the replayed predictions
    // discarded, so its state and rng position match a live replica's.
    std::unique_ptr<OnlineLearner> replica = factory_(replica_seed(round_));
    for (const Example& e : history_) {
      (void)replica->predict(e.x);
      replica->update(e.x, e.y);
    }
    answer = replica->predict(x);
  } else {
    for (std::int64_t j = 1; j <= horizon_; ++j) {
      const Label p = live_[static_cast<std::size_t>(j - 1)]->predict(x);
      if (j == round_) answer = p;
    }
  }
  predicted_ = true;
  return answer;
}

void AdaptiveWrapper::update(Instance x, Label y) {
  if (round_ > horizon_) throw ProtocolError("AdaptiveWrapper: horizon exhausted");
  if (!predicted_) throw ProtocolError("AdaptiveWrapper: update before predict");
  if (mode_ == WrapperMode::kLive)
    for (auto& replica : live_) replica->update(x, y);
  history_.push_back({x, y});
  ++round_;
  predicted_ = false;
}

ReplicaLossProfile replica_loss_profile(const LearnerFactory& factory,
                                        const AdversaryFactory& adversary_factory,
                                        std::int64_t horizon, std::int32_t trials, Rng& rng) {
  if (trials < 200) throw PreconditionError("replica_loss_profile: trials must be >= 200");
  if (horizon < 1) throw PreconditionError("replica_loss_profile: horizon must be positive");

  const std::size_t t_count = static_cast<std::size_t>(horizon);
  std::vector<std::vector<std::int64_t>> loss_sums(t_count,
                                                   std::vector<std::int64_t>(t_count, 0));
  const Rng base(rng.next_u64());
  std::vector<std::vector<std::vector<char>>> per_trial(static_cast<std::size_t>(trials));

  parallel_for(trials, [&](std::int64_t trial) {
    Rng trial_rng = base.child(static_cast<std::uint64_t>(trial));
    auto adversary = adversary_factory(trial_rng.child(0).seed());
    std::vector<std::unique_ptr<OnlineLearner>> replicas;
    replicas.reserve(t_count);
    for (std::int64_t j = 1; j <= horizon; ++j)
      replicas.push_back(factory(trial_rng.child(static_cast<std::uint64_t>(j)).seed()));

    auto& losses = per_trial[static_cast<std::size_t>(trial)];
    losses.assign(t_count, std::vector<char>(t_count, 0));
    for (std::int64_t t = 1; t <= horizon; ++t) {
      const Example e = adversary->next_example();
      Label surfaced = 0;
      for (std::int64_t j = 1; j <= horizon; ++j) {
        const Label p = replicas[static_cast<std::size_t>(j - 1)]->predict(e.x);
        losses[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(j - 1)] =
            static_cast<char>(zero_one_loss(p, e.y));
        if (j == t) surfaced = p;
      }
      adversary->observe_prediction(surfaced);
      for (auto& replica : replicas) replica->update(e.x, e.y);
    }
  });

  for (const auto& losses : per_trial)
    for (std::size_t t = 0; t < t_count; ++t)
      for (std::size_t j = 0; j < t_count; ++j) loss_sums[t][j] += losses[t][j];

  const double nan = std::numeric_limits<double>::quiet_NaN();
  ReplicaLossProfile profile;
  profile.horizon = horizon;
  profile.trials = trials;
  profile.mean.assign(t_count, std::vector<double>(t_count, nan));
  profile.std_error.assign(t_count, std::vector<double>(t_count, nan));
  for (std::size_t t = 0; t < t_count; ++t)
    for (std::size_t j = t; j < t_count; ++j) {
      const double mean = static_cast<double>(loss_sums[t][j]) / static_cast<double>(trials);
      profile.mean[t][j] = mean;
      profile.std_error[t][j] = std::sqrt(mean * (1.0 - mean) / static_cast<double>(trials));
    }
  return profile;
}

}  // namespace dpo

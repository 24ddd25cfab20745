#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dpo/adversary.hpp"
#include "dpo/online_learner.hpp"

namespace dpo {

enum class WrapperMode {
  // Default: replica t is instantiated at round t from its own seed and the
  // shared history is replayed through its predict/update contract (replayed
  // predictions discarded). O(T) memory, O(T^2) learner steps per game.
  kReplay,
  // All T replicas live from round 1, every one predicts and updates each
  // round; round t surfaces replica t's prediction. For conformance checks
  // and profiling.
  kLive,
};

// Converts an oblivious-setting online learner into one with the same
// expected regret against adaptive adversaries: T independently seeded
// replicas, replica t answering round t. Replica t's state depends only on
// the revealed history and its own seed, never on surfaced predictions.
class AdaptiveWrapper final : public OnlineLearner {
 public:
  AdaptiveWrapper(LearnerFactory factory, std::int64_t horizon, std::uint64_t seed,
                  WrapperMode mode = WrapperMode::kReplay);

  Label predict(Instance x) override;
  void update(Instance x, Label y) override;

  std::int64_t round() const { return round_; }
  std::int64_t horizon() const { return horizon_; }
  const std::vector<Example>& history() const { return history_; }
  std::uint64_t replica_seed(std::int64_t t) const;

 private:
  LearnerFactory factory_;
  std::int64_t horizon_;
  std::uint64_t seed_;
  WrapperMode mode_;
  std::vector<Example> history_;
  std::int64_t round_ = 1;
  bool predicted_ = false;
  std::vector<std::unique_ptr<OnlineLearner>> live_;  // kLive only
};

struct ReplicaLossProfile {
  std::int64_t horizon = 0;
  std::int32_t trials = 0;
  // mean[t-1][j-1] = Monte Carlo estimate of E[loss of replica j at round t],
  // defined for j >= t; entries below the diagonal are NaN by construction.
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> std_error;
};

// Simulates all T replicas live against the adversary driven by the
// wrapper's surfaced predictions and records per-(round, replica) losses.
ReplicaLossProfile replica_loss_profile(const LearnerFactory& factory,
                                        const AdversaryFactory& adversary_factory,
                                        std::int64_t horizon, std::int32_t trials, Rng& rng);

}  // namespace dpo

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "dpo/core.hpp"
#include "dpo/hypothesis.hpp"
#include "dpo/rng.hpp"

namespace dpo {

// Environment side of the repeated game. Each round the adversary commits to
// a labeled pair (x_t, y_t) before seeing the learner's prediction for round
// t; afterwards the game reports the prediction back. Adaptive adversaries
// see only past predictions, never learner internals.
class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual Example next_example() = 0;
  virtual void observe_prediction(Label yhat) = 0;
};

using AdversaryFactory = std::function<std::unique_ptr<Adversary>(std::uint64_t seed)>;

// Labels an instance marginal by a target concept; rejects atoms without mass
// order constraints but validates instances against the domain.
FiniteDistribution label_by_concept(const FiniteHypothesisClass& cls,
                                    std::span<const std::pair<Instance, double>> marginal,
                                    std::int64_t concept_index);

// T i.i.d. draws from a realizable distribution, frozen before the game.
LabeledSample oblivious_iid_sequence(const FiniteHypothesisClass& cls,
                                     const FiniteDistribution& realizable_d,
                                     std::int64_t concept_index, std::int64_t horizon, Rng& rng);

// Plays a pre-committed sequence; ignores predictions.
class FixedSequenceAdversary final : public Adversary {
 public:
  explicit FixedSequenceAdversary(LabeledSample sequence);

  Example next_example() override;
  void observe_prediction(Label yhat) override {(void)yhat;}

 private:
  LabeledSample sequence_;
  std::size_t next_ = 0;
};

// Greedy adaptive adversary: plays unseen instances first (lowest index),
// then the instance with the highest observed learner-error frequency
// (ties to the lowest index); labels by the target concept.
class TrackerAdversary final : public Adversary {
 public:
  TrackerAdversary(const FiniteHypothesisClass& cls, std::int64_t concept_index);

  Example next_example() override;
  void observe_prediction(Label yhat) override;

 private:
  const FiniteHypothesisClass* cls_;
  std::int64_t concept_;
  std::vector<std::int64_t> plays_;
  std::vector<std::int64_t> errors_;
  Instance pending_x_ = -1;
  Label pending_y_ = 0;
};

// Bisection stressor for the thresholds class: queries the midpoint of the
// interval of thresholds consistent with the labels revealed so far.
class BisectAdversary final : public Adversary {
 public:
  BisectAdversary(const FiniteHypothesisClass& cls, std::int64_t concept_index);

  Example next_example() override;
  void observe_prediction(Label yhat) override {(void)yhat;}

  std::pair<std::int64_t, std::int64_t> feasible() const { return {lo_, hi_}; }

 private:
  const FiniteHypothesisClass* cls_;
  std::int64_t concept_;
  std::int64_t lo_;  // inclusive threshold-index bounds still consistent
  std::int64_t hi_;
};

// Version-space stressor for thresholds with no target fixed in advance:
// queries the midpoint and answers with the label that keeps the larger half
// of the version space alive, so every finished game stays realizable.
class ConsistencyOracleAdversary final : public Adversary {
 public:
  explicit ConsistencyOracleAdversary(const FiniteHypothesisClass& cls);

  Example next_example() override;
  void observe_prediction(Label yhat) override {(void)yhat;}

  std::pair<std::int64_t, std::int64_t> version_space() const { return {lo_, hi_}; }

 private:
  const FiniteHypothesisClass* cls_;
  std::int64_t lo_;
  std::int64_t hi_;
};

}  // namespace dpo

#include "dpo/adversary.hpp"

#include <algorithm>

namespace dpo {

namespace {

void check_concept(const FiniteHypothesisClass& cls, std::int64_t c) {
  if (c < 0 || c >= cls.size())
    throw PreconditionError("adversary: target concept index out of range");
}

}  // namespace

FiniteDistribution label_by_concept(const FiniteHypothesisClass& cls,
                                    std::span<const std::pair<Instance, double>> marginal,
                                    std::int64_t concept_index) {
  check_concept(cls, concept_index);
  std::vector<FiniteDistribution::Atom> atoms;
  atoms.reserve(marginal.size());
  for (const auto& [x, mass] : marginal)
    atoms.push_back({{x, cls.eval(concept_index, x)}, mass});
  return FiniteDistribution(std::move(atoms));
}

LabeledSample oblivious_iid_sequence(const FiniteHypothesisClass& cls,
                                     const FiniteDistribution& realizable_d,
                                     std::int64_t concept_index, std::int64_t horizon, Rng& rng) {
  check_concept(cls, concept_index);
  if (horizon < 1) throw PreconditionError("oblivious_iid_sequence: horizon must be positive");
  for (const auto& atom : realizable_d.support())
    if (atom.mass > 0.0 && cls.eval(concept_index, atom.example.x) != atom.example.y)
      throw PreconditionError("oblivious_iid_sequence: distribution labels disagree with the target");
  LabeledSample sequence;
  sequence.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 0; t < horizon; ++t) sequence.push_back(realizable_d.sample(rng));
  return sequence;
}

FixedSequenceAdversary::FixedSequenceAdversary(LabeledSample sequence)
    : sequence_(std::move(sequence)) {
  if (sequence_.empty()) throw PreconditionError("FixedSequenceAdversary: empty sequence");
}

Example FixedSequenceAdversary::next_example() {
  if (next_ >= sequence_.size()) throw ProtocolError("FixedSequenceAdversary: sequence exhausted");
  return sequence_[next_++];
}

TrackerAdversary::TrackerAdversary(const FiniteHypothesisClass& cls, std::int64_t concept_index)
    : cls_(&cls),
      concept_(concept_index),
      plays_(static_cast<std::size_t>(cls.domain_size()), 0),
      errors_(static_cast<std::size_t>(cls.domain_size()), 0) {
  check_concept(cls, concept_index);
}

Example TrackerAdversary::next_example() {
  if (pending_x_ >= 0) throw ProtocolError("TrackerAdversary: prediction for the last round not observed");
  Instance pick = -1;
  // Unplayed instances first, in index order; then the highest observed
  // error frequency, ties to the lowest index.
  for (Instance x = 0; x < cls_->domain_size(); ++x)
    if (plays_[static_cast<std::size_t>(x)] == 0) {
      pick = x;
      break;
    }
  if (pick < 0) {
    double best = -1.0;
    for (Instance x = 0; x < cls_->domain_size(); ++x) {
      const double freq = static_cast<double>(errors_[static_cast<std::size_t>(x)]) /
                          static_cast<double>(plays_[static_cast<std::size_t>(x)]);
      if (freq > best) {
        best = freq;
        pick = x;
      }
    }
  }
  pending_x_ = pick;
  pending_y_ = cls_->eval(concept_, pick);
  return {pending_x_, pending_y_};
}

void TrackerAdversary::observe_prediction(Label yhat) {
  if (pending_x_ < 0) throw ProtocolError("TrackerAdversary: no pending round");
  plays_[static_cast<std::size_t>(pending_x_)] += 1;
  errors_[static_cast<std::size_t>(pending_x_)] += zero_one_loss(yhat, pending_y_);
  pending_x_ = -1;
}

BisectAdversary::BisectAdversary(const FiniteHypothesisClass& cls, std::int64_t concept_index)
    : cls_(&cls), concept_(concept_index), lo_(0), hi_(cls.size() - 1) {
  if (cls.kind() != ClassKind::kThresholds)
    throw PreconditionError("BisectAdversary: requires the thresholds class");
  check_concept(cls, concept_index);
}

Example BisectAdversary::next_example() {
  // Instance x splits the feasible thresholds [lo, hi] into {j <= x} (label 1)
  // and {j > x} (label 0); the midpoint keeps halving until a singleton.
  std::int64_t x = (lo_ + hi_) / 2;
  x = std::clamp<std::int64_t>(x, 0, cls_->domain_size() - 1);
  const Label y = cls_->eval(concept_, static_cast<Instance>(x));
  if (y == 1)
    hi_ = std::min(hi_, x);
  else
    lo_ = std::max(lo_, x + 1);
  return {static_cast<Instance>(x), y};
}

ConsistencyOracleAdversary::ConsistencyOracleAdversary(const FiniteHypothesisClass& cls)
    : cls_(&cls), lo_(0), hi_(cls.size() - 1) {
  if (cls.kind() != ClassKind::kThresholds)
    throw PreconditionError("ConsistencyOracleAdversary: requires the thresholds class");
}

Example ConsistencyOracleAdversary::next_example() {
  std::int64_t x = (lo_ + hi_) / 2;
  x = std::clamp<std::int64_t>(x, 0, cls_->domain_size() - 1);
  // Label 1 keeps thresholds [lo, min(hi, x)], label 0 keeps [x+1, hi]; answer
  // whichever side of the version space is larger (ties to label 0).
  const std::int64_t keep_one = std::min(hi_, x) - lo_ + 1;
  const std::int64_t keep_zero = hi_ - std::max(lo_, x + 1) + 1;
  Label y;
  if (keep_one > keep_zero && keep_one > 0)
    y = 1;
  else if (keep_zero > 0)
    y = 0;
  else
    y = 1;
  if (y == 1)
    hi_ = std::min(hi_, x);
  else
    lo_ = std::max(lo_, x + 1);
  return {static_cast<Instance>(x), y};
}

}  // namespace dpo

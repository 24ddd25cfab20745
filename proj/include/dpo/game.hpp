#pragma once

#include <cstdint>

#include "dpo/adversary.hpp"
#include "dpo/core.hpp"
#include "dpo/hypothesis.hpp"
#include "dpo/online_learner.hpp"

namespace dpo {

// One learner-vs-adversary game over `horizon` rounds with strict
// alternation: the adversary commits (x_t, y_t), the learner predicts, the
// adversary observes the prediction, the learner updates. The finished
// transcript must be realizable by some hypothesis in the class.
Transcript run_game(OnlineLearner& learner, Adversary& adversary,
                    const FiniteHypothesisClass& cls, std::int64_t horizon,
                    std::uint64_t seed_for_record);

}  // namespace dpo

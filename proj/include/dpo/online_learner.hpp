#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "dpo/core.hpp"

namespace dpo {

// The online protocol every learner in this library speaks: the driver asks
// for a prediction on x_t, then reveals the true label. predict may be called
// more than once before an update (the extra calls are advisory and their
// randomness is fresh); update consumes one round of the learner's horizon.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;

  virtual Label predict(Instance x) = 0;
  virtual void update(Instance x, Label y) = 0;
};

// Builds a fresh, independently seeded learner instance.
using LearnerFactory = std::function<std::unique_ptr<OnlineLearner>(std::uint64_t seed)>;

}  // namespace dpo

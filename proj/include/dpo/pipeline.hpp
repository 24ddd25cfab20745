#pragma once

#include <cstdint>
#include <memory>

#include "dpo/boosting.hpp"
#include "dpo/weak_online.hpp"

namespace dpo {

enum class PipelineMode {
  kFaithful,  // boost adaptive-wrapped weak learners (replay replicas)
  kFast,      // boost bare weak learners; valid against oblivious adversaries only
};

// Resolved composition of a built pipeline, for summaries and cross-checks.
struct PipelineSpec {
  std::int64_t boosters = 0;
  std::int64_t pool_n = 0;
  std::int32_t m0 = 0;
  double gamma = kWeakEdge;
  double weak_excess = 0.0;
};

// The strong online learner: online BBM over boost_schedule(T, 1/8) copies of
// the (optionally adaptive-wrapped) expert-pool weak learner.
std::unique_ptr<OnlineLearner> build_pipeline(const FiniteHypothesisClass& cls, std::int32_t m0,
                                              std::int64_t horizon, std::uint64_t seed,
                                              PipelineMode mode, double eps = 0.1,
                                              std::int64_t pool_override = 0,
                                              PipelineSpec* spec_out = nullptr);

// Reference curve c1 * m0 * ln T + c2; constants are configured, never
// asserted as the true hidden constants.
double theorem1_bound(std::int32_t m0, std::int64_t horizon, double c1 = 1.0, double c2 = 0.0);

}  // namespace dpo

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dpo/dp_learner.hpp"
#include "dpo/hypothesis.hpp"
#include "dpo/rng.hpp"

namespace dpo {

// Dummy sample: m0 occurrences of (instance 0, label 0).
LabeledSample dummy_sample(std::int32_t m0);

inline constexpr std::int64_t kDefaultPoolCeiling = 50'000'000;

// N = ceil(2 * exp(eps*m0) * ln 16): the smallest N for which
// (1 - (1/2)exp(-eps*m0))^N <= 1/16 via 1-x <= exp(-x).
// Throws InfeasiblePoolError past the ceiling.
std::int64_t pool_size(std::int32_t m0, double eps, std::int64_t n_ceiling = kDefaultPoolCeiling);

// Black-box private-learner oracle: (class, sample, eps, rng) -> hypothesis index.
using LearnerOracle =
    std::function<std::int64_t(const FiniteHypothesisClass&, const LabeledSample&, double, Rng&)>;

// The concrete oracle: one exponential-mechanism draw.
LearnerOracle exponential_mechanism_oracle();

// N i.i.d. hypotheses drawn by applying the learner oracle to the dummy sample.
struct ExpertPool {
  std::int32_t m0 = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> experts;

  std::string to_json() const;  // {m0, N, seed, experts:[...]}
};

ExpertPool sample_pool(const FiniteHypothesisClass& cls, const LearnerOracle& oracle,
                       std::int32_t m0, std::int64_t n, double eps, Rng& rng);

struct CoverageEstimate {
  double frequency = 0.0;
  double std_error = 0.0;
};

// Monte Carlo frequency, over independent pools, of the event that some pool
// member has exact population risk <= 1/4 under d. Requires d realizable.
CoverageEstimate coverage_estimate(const FiniteHypothesisClass& cls, const LearnerOracle& oracle,
                                   std::int32_t m0, std::int64_t n, double eps,
                                   const FiniteDistribution& d, std::int32_t trials, Rng& rng);

}  // namespace dpo

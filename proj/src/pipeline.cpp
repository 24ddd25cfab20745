#include "dpo/pipeline.hpp"

#include <cmath>

#include "dpo/adaptive_wrapper.hpp"

namespace dpo {

std::unique_ptr<OnlineLearner> build_pipeline(const FiniteHypothesisClass& cls, std::int32_t m0,
                                              std::int64_t horizon, std::uint64_t seed,
                                              PipelineMode mode, double eps,
                                              std::int64_t pool_override, PipelineSpec* spec_out) {
  if (horizon < 1) throw PreconditionError("build_pipeline: horizon must be positive");
  if (m0 < 1) throw PreconditionError("build_pipeline: m0 must be positive");

  const auto blueprint = WeakLearnerBlueprint::make(cls, m0, horizon, eps, pool_override);
  const std::int64_t boosters = boost_schedule(horizon, kWeakEdge);
  const Rng root(seed);

  std::vector<std::unique_ptr<OnlineLearner>> weak;
  weak.reserve(static_cast<std::size_t>(boosters));
  for (std::int64_t i = 0; i < boosters; ++i) {
    const std::uint64_t weak_seed = root.child(static_cast<std::uint64_t>(i) + 1).seed();
    if (mode == PipelineMode::kFaithful) {
      weak.push_back(std::make_unique<AdaptiveWrapper>(
          [blueprint](std::uint64_t s) { return std::make_unique<WeakOnlineLearner>(blueprint, s); },
          horizon, weak_seed, WrapperMode::kReplay));
    } else {
      weak.push_back(std::make_unique<WeakOnlineLearner>(blueprint, weak_seed));
    }
  }

  if (spec_out) {
    spec_out->boosters = boosters;
    spec_out->pool_n = blueprint->pool_n;
    spec_out->m0 = m0;
    spec_out->gamma = kWeakEdge;
    spec_out->weak_excess = weak_guarantee(blueprint->pool_n).excess_loss;
  }
  return std::make_unique<OnlineBbm>(std::move(weak), kWeakEdge, horizon, root.child(0).seed());
}

double theorem1_bound(std::int32_t m0, std::int64_t horizon, double c1, double c2) {
  if (m0 < 1) throw PreconditionError("theorem1_bound: m0 must be positive");
  if (horizon < 1) throw PreconditionError("theorem1_bound: horizon must be positive");
  return c1 * static_cast<double>(m0) * std::log(static_cast<double>(horizon)) + c2;
}

}  // namespace dpo

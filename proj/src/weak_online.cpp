#include "dpo/weak_online.hpp"

#include <cmath>

namespace dpo {

WeakGuarantee weak_guarantee(std::int64_t pool_n) {
  if (pool_n < 1) throw PreconditionError("weak_guarantee: pool size must be positive");
  return {kWeakEdge, kWeakExcessCoeff * std::log(static_cast<double>(pool_n))};
}

std::shared_ptr<const WeakLearnerBlueprint> WeakLearnerBlueprint::make(
    const FiniteHypothesisClass& cls, std::int32_t m0, std::int64_t horizon, double eps,
    std::int64_t pool_override) {
  if (horizon < 1) throw PreconditionError("weak learner: horizon must be positive");
  auto bp = std::make_shared<WeakLearnerBlueprint>();
  bp->cls = &cls;
  bp->eps = eps;
  bp->m0 = m0;
  bp->horizon = horizon;
  bp->pool_n = pool_override > 0 ? pool_override : pool_size(m0, eps);
  bp->prior = exponential_mechanism_distribution(cls, dummy_sample(m0), eps);
  return bp;
}

WeakOnlineLearner::WeakOnlineLearner(std::shared_ptr<const WeakLearnerBlueprint> blueprint,
                                     std::uint64_t seed)
    : cls_(blueprint->cls),
      horizon_(blueprint->horizon),
      mw_(blueprint->pool_n, blueprint->horizon),
      rng_(seed) {
  // Drawing from the cached prior is draw-for-draw identical to calling the
  // exponential-mechanism oracle pool_n times on the dummy sample.
  pool_.m0 = blueprint->m0;
  pool_.seed = seed;
  pool_.experts.reserve(static_cast<std::size_t>(blueprint->pool_n));
  for (std::int64_t i = 0; i < blueprint->pool_n; ++i)
    pool_.experts.push_back(sample_index(blueprint->prior, rng_));
}

WeakOnlineLearner::WeakOnlineLearner(const FiniteHypothesisClass& cls, const LearnerOracle& oracle,
                                     std::int32_t m0, std::int64_t horizon, double eps,
                                     std::uint64_t seed, std::int64_t pool_override)
    : cls_(&cls),
      horizon_(horizon),
      mw_((pool_override > 0 ? pool_override : pool_size(m0, eps)), horizon),
      rng_(seed) {
  const std::int64_t n = pool_override > 0 ? pool_override : pool_size(m0, eps);
  pool_ = sample_pool(cls, oracle, m0, n, eps, rng_);
}

Label WeakOnlineLearner::predict(Instance x) {
  if (mw_.round() >= horizon_) throw ProtocolError("weak learner: horizon exhausted");
  const std::int64_t j = mw_.sample_expert(rng_);
  return cls_->eval(pool_.experts[static_cast<std::size_t>(j)], x);
}

void WeakOnlineLearner::update(Instance x, Label y) {
  if (mw_.round() >= horizon_) throw ProtocolError("weak learner: horizon exhausted");
  std::vector<int> losses(pool_.experts.size());
  for (std::size_t j = 0; j < pool_.experts.size(); ++j)
    losses[j] = zero_one_loss(cls_->eval(pool_.experts[j], x), y);
  mw_.update(losses);
}

}  // namespace dpo

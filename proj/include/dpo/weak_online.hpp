#pragma once

#include <cstdint>
#include <memory>

#include "dpo/expert_pool.hpp"
#include "dpo/mw.hpp"
#include "dpo/online_learner.hpp"

namespace dpo {

inline constexpr double kWeakEdge = 0.125;

// Excess-loss coefficient: T0 = 16 ln N. The pool-plus-MW mistake bound is
// 2 sqrt(T ln N) + T/4 + T/16, and max_T [2 sqrt(T ln N) - T/16] = 16 ln N
// (attained at T = 256 ln N), so this is the smallest coefficient for which
// the bound fits under (1/2 - 1/8) T + T0 for every T.
inline constexpr double kWeakExcessCoeff = 16.0;

struct WeakGuarantee {
  double gamma = kWeakEdge;
  double excess_loss = 0.0;

  double mistake_bound(std::int64_t horizon) const {
    return (0.5 - gamma) * static_cast<double>(horizon) + excess_loss;
  }
};

WeakGuarantee weak_guarantee(std::int64_t pool_n);

// Everything shared by every instance of the weak learner for one
// configuration: the class, the faithful pool size, and the exact output
// distribution of the private learner on the dummy sample. Sampling a pool
// from the cached distribution is draw-for-draw identical to N oracle calls.
struct WeakLearnerBlueprint {
  const FiniteHypothesisClass* cls = nullptr;
  double eps = 0.1;
  std::int32_t m0 = 0;
  std::int64_t horizon = 0;
  std::int64_t pool_n = 0;
  std::vector<double> prior;  // exact P0 over hypothesis indices

  static std::shared_ptr<const WeakLearnerBlueprint> make(const FiniteHypothesisClass& cls,
                                                          std::int32_t m0, std::int64_t horizon,
                                                          double eps = 0.1,
                                                          std::int64_t pool_override = 0);
};

// Expert-pool-plus-MW weak online learner for oblivious adversaries.
class WeakOnlineLearner final : public OnlineLearner {
 public:
  WeakOnlineLearner(std::shared_ptr<const WeakLearnerBlueprint> blueprint, std::uint64_t seed);

  // Generic-oracle construction: pool drawn by n calls to the given oracle.
  WeakOnlineLearner(const FiniteHypothesisClass& cls, const LearnerOracle& oracle, std::int32_t m0,
                    std::int64_t horizon, double eps, std::uint64_t seed,
                    std::int64_t pool_override = 0);

  Label predict(Instance x) override;
  void update(Instance x, Label y) override;

  const ExpertPool& pool() const { return pool_; }
  const MwState& mw() const { return mw_; }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t rounds_consumed() const { return mw_.round(); }

 private:
  const FiniteHypothesisClass* cls_;
  std::int64_t horizon_;
  ExpertPool pool_;
  MwState mw_;
  Rng rng_;
};

}  // namespace dpo

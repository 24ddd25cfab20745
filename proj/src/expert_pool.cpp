#include "dpo/expert_pool.hpp"

#include <cmath>

#include <json.hpp>

#include "dpo/parallel.hpp"

namespace dpo {

LabeledSample dummy_sample(std::int32_t m0) {
  if (m0 < 1) throw PreconditionError("dummy_sample: m0 must be positive");
  return LabeledSample(static_cast<std::size_t>(m0), Example{0, 0});
}

std::int64_t pool_size(std::int32_t m0, double eps, std::int64_t n_ceiling) {
  if (m0 < 1) throw PreconditionError("pool_size: m0 must be positive");
  if (!(eps > 0.0)) throw PreconditionError("pool_size: eps must be positive");
  const double n = 2.0 * std::exp(eps * static_cast<double>(m0)) * std::log(16.0);
  if (!std::isfinite(n) || n > static_cast<double>(n_ceiling))
    throw InfeasiblePoolError("pool_size: required pool exceeds the configured ceiling");
  return static_cast<std::int64_t>(std::ceil(n));
}

LearnerOracle exponential_mechanism_oracle() {
  return [](const FiniteHypothesisClass& cls, const LabeledSample& s, double eps, Rng& rng) {
    return train_private(cls, s, eps, rng);
  };
}

std::string ExpertPool::to_json() const {
  nlohmann::json j;
  j["m0"] = m0;
  j["N"] = experts.size();
  j["seed"] = seed;
  j["experts"] = experts;
  return j.dump();
}

ExpertPool sample_pool(const FiniteHypothesisClass& cls, const LearnerOracle& oracle,
                       std::int32_t m0, std::int64_t n, double eps, Rng& rng) {
  if (n < 1) throw PreconditionError("sample_pool: pool size must be positive");
  const LabeledSample s0 = dummy_sample(m0);
  ExpertPool pool;
  pool.m0 = m0;
  pool.seed = rng.seed();
  pool.experts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) pool.experts.push_back(oracle(cls, s0, eps, rng));
  return pool;
}

CoverageEstimate coverage_estimate(const FiniteHypothesisClass& cls, const LearnerOracle& oracle,
                                   std::int32_t m0, std::int64_t n, double eps,
                                   const FiniteDistribution& d, std::int32_t trials, Rng& rng) {
  if (trials < 200) throw PreconditionError("coverage_estimate: trials must be >= 200");
  if (!is_realizable(cls, d))
    throw PreconditionError("coverage_estimate: distribution is not realizable by the class");

  // Exact per-hypothesis risks once; each pool draw is then a lookup.
  std::vector<char> good(static_cast<std::size_t>(cls.size()), 0);
  for (std::int64_t h = 0; h < cls.size(); ++h)
    good[static_cast<std::size_t>(h)] = population_risk_exact(cls, h, d) <= 0.25 ? 1 : 0;

  const Rng base(rng.next_u64());
  std::vector<char> covered(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, [&](std::int64_t trial) {
    Rng trial_rng = base.child(static_cast<std::uint64_t>(trial));
    const ExpertPool pool = sample_pool(cls, oracle, m0, n, eps, trial_rng);
    for (std::int64_t h : pool.experts)
      if (good[static_cast<std::size_t>(h)]) {
        covered[static_cast<std::size_t>(trial)] = 1;
        break;
      }
  });
  std::int64_t hits = 0;
  for (char c : covered) hits += c;
  const double freq = static_cast<double>(hits) / static_cast<double>(trials);
  return {freq, std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials))};
}

}  // namespace dpo

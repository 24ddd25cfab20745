#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "dpo/online_learner.hpp"
#include "dpo/rng.hpp"

namespace dpo {

// Biased-random-walk potentials driving boost-by-majority example passing.
//
//   phi_k(s) = probability that a +-1 walk with up-probability 1/2+gamma,
//              started at s, sits at position <= 0 after k steps
//   phi_0(s) = 1 for s <= 0, else 0
//   phi_k(s) = (1/2+gamma) phi_{k-1}(s+1) + (1/2-gamma) phi_{k-1}(s-1)
//
// Weak learner i at margin s receives the example with probability
//   p_i(s) = w_i(s) / max_{s'} w_i(s'),   w_i(s) = (phi_{N-i}(s-1) - phi_{N-i}(s+1)) / 2,
// and p_i(s) = 1 when the whole weight row is zero.
class PotentialTable {
 public:
  PotentialTable(std::int64_t learners, double gamma);

  std::int64_t learners() const { return n_; }
  double gamma() const { return gamma_; }

  // Clamped lookup: s > k gives 0, s <= -k gives 1.
  double phi(std::int64_t k, std::int64_t s) const;

  // w_i(s) for learner index i in [1, N], margin s in [-N, N].
  double weight(std::int64_t i, std::int64_t s) const;
  double max_weight(std::int64_t i) const;
  double pass_probability(std::int64_t i, std::int64_t s) const;

  // CSV rows `k,s,phi` over the stored range.
  void write_csv(std::ostream& out) const;

 private:
  std::int64_t n_;
  double gamma_;
  std::vector<double> phi_;      // (n+1) rows of (2n+1) margins
  std::vector<double> max_w_;    // per learner index 1..n

  double stored(std::int64_t k, std::int64_t s) const;
};

// Online boost-by-majority: N weak learners vote (unweighted majority, ties
// to label 1); each received example is passed to learner i with probability
// p_i(s) where s is the running +-1 margin of the earlier learners' votes.
class OnlineBbm final : public OnlineLearner {
 public:
  OnlineBbm(std::vector<std::unique_ptr<OnlineLearner>> weak_learners, double gamma,
            std::int64_t horizon, std::uint64_t seed);

  Label predict(Instance x) override;
  void update(Instance x, Label y) override;

  const PotentialTable& table() const { return table_; }
  std::int64_t rounds_consumed() const { return rounds_; }

  // Test/metrics hook, called once per (learner, round) during update.
  using PassObserver = std::function<void(std::int64_t learner_index, std::int64_t margin, bool passed)>;
  void set_pass_observer(PassObserver observer) { observer_ = std::move(observer); }

 private:
  std::vector<std::unique_ptr<OnlineLearner>> learners_;
  PotentialTable table_;
  std::int64_t horizon_;
  std::int64_t rounds_ = 0;
  Rng rng_;
  std::vector<Label> votes_;
  Instance pending_x_ = -1;
  bool predicted_ = false;
  PassObserver observer_;
};

// exp(-N gamma^2 / 2) T + c sqrt(N) (T0 + 1/gamma) ln(N+1); the polylog
// constant c is configured, reported rather than claimed tight.
double bbm_mistake_bound(std::int64_t learners, double gamma, std::int64_t horizon, double t0,
                         double c = 1.0);

// N = ceil(2 ln T / gamma^2), floored at 1.
std::int64_t boost_schedule(std::int64_t horizon, double gamma);

}  // namespace dpo

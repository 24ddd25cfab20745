#include "dpo/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace dpo {

PotentialTable::PotentialTable(std::int64_t learners, double gamma) : n_(learners), gamma_(gamma) {
  if (n_ < 1) throw PreconditionError("PotentialTable: need at least one learner");
  if (!(gamma_ > 0.0 && gamma_ < 0.5))
    throw PreconditionError("PotentialTable: gamma must lie in (0, 1/2)");

  const std::int64_t width = 2 * n_ + 1;
  phi_.assign(static_cast<std::size_t>((n_ + 1) * width), 0.0);
  for (std::int64_t s = -n_; s <= n_; ++s)
    phi_[static_cast<std::size_t>(s + n_)] = s <= 0 ? 1.0 : 0.0;
  const double up = 0.5 + gamma_;
  const double down = 0.5 - gamma_;
  for (std::int64_t k = 1; k <= n_; ++k)
    for (std::int64_t s = -n_; s <= n_; ++s)
      phi_[static_cast<std::size_t>(k * width + s + n_)] = up * phi(k - 1, s + 1) + down * phi(k - 1, s - 1);

  max_w_.assign(static_cast<std::size_t>(n_), 0.0);
  for (std::int64_t i = 1; i <= n_; ++i) {
    double best = 0.0;
    for (std::int64_t s = -n_; s <= n_; ++s) best = std::max(best, weight(i, s));
    max_w_[static_cast<std::size_t>(i - 1)] = best;
  }
}

double PotentialTable::stored(std::int64_t k, std::int64_t s) const {
  return phi_[static_cast<std::size_t>(k * (2 * n_ + 1) + s + n_)];
}

double PotentialTable::phi(std::int64_t k, std::int64_t s) const {
  if (k < 0 || k > n_) throw PreconditionError("PotentialTable::phi: k out of range");
  if (s > k) return 0.0;   // the walk cannot come down to 0 in k steps
  if (s <= -k) return 1.0; // the walk cannot climb above 0 in k steps
  return stored(k, s);
}

double PotentialTable::weight(std::int64_t i, std::int64_t s) const {
  if (i < 1 || i > n_) throw PreconditionError("PotentialTable::weight: learner index out of range");
  return 0.5 * (phi(n_ - i, s - 1) - phi(n_ - i, s + 1));
}

double PotentialTable::max_weight(std::int64_t i) const {
  if (i < 1 || i > n_) throw PreconditionError("PotentialTable::max_weight: index out of range");
  return max_w_[static_cast<std::size_t>(i - 1)];
}

double PotentialTable::pass_probability(std::int64_t i, std::int64_t s) const {
  const double top = weight(i, s);
  const double bottom = max_weight(i);
  if (bottom <= 0.0) return 1.0;  // degenerate row: always pass
  return top / bottom;
}

void PotentialTable::write_csv(std::ostream& out) const {
  out << "k,s,phi\n";
  for (std::int64_t k = 0; k <= n_; ++k)
    for (std::int64_t s = -n_; s <= n_; ++s)
      out << k << ',' << s << ',' << stored(k, s) << '\n';
}

OnlineBbm::OnlineBbm(std::vector<std::unique_ptr<OnlineLearner>> weak_learners, double gamma,
                     std::int64_t horizon, std::uint64_t seed)
    : learners_(std::move(weak_learners)),
      table_(static_cast<std::int64_t>(learners_.size()), gamma),
      horizon_(horizon),
      rng_(seed),
      votes_(learners_.size(), 0) {
  if (learners_.empty()) throw PreconditionError("OnlineBbm: need at least one weak learner");
  if (horizon_ < 1) throw PreconditionError("OnlineBbm: horizon must be positive");
  for (const auto& learner : learners_)
    if (!learner) throw PreconditionError("OnlineBbm: null weak learner");
}

Label OnlineBbm::predict(Instance x) {
  if (rounds_ >= horizon_) throw ProtocolError("OnlineBbm: horizon exhausted");
  std::int64_t ones = 0;
  for (std::size_t i = 0; i < learners_.size(); ++i) {
    votes_[i] = learners_[i]->predict(x);
    ones += votes_[i];
  }
  pending_x_ = x;
  predicted_ = true;
  // Unweighted majority; ties (even N) go to label 1.
  return 2 * ones >= static_cast<std::int64_t>(learners_.size()) ? 1 : 0;
}

void OnlineBbm::update(Instance x, Label y) {
  if (rounds_ >= horizon_) throw ProtocolError("OnlineBbm: horizon exhausted");
  if (!predicted_ || pending_x_ != x) throw ProtocolError("OnlineBbm: update before predict");
  std::int64_t margin = 0;
  for (std::size_t i = 0; i < learners_.size(); ++i) {
    const std::int64_t index = static_cast<std::int64_t>(i) + 1;
    const bool passed = rng_.bernoulli(table_.pass_probability(index, margin));
    if (observer_) observer_(index, margin, passed);
    if (passed) learners_[i]->update(x, y);
    margin += votes_[i] == y ? 1 : -1;
  }
  predicted_ = false;
  ++rounds_;
}

double bbm_mistake_bound(std::int64_t learners, double gamma, std::int64_t horizon, double t0,
                         double c) {
  if (learners < 1) throw PreconditionError("bbm_mistake_bound: need at least one learner");
  if (!(gamma > 0.0 && gamma < 0.5)) throw PreconditionError("bbm_mistake_bound: bad gamma");
  if (horizon < 0) throw PreconditionError("bbm_mistake_bound: negative horizon");
  if (t0 < 0.0) throw PreconditionError("bbm_mistake_bound: negative excess loss");
  const double n = static_cast<double>(learners);
  return std::exp(-0.5 * n * gamma * gamma) * static_cast<double>(horizon) +
         c * std::sqrt(n) * (t0 + 1.0 / gamma) * std::log(n + 1.0);
}

std::int64_t boost_schedule(std::int64_t horizon, double gamma) {
  if (horizon < 1) throw PreconditionError("boost_schedule: horizon must be positive");
  if (!(gamma > 0.0 && gamma < 0.5)) throw PreconditionError("boost_schedule: bad gamma");
  const double n = 2.0 * std::log(static_cast<double>(horizon)) / (gamma * gamma);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n)));
}

}  // namespace dpo

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dpo/rng.hpp"

namespace dpo {

// Multiplicative Weights over a finite expert set with 0/1 losses.
// Step size is fixed at initialization to sqrt(ln N / T) (natural log).
class MwState {
 public:
  MwState(std::int64_t experts, std::int64_t horizon);

  // Rebuilds a state from raw fields; for replay debugging and tests.
  static MwState restore(std::vector<double> weights, double eta, std::int64_t round);

  std::int64_t experts() const { return static_cast<std::int64_t>(weights_.size()); }
  double eta() const { return eta_; }
  std::int64_t round() const { return round_; }
  const std::vector<double>& weights() const { return weights_; }

  // Weights normalized to sum 1.
  std::vector<double> distribution() const;

  // Fresh draw proportional to the weights; one uniform01.
  std::int64_t sample_expert(Rng& rng) const;

  // w_j *= exp(-eta * loss_j); losses must be 0/1 and of matching length.
  void update(std::span<const int> losses);

 private:
  MwState() = default;

  std::vector<double> weights_;
  double eta_ = 0.0;
  double decay_ = 1.0;  // exp(-eta), cached
  std::int64_t round_ = 0;
};

// sqrt(2 T ln N).
double mw_regret_bound(std::int64_t experts, std::int64_t horizon);

// Round-major loss matrix, entries in {0,1}.
using LossMatrix = std::vector<std::vector<int>>;

// Deterministic expected loss of MW on a fixed loss matrix:
// sum over rounds of <distribution, loss row>.
double mw_expected_loss_exact(const LossMatrix& losses);

// CSV rows of comma-separated 0/1 entries, one round per line.
LossMatrix parse_loss_matrix_csv(std::istream& in);

}  // namespace dpo

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpo/core.hpp"

namespace dpo {

enum class ClassKind { kThresholds, kPoints, kIntervals };

// An enumerable family of deterministic instance -> label functions over a
// finite grid domain [0, d). Hypotheses are addressed by index:
//   thresholds: h_j(x) = 1 iff x >= j, j in [0, d]          (|H| = d+1)
//   points:     h_j(x) = 1 iff x == j, j in [0, d)          (|H| = d)
//   intervals:  h_0 = empty, h_k(x) = 1 iff a <= x < b      (|H| = d(d+1)/2 + 1)
class FiniteHypothesisClass {
 public:
  static FiniteHypothesisClass thresholds(Instance domain_size);
  static FiniteHypothesisClass points(Instance domain_size);
  static FiniteHypothesisClass intervals(Instance domain_size);
  static FiniteHypothesisClass from_name(const std::string& kind, Instance domain_size);

  ClassKind kind() const { return kind_; }
  const std::string& kind_name() const { return kind_name_; }
  Instance domain_size() const { return domain_size_; }
  std::int64_t size() const { return size_; }

  Label eval(std::int64_t hypothesis, Instance x) const;

  // Stable identity string, e.g. "thresholds:d=8"; used as a cache key.
  std::string descriptor() const;

 private:
  FiniteHypothesisClass(ClassKind kind, std::string name, Instance domain_size, std::int64_t size);

  ClassKind kind_;
  std::string kind_name_;
  Instance domain_size_;
  std::int64_t size_;
  std::vector<Instance> interval_lo_;
  std::vector<Instance> interval_hi_;
};

// Mean 0/1 loss of hypothesis h over a nonempty sample.
double empirical_risk(const FiniteHypothesisClass& cls, std::int64_t h, const LabeledSample& s);

// Exact expected 0/1 loss under a finite distribution; the brute-force oracle
// behind every risk claim in the test suites.
double population_risk_exact(const FiniteHypothesisClass& cls, std::int64_t h,
                             const FiniteDistribution& d);

// Index of some hypothesis consistent with every example, or -1.
std::int64_t find_consistent(const FiniteHypothesisClass& cls, std::span<const Example> examples);

// True iff some hypothesis has exactly zero population risk under d.
bool is_realizable(const FiniteHypothesisClass& cls, const FiniteDistribution& d);

}  // namespace dpo

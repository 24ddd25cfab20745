#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpo/hypothesis.hpp"
#include "dpo/rng.hpp"

namespace dpo {

struct PrivacyParams {
  double eps = 0.1;
};

struct LearningParams {
  double alpha = 0.25;
  double beta = 0.5;
};

// Softmax kernel of the exponential mechanism: probability of hypothesis j
// proportional to exp(-(eps/2) * mistakes_j). The mistake count has
// sensitivity 1 under single-example substitution, which is what makes the
// sampler eps-differentially private.
std::vector<double> mechanism_distribution_from_mistakes(std::span<const std::int64_t> mistakes,
                                                         double eps);
std::vector<double> mechanism_log_probs_from_mistakes(std::span<const std::int64_t> mistakes,
                                                      double eps);

// Exact output distribution of the private learner on a sample: probability
// of h_j proportional to exp(-(eps/2) * m * L_S(h_j)), computed by full
// enumeration of the class.
std::vector<double> exponential_mechanism_distribution(const FiniteHypothesisClass& cls,
                                                       const LabeledSample& s, double eps);

// One draw from the exact distribution above; consumes one uniform01.
std::int64_t train_private(const FiniteHypothesisClass& cls, const LabeledSample& s, double eps,
                           Rng& rng);

// Conservative closed-form upper bound m = ceil((8/(eps*alpha)) * (ln|H| + ln(2/beta))).
std::int64_t sample_complexity_formula(const FiniteHypothesisClass& cls, double alpha, double beta,
                                       double eps);

struct RealizableDraw {
  FiniteDistribution dist;
  std::int64_t concept_index;
};

// Random realizable distribution: target drawn uniformly from the class,
// instance marginal drawn uniformly from the simplex over a uniform grid of
// up to max_atoms instances, atoms labeled by the target.
RealizableDraw random_realizable_distribution(const FiniteHypothesisClass& cls, Rng& rng,
                                              int max_atoms = 16);

// Smallest m (doubling then binary search, smallest passing) whose Monte
// Carlo PAC success frequency over `trials` random realizable tasks clears
// (1-beta) + 2*sqrt(beta(1-beta)/trials). Deterministic given the rng state;
// results are memoized per (class, parameters, seed). Throws CalibrationError
// when the search passes m_ceiling.
std::int32_t calibrate_sample_complexity(const FiniteHypothesisClass& cls, double alpha,
                                         double beta, double eps, std::int32_t trials, Rng& rng,
                                         std::int32_t m_ceiling = 4096);

struct PacValidation {
  double frequency = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of Pr[L_D(train(S)) <= alpha] over random realizable
// tasks, with its binomial standard error.
PacValidation pac_validate(const FiniteHypothesisClass& cls, std::int32_t m, double alpha,
                           double beta, double eps, std::int32_t trials, Rng& rng);

struct PrivacyAuditReport {
  std::int32_t q = 0;
  double eps = 0.0;
  double max_log_ratio = 0.0;
  double bound = 0.0;
  bool pass = false;

  std::string to_json() const;
};

inline constexpr double kAuditTolerance = 1e-9;

// Exact group-privacy audit of one sample pair: q = differing positions,
// max over hypotheses of |log p_j - log p'_j| against the bound eps*q.
PrivacyAuditReport audit_privacy(const FiniteHypothesisClass& cls, const LabeledSample& s,
                                 const LabeledSample& s_prime, double eps);

// Worst case over every ordered pair of 1-neighboring samples of length m
// (full literal enumeration of all (2d)^m samples).
PrivacyAuditReport audit_neighbor_pairs_exact(const FiniteHypothesisClass& cls, std::int32_t m,
                                              double eps);

struct ExhaustiveAudit {
  std::int32_t m = 0;
  double eps = 0.0;
  bool exhaustive = true;
  std::int64_t pairs_checked = 0;
  std::vector<PrivacyAuditReport> per_q;  // worst case per neighbor distance q = 0..m
  bool pass = false;

  std::string to_json(const FiniteHypothesisClass& cls) const;
};

// Worst case per q over ALL q-neighboring pairs of length-m samples.
//
// The mechanism depends on a sample only through its multiset of examples,
// and the minimum Hamming distance between orderings of two multisets is
// m - |overlap|; checking each multiset pair at that minimum distance covers
// every ordered pair at every larger distance (the bound eps*q only grows).
// If the multiset pair count exceeds pair_limit, a seeded random subset is
// audited instead and `exhaustive` is false.
ExhaustiveAudit audit_privacy_exhaustive(const FiniteHypothesisClass& cls, std::int32_t m,
                                         double eps, std::int64_t pair_limit = 20'000'000,
                                         std::uint64_t seed = 1);

}  // namespace dpo

#include "dpo/dp_learner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "dpo/parallel.hpp"

namespace dpo {

namespace {

void check_privacy_params(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw PreconditionError("privacy budget eps must be positive and finite");
}

void check_learning_params(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw PreconditionError("beta must lie in (0,1)");
}

std::vector<std::int64_t> mistake_counts(const FiniteHypothesisClass& cls,
                                         const LabeledSample& s) {
  if (s.empty()) throw PreconditionError("private learner: empty sample");
  std::vector<std::int64_t> mistakes(static_cast<std::size_t>(cls.size()), 0);
  for (std::int64_t h = 0; h < cls.size(); ++h) {
    std::int64_t k = 0;
    for (const Example& e : s) k += zero_one_loss(cls.eval(h, e.x), e.y);
    mistakes[static_cast<std::size_t>(h)] = k;
  }
  return mistakes;
}

// One PAC trial: random realizable task, sample of size m, one private draw,
// exact population-risk check.
bool pac_trial(const FiniteHypothesisClass& cls, std::int32_t m, double alpha, double eps,
               Rng& rng, int max_atoms) {
  RealizableDraw task = random_realizable_distribution(cls, rng, max_atoms);
  LabeledSample s;
  s.reserve(static_cast<std::size_t>(m));
  for (std::int32_t i = 0; i < m; ++i) s.push_back(task.dist.sample(rng));
  const std::int64_t h = train_private(cls, s, eps, rng);
  return population_risk_exact(cls, h, task.dist) <= alpha;
}

double success_frequency(const FiniteHypothesisClass& cls, std::int32_t m, double alpha,
                         double eps, std::int32_t trials, const Rng& base, int max_atoms) {
  std::vector<char> ok(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, [&](std::int64_t trial) {
    Rng trial_rng = base.child(static_cast<std::uint64_t>(trial));
    ok[static_cast<std::size_t>(trial)] =
        pac_trial(cls, m, alpha, eps, trial_rng, max_atoms) ? 1 : 0;
  });
  std::int64_t successes = 0;
  for (char c : ok) successes += c;
  return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace

std::vector<double> mechanism_log_probs_from_mistakes(std::span<const std::int64_t> mistakes,
                                                      double eps) {
  check_privacy_params(eps);
  if (mistakes.empty()) throw PreconditionError("mechanism: empty candidate set");
  std::int64_t min_k = mistakes[0];
  for (std::int64_t k : mistakes) {
    if (k < 0) throw PreconditionError("mechanism: negative mistake count");
    min_k = std::min(min_k, k);
  }
  std::vector<double> logp(mistakes.size());
  double z = 0.0;
  for (std::size_t j = 0; j < mistakes.size(); ++j) {
    logp[j] = -0.5 * eps * static_cast<double>(mistakes[j] - min_k);
    z += std::exp(logp[j]);
  }
  const double log_z = std::log(z);
  for (double& v : logp) v -= log_z;
  return logp;
}

std::vector<double> mechanism_distribution_from_mistakes(std::span<const std::int64_t> mistakes,
                                                         double eps) {
  std::vector<double> p = mechanism_log_probs_from_mistakes(mistakes, eps);
  for (double& v : p) v = std::exp(v);
  return p;
}

std::vector<double> exponential_mechanism_distribution(const FiniteHypothesisClass& cls,
                                                       const LabeledSample& s, double eps) {
  const std::vector<std::int64_t> mistakes = mistake_counts(cls, s);
  return mechanism_distribution_from_mistakes(mistakes, eps);
}

std::int64_t train_private(const FiniteHypothesisClass& cls, const LabeledSample& s, double eps,
                           Rng& rng) {
  const std::vector<double> p = exponential_mechanism_distribution(cls, s, eps);
  return sample_index(p, rng);
}

std::int64_t sample_complexity_formula(const FiniteHypothesisClass& cls, double alpha, double beta,
                                       double eps) {
  check_learning_params(alpha, beta);
  check_privacy_params(eps);
  const double m = (8.0 / (eps * alpha)) *
                   (std::log(static_cast<double>(cls.size())) + std::log(2.0 / beta));
  return static_cast<std::int64_t>(std::ceil(m));
}

RealizableDraw random_realizable_distribution(const FiniteHypothesisClass& cls, Rng& rng,
                                              int max_atoms) {
  if (max_atoms < 1) throw PreconditionError("random_realizable_distribution: max_atoms < 1");
  const std::int64_t target = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cls.size())));
  const Instance d = cls.domain_size();
  const int atoms = std::min<int>(max_atoms, d);
  std::vector<double> mass(static_cast<std::size_t>(atoms));
  double total = 0.0;
  for (double& v : mass) {
    v = -std::log(1.0 - rng.uniform01());  // Exp(1); normalized below (Dirichlet(1,..,1))
    total += v;
  }
  std::vector<FiniteDistribution::Atom> support;
  support.reserve(mass.size());
  for (int i = 0; i < atoms; ++i) {
    const Instance x = static_cast<Instance>((static_cast<std::int64_t>(i) * d) / atoms);
    support.push_back({{x, cls.eval(target, x)}, mass[static_cast<std::size_t>(i)] / total});
  }
  return {FiniteDistribution(std::move(support)), target};
}

std::int32_t calibrate_sample_complexity(const FiniteHypothesisClass& cls, double alpha,
                                         double beta, double eps, std::int32_t trials, Rng& rng,
                                         std::int32_t m_ceiling) {
  check_learning_params(alpha, beta);
  check_privacy_params(eps);
  if (trials < 1000) throw PreconditionError("calibrate: trials must be >= 1000");
  if (m_ceiling < 1) throw PreconditionError("calibrate: m ceiling must be positive");

  const std::uint64_t master = rng.next_u64();
  std::ostringstream key;
  key << cls.descriptor() << "|a=" << alpha << "|b=" << beta << "|e=" << eps << "|n=" << trials
      << "|s=" << master;

  static std::map<std::string, std::int32_t> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }

  const double sigma = std::sqrt(beta * (1.0 - beta) / static_cast<double>(trials));
  const double target = std::min(1.0, (1.0 - beta) + 2.0 * sigma);
  const Rng base(master);
  auto passes = [&](std::int32_t m) {
    const Rng level = base.child(static_cast<std::uint64_t>(m));
    return success_frequency(cls, m, alpha, eps, trials, level, 16) >= target;
  };

  std::int32_t lo = 0;  // largest known-failing m (0 = none)
  std::int32_t hi = 1;
  while (!passes(hi)) {
    lo = hi;
    if (hi > m_ceiling / 2) throw CalibrationError("calibrate: search passed the m ceiling");
    hi *= 2;
  }
  while (lo + 1 < hi) {
    const std::int32_t mid = lo + (hi - lo) / 2;
    if (passes(mid))
      hi = mid;
    else
      lo = mid;
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[key.str()] = hi;
  return hi;
}

PacValidation pac_validate(const FiniteHypothesisClass& cls, std::int32_t m, double alpha,
                           double beta, double eps, std::int32_t trials, Rng& rng) {
  check_learning_params(alpha, beta);
  check_privacy_params(eps);
  if (m < 1) throw PreconditionError("pac_validate: m must be positive");
  if (trials < 1000) throw PreconditionError("pac_validate: trials must be >= 1000");
  const Rng base(rng.next_u64());
  const double freq = success_frequency(cls, m, alpha, eps, trials, base, 16);
  return {freq, std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials))};
}

std::string PrivacyAuditReport::to_json() const {
  nlohmann::json j;
  j["q"] = q;
  j["eps"] = eps;
  j["max_log_ratio"] = max_log_ratio;
  j["bound"] = bound;
  j["pass"] = pass;
  return j.dump();
}

PrivacyAuditReport audit_privacy(const FiniteHypothesisClass& cls, const LabeledSample& s,
                                 const LabeledSample& s_prime, double eps) {
  if (s.size() != s_prime.size()) throw PreconditionError("audit: samples must have equal length");
  std::int32_t q = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != s_prime[i]) ++q;
  const std::vector<double> lp = mechanism_log_probs_from_mistakes(mistake_counts(cls, s), eps);
  const std::vector<double> lq =
      mechanism_log_probs_from_mistakes(mistake_counts(cls, s_prime), eps);
  double max_ratio = 0.0;
  for (std::size_t j = 0; j < lp.size(); ++j)
    max_ratio = std::max(max_ratio, std::abs(lp[j] - lq[j]));
  const double bound = eps * q;
  return {q, eps, max_ratio, bound, max_ratio <= bound + kAuditTolerance};
}

namespace {

// Flattened log-probability rows for each length-m sample over the example
// alphabet {(x, y)} encoded as e = 2x + y.
struct SampleTable {
  std::int64_t count = 0;
  std::size_t classes = 0;
  std::vector<double> logp;  // count x classes
};

std::vector<std::vector<int>> example_patterns(const FiniteHypothesisClass& cls) {
  const std::int64_t alphabet = 2LL * cls.domain_size();
  std::vector<std::vector<int>> pattern(static_cast<std::size_t>(alphabet));
  for (std::int64_t e = 0; e < alphabet; ++e) {
    const Instance x = static_cast<Instance>(e / 2);
    const Label y = static_cast<Label>(e % 2);
    auto& row = pattern[static_cast<std::size_t>(e)];
    row.resize(static_cast<std::size_t>(cls.size()));
    for (std::int64_t h = 0; h < cls.size(); ++h)
      row[static_cast<std::size_t>(h)] = zero_one_loss(cls.eval(h, x), y);
  }
  return pattern;
}

}  // namespace

PrivacyAuditReport audit_neighbor_pairs_exact(const FiniteHypothesisClass& cls, std::int32_t m,
                                              double eps) {
  check_privacy_params(eps);
  if (m < 1) throw PreconditionError("audit_neighbor_pairs_exact: m must be positive");
  const std::int64_t alphabet = 2LL * cls.domain_size();
  std::int64_t total = 1;
  for (std::int32_t i = 0; i < m; ++i) {
    total *= alphabet;
    if (total > (1LL << 20))
      throw PreconditionError("audit_neighbor_pairs_exact: sample space too large; "
                              "use audit_privacy_exhaustive");
  }
  const std::size_t classes = static_cast<std::size_t>(cls.size());
  const auto pattern = example_patterns(cls);

  SampleTable table;
  table.count = total;
  table.classes = classes;
  table.logp.resize(static_cast<std::size_t>(total) * classes);
  std::vector<std::int64_t> mistakes(classes);
  parallel_for(total, [&](std::int64_t idx) {
    std::vector<std::int64_t> k(classes, 0);
    std::int64_t rest = idx;
    for (std::int32_t pos = 0; pos < m; ++pos) {
      const auto& row = pattern[static_cast<std::size_t>(rest % alphabet)];
      rest /= alphabet;
      for (std::size_t j = 0; j < classes; ++j) k[j] += row[j];
    }
    const std::vector<double> lp = mechanism_log_probs_from_mistakes(k, eps);
    std::copy(lp.begin(), lp.end(), table.logp.begin() + static_cast<std::size_t>(idx) * classes);
  });

  // Every unordered neighbor pair: bump one base-|alphabet| digit upward.
  double max_ratio = 0.0;
  std::int64_t stride = 1;
  for (std::int32_t pos = 0; pos < m; ++pos) {
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const std::int64_t digit = (idx / stride) % alphabet;
      const double* a = table.logp.data() + static_cast<std::size_t>(idx) * classes;
      for (std::int64_t e = digit + 1; e < alphabet; ++e) {
        const std::int64_t other = idx + (e - digit) * stride;
        const double* b = table.logp.data() + static_cast<std::size_t>(other) * classes;
        for (std::size_t j = 0; j < classes; ++j)
          max_ratio = std::max(max_ratio, std::abs(a[j] - b[j]));
      }
    }
    stride *= alphabet;
  }
  return {1, eps, max_ratio, eps, max_ratio <= eps + kAuditTolerance};
}

std::string ExhaustiveAudit::to_json(const FiniteHypothesisClass& cls) const {
  nlohmann::json j;
  j["class"] = cls.kind_name();
  j["domain_size"] = cls.domain_size();
  j["m"] = m;
  j["eps"] = eps;
  j["exhaustive"] = exhaustive;
  j["pairs_checked"] = pairs_checked;
  j["reports"] = nlohmann::json::array();
  for (const PrivacyAuditReport& r : per_q)
    j["reports"].push_back(nlohmann::json::parse(r.to_json()));
  j["pass"] = pass;
  return j.dump();
}

ExhaustiveAudit audit_privacy_exhaustive(const FiniteHypothesisClass& cls, std::int32_t m,
                                         double eps, std::int64_t pair_limit, std::uint64_t seed) {
  check_privacy_params(eps);
  if (m < 1) throw PreconditionError("audit_privacy_exhaustive: m must be positive");
  if (pair_limit < 1) throw PreconditionError("audit_privacy_exhaustive: pair limit < 1");

  const std::int64_t alphabet = 2LL * cls.domain_size();
  const std::size_t classes = static_cast<std::size_t>(cls.size());
  const auto pattern = example_patterns(cls);

  // Enumerate multisets as nondecreasing digit strings. The mechanism sees a
  // sample only through its multiset, and two multisets admit orderings at
  // Hamming distance exactly m - |overlap|, so auditing each multiset pair at
  // that distance covers every ordered q-neighbor pair.
  std::vector<std::vector<std::int16_t>> elems;
  std::vector<double> logp_flat;
  {
    std::vector<std::int16_t> digits(static_cast<std::size_t>(m), 0);
    std::vector<std::int64_t> k(classes);
    while (true) {
      std::fill(k.begin(), k.end(), 0);
      for (std::int16_t e : digits)
        for (std::size_t j = 0; j < classes; ++j) k[j] += pattern[static_cast<std::size_t>(e)][j];
      const std::vector<double> lp = mechanism_log_probs_from_mistakes(k, eps);
      logp_flat.insert(logp_flat.end(), lp.begin(), lp.end());
      elems.push_back(digits);

      std::int32_t pos = m - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == alphabet - 1) --pos;
      if (pos < 0) break;
      const std::int16_t next = static_cast<std::int16_t>(digits[static_cast<std::size_t>(pos)] + 1);
      for (std::int32_t i = pos; i < m; ++i) digits[static_cast<std::size_t>(i)] = next;
    }
  }

  const std::int64_t n = static_cast<std::int64_t>(elems.size());
  auto overlap = [&](std::int64_t a, std::int64_t b) {
    const auto& u = elems[static_cast<std::size_t>(a)];
    const auto& v = elems[static_cast<std::size_t>(b)];
    std::int32_t i = 0, j = 0, common = 0;
    while (i < m && j < m) {
      if (u[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(j)]) {
        ++common;
        ++i;
        ++j;
      } else if (u[static_cast<std::size_t>(i)] < v[static_cast<std::size_t>(j)]) {
        ++i;
      } else {
        ++j;
      }
    }
    return common;
  };
  auto ratio_of = [&](std::int64_t a, std::int64_t b) {
    const double* pa = logp_flat.data() + static_cast<std::size_t>(a) * classes;
    const double* pb = logp_flat.data() + static_cast<std::size_t>(b) * classes;
    double r = 0.0;
    for (std::size_t j = 0; j < classes; ++j) r = std::max(r, std::abs(pa[j] - pb[j]));
    return r;
  };

  std::vector<double> worst(static_cast<std::size_t>(m) + 1, 0.0);
  const std::int64_t total_pairs = n * (n - 1) / 2;
  ExhaustiveAudit out;
  out.m = m;
  out.eps = eps;
  if (total_pairs <= pair_limit) {
    out.exhaustive = true;
    out.pairs_checked = total_pairs;
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = a + 1; b < n; ++b) {
        const std::int32_t q = m - overlap(a, b);
        const std::size_t qi = static_cast<std::size_t>(q);
        worst[qi] = std::max(worst[qi], ratio_of(a, b));
      }
  } else {
    out.exhaustive = false;
    out.pairs_checked = pair_limit;
    Rng rng(seed);
    for (std::int64_t i = 0; i < pair_limit; ++i) {
      const std::int64_t a = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
      std::int64_t b = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      const std::int32_t q = m - overlap(a, b);
      const std::size_t qi = static_cast<std::size_t>(q);
      worst[qi] = std::max(worst[qi], ratio_of(a, b));
    }
  }

  out.pass = true;
  for (std::int32_t q = 0; q <= m; ++q) {
    const double bound = eps * q;
    const double r = worst[static_cast<std::size_t>(q)];
    const bool ok = r <= bound + kAuditTolerance;
    out.per_q.push_back({q, eps, r, bound, ok});
    out.pass = out.pass && ok;
  }
  return out;
}

}  // namespace dpo

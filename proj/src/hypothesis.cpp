#include "dpo/hypothesis.hpp"

#include <stdexcept>

namespace dpo {

FiniteHypothesisClass::FiniteHypothesisClass(ClassKind kind, std::string name,
                                             Instance domain_size, std::int64_t size)
    : kind_(kind), kind_name_(std::move(name)), domain_size_(domain_size), size_(size) {
  if (domain_size_ <= 0) throw PreconditionError("hypothesis class: domain size must be positive");
}

FiniteHypothesisClass FiniteHypothesisClass::thresholds(Instance d) {
  return FiniteHypothesisClass(ClassKind::kThresholds, "thresholds", d, static_cast<std::int64_t>(d) + 1);
}

FiniteHypothesisClass FiniteHypothesisClass::points(Instance d) {
  return FiniteHypothesisClass(ClassKind::kPoints, "points", d, static_cast<std::int64_t>(d));
}

FiniteHypothesisClass FiniteHypothesisClass::intervals(Instance d) {
  const std::int64_t n = static_cast<std::int64_t>(d);
  FiniteHypothesisClass cls(ClassKind::kIntervals, "intervals", d, n * (n + 1) / 2 + 1);
  cls.interval_lo_.reserve(cls.size_);
  cls.interval_hi_.reserve(cls.size_);
  cls.interval_lo_.push_back(0);  // index 0: empty interval
  cls.interval_hi_.push_back(0);
  for (Instance a = 0; a < d; ++a)
    for (Instance b = a + 1; b <= d; ++b) {
      cls.interval_lo_.push_back(a);
      cls.interval_hi_.push_back(b);
    }
  return cls;
}

FiniteHypothesisClass FiniteHypothesisClass::from_name(const std::string& kind, Instance d) {
  if (kind == "thresholds") return thresholds(d);
  if (kind == "points") return points(d);
  if (kind == "intervals") return intervals(d);
  throw PreconditionError("unknown hypothesis class kind: " + kind);
}

Label FiniteHypothesisClass::eval(std::int64_t h, Instance x) const {
  if (h < 0 || h >= size_) throw PreconditionError("eval: hypothesis index out of range");
  if (x < 0 || x >= domain_size_) throw PreconditionError("eval: instance out of domain");
  switch (kind_) {
    case ClassKind::kThresholds:
      return x >= h ? 1 : 0;
    case ClassKind::kPoints:
      return x == h ? 1 : 0;
    case ClassKind::kIntervals:
      return (x >= interval_lo_[h] && x < interval_hi_[h]) ? 1 : 0;
  }
  throw std::logic_error("eval: unreachable");
}

std::string FiniteHypothesisClass::descriptor() const {
  return kind_name_ + ":d=" + std::to_string(domain_size_);
}

double empirical_risk(const FiniteHypothesisClass& cls, std::int64_t h, const LabeledSample& s) {
  if (s.empty()) throw PreconditionError("empirical_risk: empty sample");
  std::int64_t mistakes = 0;
  for (const Example& e : s) mistakes += zero_one_loss(cls.eval(h, e.x), e.y);
  return static_cast<double>(mistakes) / static_cast<double>(s.size());
}

double population_risk_exact(const FiniteHypothesisClass& cls, std::int64_t h,
                             const FiniteDistribution& d) {
  double risk = 0.0;
  for (const auto& atom : d.support())
    risk += atom.mass * zero_one_loss(cls.eval(h, atom.example.x), atom.example.y);
  return risk;
}

std::int64_t find_consistent(const FiniteHypothesisClass& cls, std::span<const Example> examples) {
  for (std::int64_t h = 0; h < cls.size(); ++h) {
    bool ok = true;
    for (const Example& e : examples)
      if (cls.eval(h, e.x) != e.y) {
        ok = false;
        break;
      }
    if (ok) return h;
  }
  return -1;
}

bool is_realizable(const FiniteHypothesisClass& cls, const FiniteDistribution& d) {
  for (std::int64_t h = 0; h < cls.size(); ++h) {
    bool ok = true;
    for (const auto& atom : d.support())
      if (atom.mass > 0.0 && cls.eval(h, atom.example.x) != atom.example.y) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace dpo

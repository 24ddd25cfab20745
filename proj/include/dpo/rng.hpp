#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "dpo/errors.hpp"

namespace dpo {

// splitmix64 finalizer; used for seed conditioning and stream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable randomness source. Every randomized operation takes one of these
// explicitly; there is no ambient global generator anywhere in the library.
//
// The engine is std::mt19937_64 (bit-exact across platforms by the standard)
// and all variate mappings are implemented here, so identical seeds give
// identical streams everywhere. uniform01() consumes exactly one engine draw,
// which the replay machinery relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1) with 53 random bits; exactly one engine draw.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Unbiased integer in [0,n). Uses rejection, so the number of engine draws
  // varies; keep it out of paths that replay against a fixed draw count.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw PreconditionError("Rng::below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  // Derived generator with an independent stream, deterministic in
  // (construction seed, stream id). Children of children are fine.
  Rng child(std::uint64_t stream) const {
    return Rng(mix64(seed_ ^ mix64(stream + 0x51ed2701a92cd473ULL)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

// Samples an index proportionally to nonnegative weights. One uniform01 draw.
inline std::int64_t sample_index(std::span<const double> weights, Rng& rng) {
  if (weights.empty()) throw PreconditionError("sample_index: empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw PreconditionError("sample_index: negative weight");
    total += w;
  }
  if (total <= 0.0) throw PreconditionError("sample_index: zero total weight");
  const double u = rng.uniform01() * total;
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
    acc += weights[j];
    if (u < acc) return static_cast<std::int64_t>(j);
  }
  return static_cast<std::int64_t>(weights.size()) - 1;
}

}  // namespace dpo

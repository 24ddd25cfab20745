#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpo/errors.hpp"
#include "dpo/rng.hpp"

namespace dpo {

// Instances are indices into a finite domain of size d; labels are {0,1}.
using Instance = std::int32_t;
using Label = std::int32_t;

struct Example {
  Instance x = 0;
  Label y = 0;
  friend auto operator<=>(const Example&, const Example&) = default;
};

// Ordered labeled sample; order matters for privacy neighboring.
using LabeledSample = std::vector<Example>;

inline int zero_one_loss(Label a, Label b) { return a == b ? 0 : 1; }

// Probability distribution with finite support over labeled examples.
// Validated on construction: distinct atoms, nonnegative masses, total mass
// 1 within 1e-12.
class FiniteDistribution {
 public:
  struct Atom {
    Example example;
    double mass = 0.0;
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  explicit FiniteDistribution(std::vector<Atom> support);

  const std::vector<Atom>& support() const { return support_; }

  // One uniform01 draw.
  Example sample(Rng& rng) const;

  friend bool operator==(const FiniteDistribution&, const FiniteDistribution&) = default;

 private:
  std::vector<Atom> support_;
};

// Uniform distribution on the multiset of a sample's examples.
FiniteDistribution uniform_on(const LabeledSample& sample);

struct TranscriptRound {
  Instance x = 0;
  Label y = 0;
  Label yhat = 0;
  int loss = 0;
  friend bool operator==(const TranscriptRound&, const TranscriptRound&) = default;
};

// Per-round record of one learner-vs-adversary game.
struct Transcript {
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<TranscriptRound> rounds;

  std::int64_t mistakes() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Appends one round, computing the loss column; rejects growth past horizon.
void append_round(Transcript& tr, Instance x, Label y, Label yhat);

// CSV: header `round,x,y,yhat,loss`, rounds 1-based.
void write_transcript_csv(std::ostream& out, const Transcript& tr);
std::string transcript_to_csv(const Transcript& tr);

// Parses and validates (round numbering, labels, loss recomputation).
Transcript parse_transcript_csv(std::istream& in, std::int64_t horizon, std::uint64_t seed);
Transcript parse_transcript_csv(const std::string& csv, std::int64_t horizon, std::uint64_t seed);

// JSON summary {"T":..., "mistakes":..., "seed":...}.
std::string transcript_summary_json(const Transcript& tr);

}  // namespace dpo

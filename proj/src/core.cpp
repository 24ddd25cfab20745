#include "dpo/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace dpo {

namespace {

void check_label(Label y, const char* what) {
  if (y != 0 && y != 1) throw PreconditionError(std::string(what) + ": label must be 0 or 1");
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<Atom> support) : support_(std::move(support)) {
  double total = 0.0;
  for (const Atom& a : support_) {
    check_label(a.example.y, "FiniteDistribution");
    if (a.mass < 0.0) throw PreconditionError("FiniteDistribution: negative mass");
    if (!std::isfinite(a.mass)) throw PreconditionError("FiniteDistribution: non-finite mass");
    total += a.mass;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw PreconditionError("FiniteDistribution: masses must sum to 1 within 1e-12");
  auto sorted = support_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Atom& a, const Atom& b) { return a.example < b.example; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].example == sorted[i - 1].example)
      throw PreconditionError("FiniteDistribution: duplicate support entry");
}

Example FiniteDistribution::sample(Rng& rng) const {
  if (support_.empty()) throw PreconditionError("FiniteDistribution::sample: empty support");
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < support_.size(); ++i) {
    acc += support_[i].mass;
    if (u < acc) return support_[i].example;
  }
  return support_.back().example;
}

FiniteDistribution uniform_on(const LabeledSample& sample) {
  if (sample.empty()) throw PreconditionError("uniform_on: empty sample");
  std::map<Example, std::int64_t> counts;
  for (const Example& e : sample) ++counts[e];
  std::vector<FiniteDistribution::Atom> atoms;
  atoms.reserve(counts.size());
  const double m = static_cast<double>(sample.size());
  for (const auto& [example, count] : counts)
    atoms.push_back({example, static_cast<double>(count) / m});
  return FiniteDistribution(std::move(atoms));
}

std::int64_t Transcript::mistakes() const {
  std::int64_t total = 0;
  for (const TranscriptRound& r : rounds) total += r.loss;
  return total;
}

void append_round(Transcript& tr, Instance x, Label y, Label yhat) {
  check_label(y, "append_round");
  check_label(yhat, "append_round");
  if (static_cast<std::int64_t>(tr.rounds.size()) >= tr.horizon)
    throw ProtocolError("append_round: transcript already at its horizon");
  tr.rounds.push_back({x, y, yhat, zero_one_loss(yhat, y)});
}

void write_transcript_csv(std::ostream& out, const Transcript& tr) {
  out << "round,x,y,yhat,loss\n";
  for (std::size_t i = 0; i < tr.rounds.size(); ++i) {
    const TranscriptRound& r = tr.rounds[i];
    out << (i + 1) << ',' << r.x << ',' << r.y << ',' << r.yhat << ',' << r.loss << '\n';
  }
}

std::string transcript_to_csv(const Transcript& tr) {
  std::ostringstream out;
  write_transcript_csv(out, tr);
  return out.str();
}

Transcript parse_transcript_csv(std::istream& in, std::int64_t horizon, std::uint64_t seed) {
  std::string line;
  if (!std::getline(in, line) || line != "round,x,y,yhat,loss")
    throw ParseError("transcript CSV: bad or missing header");
  Transcript tr;
  tr.horizon = horizon;
  tr.seed = seed;
  std::size_t round = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++round;
    std::istringstream row(line);
    long long fields[5];
    char comma = ',';
    for (int f = 0; f < 5; ++f) {
      if (f > 0 && (!(row >> comma) || comma != ','))
        throw ParseError("transcript CSV: malformed row " + std::to_string(round));
      if (!(row >> fields[f]))
        throw ParseError("transcript CSV: malformed row " + std::to_string(round));
    }
    if (fields[0] != static_cast<long long>(round))
      throw ParseError("transcript CSV: round column must be 1-based and contiguous");
    TranscriptRound r{static_cast<Instance>(fields[1]), static_cast<Label>(fields[2]),
                      static_cast<Label>(fields[3]), static_cast<int>(fields[4])};
    check_label(r.y, "transcript CSV");
    check_label(r.yhat, "transcript CSV");
    if (r.loss != zero_one_loss(r.yhat, r.y))
      throw ParseError("transcript CSV: loss column disagrees with labels at row " +
                       std::to_string(round));
    tr.rounds.push_back(r);
  }
  if (static_cast<std::int64_t>(tr.rounds.size()) > horizon)
    throw ParseError("transcript CSV: more rounds than the declared horizon");
  return tr;
}

Transcript parse_transcript_csv(const std::string& csv, std::int64_t horizon, std::uint64_t seed) {
  std::istringstream in(csv);
  return parse_transcript_csv(in, horizon, seed);
}

std::string transcript_summary_json(const Transcript& tr) {
  nlohmann::json j;
  j["T"] = tr.horizon;
  j["mistakes"] = tr.mistakes();
  j["seed"] = tr.seed;
  return j.dump();
}

}  // namespace dpo

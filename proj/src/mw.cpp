#include "dpo/mw.hpp"

#include <cmath>
#include <istream>
#include <sstream>

namespace dpo {

MwState::MwState(std::int64_t experts, std::int64_t horizon) {
  if (experts < 1) throw PreconditionError("MwState: need at least one expert");
  if (horizon < 1) throw PreconditionError("MwState: horizon must be positive");
  weights_.assign(static_cast<std::size_t>(experts), 1.0);
  eta_ = std::sqrt(std::log(static_cast<double>(experts)) / static_cast<double>(horizon));
  decay_ = std::exp(-eta_);
}

MwState MwState::restore(std::vector<double> weights, double eta, std::int64_t round) {
  if (weights.empty()) throw PreconditionError("MwState::restore: empty weights");
  for (double w : weights)
    if (!(w > 0.0)) throw PreconditionError("MwState::restore: weights must be positive");
  if (!(eta >= 0.0)) throw PreconditionError("MwState::restore: eta must be nonnegative");
  MwState st;
  st.weights_ = std::move(weights);
  st.eta_ = eta;
  st.decay_ = std::exp(-eta);
  st.round_ = round;
  return st;
}

std::vector<double> MwState::distribution() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  std::vector<double> p(weights_.size());
  for (std::size_t j = 0; j < weights_.size(); ++j) p[j] = weights_[j] / total;
  return p;
}

std::int64_t MwState::sample_expert(Rng& rng) const {
  return sample_index(weights_, rng);
}

void MwState::update(std::span<const int> losses) {
  if (losses.size() != weights_.size())
    throw PreconditionError("MwState::update: loss vector length mismatch");
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const int l = losses[j];
    if (l != 0 && l != 1) throw PreconditionError("MwState::update: losses must be 0/1");
    if (l) weights_[j] *= decay_;
  }
  ++round_;
}

double mw_regret_bound(std::int64_t experts, std::int64_t horizon) {
  if (experts < 1 || horizon < 1) throw PreconditionError("mw_regret_bound: bad parameters");
  return std::sqrt(2.0 * static_cast<double>(horizon) * std::log(static_cast<double>(experts)));
}

double mw_expected_loss_exact(const LossMatrix& losses) {
  if (losses.empty()) throw PreconditionError("mw_expected_loss_exact: empty matrix");
  const std::size_t n = losses.front().size();
  if (n == 0) throw PreconditionError("mw_expected_loss_exact: empty loss row");
  for (const auto& row : losses)
    if (row.size() != n) throw PreconditionError("mw_expected_loss_exact: ragged matrix");

  MwState st(static_cast<std::int64_t>(n), static_cast<std::int64_t>(losses.size()));
  double expected = 0.0;
  for (const auto& row : losses) {
    const std::vector<double> p = st.distribution();
    for (std::size_t j = 0; j < n; ++j) expected += p[j] * row[j];
    st.update(row);
  }
  return expected;
}

LossMatrix parse_loss_matrix_csv(std::istream& in) {
  LossMatrix matrix;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<int> row;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      if (cell != "0" && cell != "1")
        throw ParseError("loss matrix CSV: entries must be 0 or 1, got '" + cell + "'");
      row.push_back(cell == "1" ? 1 : 0);
    }
    matrix.push_back(std::move(row));
  }
  if (matrix.empty()) throw ParseError("loss matrix CSV: no rows");
  return matrix;
}

}  // namespace dpo

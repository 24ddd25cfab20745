#include "dpo/game.hpp"

namespace dpo {

Transcript run_game(OnlineLearner& learner, Adversary& adversary,
                    const FiniteHypothesisClass& cls, std::int64_t horizon,
                    std::uint64_t seed_for_record) {
  if (horizon < 1) throw PreconditionError("run_game: horizon must be positive");
  Transcript tr;
  tr.horizon = horizon;
  tr.seed = seed_for_record;
  for (std::int64_t t = 0; t < horizon; ++t) {
    const Example e = adversary.next_example();
    const Label yhat = learner.predict(e.x);
    adversary.observe_prediction(yhat);
    learner.update(e.x, e.y);
    append_round(tr, e.x, e.y, yhat);
  }
  std::vector<Example> revealed;
  revealed.reserve(tr.rounds.size());
  for (const TranscriptRound& r : tr.rounds) revealed.push_back({r.x, r.y});
  if (find_consistent(cls, revealed) < 0)
    throw ProtocolError("run_game: adversary produced a non-realizable sequence");
  return tr;
}

}  // namespace dpo

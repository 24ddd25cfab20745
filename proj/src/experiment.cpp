#include "dpo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpo/adaptive_wrapper.hpp"
#include "dpo/adversary.hpp"
#include "dpo/dp_learner.hpp"
#include "dpo/expert_pool.hpp"
#include "dpo/game.hpp"
#include "dpo/parallel.hpp"
#include "dpo/pipeline.hpp"
#include "dpo/weak_online.hpp"

namespace dpo {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string canonical_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out;
  if (!(in >> out) || !(in >> std::ws).eof())
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  return out;
}

bool adversary_is_oblivious(const std::string& adversary) {
  return adversary == "iid" || adversary == "fixed";
}

LabeledSample parse_sequence_csv(std::istream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,y")
    throw ParseError("sequence file " + path + ": expected header 'x,y'");
  LabeledSample sequence;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    ++row;
    std::istringstream fields(line);
    long long x = 0, y = 0;
    char comma = ',';
    if (!(fields >> x >> comma >> y) || comma != ',')
      throw ParseError("sequence file " + path + ": malformed row " + std::to_string(row));
    sequence.push_back({static_cast<Instance>(x), static_cast<Label>(y)});
  }
  if (sequence.empty()) throw ParseError("sequence file " + path + ": no examples");
  return sequence;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

ExperimentConfig ExperimentConfig::from_kv_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: expected key=value, got: " + line);
    config.apply_kv_line(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

void ExperimentConfig::apply_kv_line(const std::string& raw_key, const std::string& value) {
  const std::string key = canonical_key(raw_key);
  if (key == "class") class_kind = value;
  else if (key == "domain-size") domain_size = parse_number<std::int32_t>(key, value);
  else if (key == "T") horizon = parse_number<std::int64_t>(key, value);
  else if (key == "trials") trials = parse_number<std::int32_t>(key, value);
  else if (key == "adversary") adversary = value;
  else if (key == "mode") mode = value;
  else if (key == "learner") learner = value;
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "out") out_dir = value;
  else if (key == "m0") m0 = parse_number<std::int32_t>(key, value);
  else if (key == "eps") eps = parse_number<double>(key, value);
  else if (key == "alpha") alpha = parse_number<double>(key, value);
  else if (key == "beta") beta = parse_number<double>(key, value);
  else if (key == "calibrate-trials") calibrate_trials = parse_number<std::int32_t>(key, value);
  else if (key == "n-override") n_override = parse_number<std::int64_t>(key, value);
  else if (key == "wrapper") wrapper = value;
  else if (key == "concept") concept_index = parse_number<std::int64_t>(key, value);
  else if (key == "sequence-file") sequence_file = value;
  else if (key == "marginal") marginal = value;
  else throw ConfigError("config: unknown key '" + raw_key + "'");
}

std::string ExperimentConfig::to_kv_text() const {
  std::ostringstream out;
  out << "class=" << class_kind << '\n'
      << "domain-size=" << domain_size << '\n'
      << "T=" << horizon << '\n'
      << "trials=" << trials << '\n'
      << "adversary=" << adversary << '\n'
      << "mode=" << mode << '\n'
      << "learner=" << learner << '\n'
      << "seed=" << seed << '\n'
      << "out=" << out_dir << '\n'
      << "m0=" << m0 << '\n'
      << "eps=" << eps << '\n'
      << "alpha=" << alpha << '\n'
      << "beta=" << beta << '\n'
      << "calibrate-trials=" << calibrate_trials << '\n'
      << "n-override=" << n_override << '\n'
      << "wrapper=" << wrapper << '\n'
      << "concept=" << concept_index << '\n'
      << "sequence-file=" << sequence_file << '\n'
      << "marginal=" << marginal << '\n';
  return out.str();
}

void ExperimentConfig::validate() const {
  if (class_kind != "thresholds" && class_kind != "points" && class_kind != "intervals")
    throw ConfigError("config: class must be thresholds|points|intervals");
  if (domain_size < 1) throw ConfigError("config: domain-size must be positive");
  if (horizon < 1) throw ConfigError("config: T must be positive");
  if (trials < 1) throw ConfigError("config: trials must be positive");
  if (adversary != "iid" && adversary != "fixed" && adversary != "tracker" &&
      adversary != "bisect" && adversary != "consistency")
    throw ConfigError("config: adversary must be iid|fixed|tracker|bisect|consistency");
  if (mode != "faithful" && mode != "fast") throw ConfigError("config: mode must be faithful|fast");
  if (learner != "pipeline" && learner != "weak" && learner != "wrapped-weak")
    throw ConfigError("config: learner must be pipeline|weak|wrapped-weak");
  if (wrapper != "replay" && wrapper != "live")
    throw ConfigError("config: wrapper must be replay|live");
  if (marginal != "uniform" && marginal != "random")
    throw ConfigError("config: marginal must be uniform|random");
  if (!(eps > 0.0)) throw ConfigError("config: eps must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("config: alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("config: beta must lie in (0,1)");
  if (m0 < 0) throw ConfigError("config: m0 must be nonnegative (0 = calibrate)");
  if (m0 == 0 && calibrate_trials < 1000)
    throw ConfigError("config: calibrate-trials must be >= 1000");
  if (n_override < 0) throw ConfigError("config: n-override must be nonnegative");
  if (adversary == "fixed" && sequence_file.empty())
    throw ConfigError("config: adversary=fixed requires sequence-file");
  if ((adversary == "bisect" || adversary == "consistency") && class_kind != "thresholds")
    throw ConfigError("config: adversary=" + adversary + " requires class=thresholds");
  if (mode == "fast" && !adversary_is_oblivious(adversary))
    throw ConfigError("config: mode=fast is only valid against oblivious adversaries (iid|fixed)");
}

bool MetricsSummary::all_pass() const {
  for (const auto& [name, ok] : pass_flags)
    if (!ok) return false;
  return true;
}

std::string MetricsSummary::to_json() const {
  json echo;
  echo["class"] = config.class_kind;
  echo["domain-size"] = config.domain_size;
  echo["T"] = config.horizon;
  echo["trials"] = config.trials;
  echo["adversary"] = config.adversary;
  echo["mode"] = config.mode;
  echo["learner"] = config.learner;
  echo["seed"] = config.seed;
  echo["out"] = config.out_dir;
  echo["m0"] = config.m0;
  echo["eps"] = config.eps;
  echo["alpha"] = config.alpha;
  echo["beta"] = config.beta;
  echo["calibrate-trials"] = config.calibrate_trials;
  echo["n-override"] = config.n_override;
  echo["wrapper"] = config.wrapper;
  echo["concept"] = config.concept_index;
  echo["sequence-file"] = config.sequence_file;
  echo["marginal"] = config.marginal;

  json j;
  j["config_echo"] = echo;
  j["resolved"] = {{"m0", resolved.m0},
                   {"pool_n", resolved.pool_n},
                   {"boosters", resolved.boosters},
                   {"concept", resolved.concept_index},
                   {"weak_excess", resolved.weak_excess}};
  j["mean_mistakes"] = mean_mistakes;
  j["stderr"] = std_error;
  j["bounds"] = {{"mw", bounds.mw},
                 {"weak", bounds.weak},
                 {"bbm", bounds.bbm},
                 {"theorem1", bounds.theorem1}};
  j["pass_flags"] = pass_flags;
  j["per_trial_mistakes"] = per_trial_mistakes;
  return j.dump(2);
}

MetricsSummary MetricsSummary::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("summary JSON: ") + e.what());
  }
  MetricsSummary s;
  try {
    for (const auto& [key, value] : j.at("config_echo").items()) {
      if (value.is_string())
        s.config.apply_kv_line(key, value.get<std::string>());
      else
        s.config.apply_kv_line(key, value.dump());
    }
    const json& r = j.at("resolved");
    s.resolved.m0 = r.at("m0").get<std::int32_t>();
    s.resolved.pool_n = r.at("pool_n").get<std::int64_t>();
    s.resolved.boosters = r.at("boosters").get<std::int64_t>();
    s.resolved.concept_index = r.at("concept").get<std::int64_t>();
    s.resolved.weak_excess = r.at("weak_excess").get<double>();
    s.mean_mistakes = j.at("mean_mistakes").get<double>();
    s.std_error = j.at("stderr").get<double>();
    const json& b = j.at("bounds");
    s.bounds.mw = b.at("mw").get<double>();
    s.bounds.weak = b.at("weak").get<double>();
    s.bounds.bbm = b.at("bbm").get<double>();
    s.bounds.theorem1 = b.at("theorem1").get<double>();
    for (const auto& [key, value] : j.at("pass_flags").items())
      s.pass_flags[key] = value.get<bool>();
    s.per_trial_mistakes = j.at("per_trial_mistakes").get<std::vector<std::int64_t>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("summary JSON: ") + e.what());
  }
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const FiniteHypothesisClass cls =
      FiniteHypothesisClass::from_name(config.class_kind, config.domain_size);
  const Rng root(config.seed);

  ResolvedParams resolved;
  resolved.m0 = config.m0;
  if (resolved.m0 == 0) {
    Rng cal_rng = root.child(0xCA11B7A7E);
    resolved.m0 = calibrate_sample_complexity(cls, config.alpha, config.beta, config.eps,
                                              config.calibrate_trials, cal_rng);
  }
  resolved.pool_n = config.n_override > 0 ? config.n_override : pool_size(resolved.m0, config.eps);
  resolved.boosters = boost_schedule(config.horizon, kWeakEdge);
  resolved.weak_excess = weak_guarantee(resolved.pool_n).excess_loss;

  resolved.concept_index = config.concept_index;
  if (config.adversary == "consistency") {
    resolved.concept_index = -1;  // target chosen lazily by the adversary
  } else if (resolved.concept_index < 0) {
    Rng concept_rng = root.child(0xC0C0);
    resolved.concept_index =
        static_cast<std::int64_t>(concept_rng.below(static_cast<std::uint64_t>(cls.size())));
  } else if (resolved.concept_index >= cls.size()) {
    throw ConfigError("config: concept index out of range for the class");
  }

  // Environment pieces shared by every trial.
  FiniteDistribution iid_dist({{Example{0, 0}, 1.0}});
  if (config.adversary == "iid") {
    if (config.marginal == "uniform") {
      std::vector<std::pair<Instance, double>> marginal;
      for (Instance x = 0; x < cls.domain_size(); ++x)
        marginal.emplace_back(x, 1.0 / static_cast<double>(cls.domain_size()));
      iid_dist = label_by_concept(cls, marginal, resolved.concept_index);
    } else {
      Rng marginal_rng = root.child(0xD157);
      RealizableDraw draw = random_realizable_distribution(cls, marginal_rng);
      // Relabel the drawn marginal with the experiment's target.
      std::vector<std::pair<Instance, double>> marginal;
      for (const auto& atom : draw.dist.support()) marginal.emplace_back(atom.example.x, atom.mass);
      iid_dist = label_by_concept(cls, marginal, resolved.concept_index);
    }
  }
  LabeledSample fixed_sequence;
  if (config.adversary == "fixed") {
    std::ifstream in(config.sequence_file);
    if (!in) throw IoError("cannot open sequence file: " + config.sequence_file);
    fixed_sequence = parse_sequence_csv(in, config.sequence_file);
    if (static_cast<std::int64_t>(fixed_sequence.size()) < config.horizon)
      throw ConfigError("config: sequence file shorter than T");
    fixed_sequence.resize(static_cast<std::size_t>(config.horizon));
  }

  std::shared_ptr<const WeakLearnerBlueprint> blueprint;
  if (config.learner != "pipeline")
    blueprint = WeakLearnerBlueprint::make(cls, resolved.m0, config.horizon, config.eps,
                                           config.n_override);

  auto make_learner = [&](std::uint64_t seed) -> std::unique_ptr<OnlineLearner> {
    if (config.learner == "pipeline") {
      const PipelineMode mode =
          config.mode == "faithful" ? PipelineMode::kFaithful : PipelineMode::kFast;
      return build_pipeline(cls, resolved.m0, config.horizon, seed, mode, config.eps,
                            config.n_override);
    }
    if (config.learner == "weak") return std::make_unique<WeakOnlineLearner>(blueprint, seed);
    const WrapperMode wmode =
        config.wrapper == "replay" ? WrapperMode::kReplay : WrapperMode::kLive;
    return std::make_unique<AdaptiveWrapper>(
        [blueprint](std::uint64_t s) { return std::make_unique<WeakOnlineLearner>(blueprint, s); },
        config.horizon, seed, wmode);
  };

  auto make_adversary = [&](std::uint64_t seed) -> std::unique_ptr<Adversary> {
    if (config.adversary == "iid") {
      Rng seq_rng(seed);
      return std::make_unique<FixedSequenceAdversary>(oblivious_iid_sequence(
          cls, iid_dist, resolved.concept_index, config.horizon, seq_rng));
    }
    if (config.adversary == "fixed") return std::make_unique<FixedSequenceAdversary>(fixed_sequence);
    if (config.adversary == "tracker")
      return std::make_unique<TrackerAdversary>(cls, resolved.concept_index);
    if (config.adversary == "bisect")
      return std::make_unique<BisectAdversary>(cls, resolved.concept_index);
    return std::make_unique<ConsistencyOracleAdversary>(cls);
  };

  std::vector<Transcript> transcripts(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, [&](std::int64_t trial) {
    const Rng trial_root = root.child(static_cast<std::uint64_t>(trial) + 1);
    auto learner = make_learner(trial_root.child(1).seed());
    auto adversary = make_adversary(trial_root.child(2).seed());
    transcripts[static_cast<std::size_t>(trial)] =
        run_game(*learner, *adversary, cls, config.horizon, trial_root.seed());
  });

  MetricsSummary summary;
  summary.config = config;
  summary.resolved = resolved;
  summary.per_trial_mistakes.reserve(transcripts.size());
  for (const Transcript& tr : transcripts) summary.per_trial_mistakes.push_back(tr.mistakes());

  double mean = 0.0;
  for (std::int64_t m : summary.per_trial_mistakes) mean += static_cast<double>(m);
  mean /= static_cast<double>(config.trials);
  double var = 0.0;
  for (std::int64_t m : summary.per_trial_mistakes) {
    const double d = static_cast<double>(m) - mean;
    var += d * d;
  }
  var = config.trials > 1 ? var / static_cast<double>(config.trials - 1) : 0.0;
  summary.mean_mistakes = mean;
  summary.std_error = std::sqrt(var / static_cast<double>(config.trials));

  summary.bounds.mw = mw_regret_bound(resolved.pool_n, config.horizon);
  summary.bounds.weak = weak_guarantee(resolved.pool_n).mistake_bound(config.horizon);
  summary.bounds.bbm = bbm_mistake_bound(resolved.boosters, kWeakEdge, config.horizon,
                                         resolved.weak_excess);
  summary.bounds.theorem1 = theorem1_bound(resolved.m0, config.horizon);

  bool realizable = true;
  bool lengths_ok = true;
  for (const Transcript& tr : transcripts) {
    std::vector<Example> revealed;
    revealed.reserve(tr.rounds.size());
    for (const TranscriptRound& r : tr.rounds) revealed.push_back({r.x, r.y});
    realizable = realizable && find_consistent(cls, revealed) >= 0;
    lengths_ok = lengths_ok && static_cast<std::int64_t>(tr.rounds.size()) == config.horizon;
  }
  summary.pass_flags["realizable"] = realizable;
  summary.pass_flags["transcript_lengths"] = lengths_ok;
  const bool weak_bound_applies =
      (config.learner == "weak" && adversary_is_oblivious(config.adversary)) ||
      config.learner == "wrapped-weak";
  if (weak_bound_applies)
    summary.pass_flags["within_weak_bound"] =
        summary.mean_mistakes <= summary.bounds.weak + 3.0 * summary.std_error;

  if (!config.out_dir.empty()) {
    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());
    for (std::size_t i = 0; i < transcripts.size(); ++i)
      write_text_file(dir / ("transcript_" + std::to_string(i) + ".csv"),
                      transcript_to_csv(transcripts[i]));
    write_text_file(dir / "summary.json", summary.to_json());
  }

  return {std::move(summary), std::move(transcripts)};
}

std::string SweepResult::to_json() const {
  json j;
  j["rows"] = json::array();
  for (const MetricsSummary& row : rows) j["rows"].push_back(json::parse(row.to_json()));
  j["all_pass"] = all_pass;
  return j.dump(2);
}

SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::int64_t>& horizons) {
  if (horizons.empty()) throw ConfigError("sweep: need at least one horizon");
  SweepResult result;
  result.all_pass = true;
  for (std::int64_t t : horizons) {
    ExperimentConfig config = base;
    config.horizon = t;
    if (!base.out_dir.empty())
      config.out_dir = (fs::path(base.out_dir) / ("T_" + std::to_string(t))).string();
    ExperimentResult run = run_experiment(config);
    result.all_pass = result.all_pass && run.summary.all_pass();
    result.rows.push_back(std::move(run.summary));
  }
  if (!base.out_dir.empty())
    write_text_file(fs::path(base.out_dir) / "sweep_summary.json", result.to_json());
  return result;
}

}  // namespace dpo

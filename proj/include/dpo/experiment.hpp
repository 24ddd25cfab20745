#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpo/core.hpp"

namespace dpo {

// Flat experiment configuration mirroring the CLI flags; parses from and
// emits the same key=value text the CLI accepts as a config file.
struct ExperimentConfig {
  std::string class_kind = "thresholds";
  std::int32_t domain_size = 8;
  std::int64_t horizon = 200;        // T
  std::int32_t trials = 1;
  std::string adversary = "iid";     // iid | fixed | tracker | bisect | consistency
  std::string mode = "faithful";     // faithful | fast
  std::string learner = "pipeline";  // pipeline | weak | wrapped-weak
  std::uint64_t seed = 1;
  std::string out_dir;               // empty: keep artifacts in memory only
  std::int32_t m0 = 0;               // 0: calibrate
  double eps = 0.1;
  double alpha = 0.25;
  double beta = 0.5;
  std::int32_t calibrate_trials = 2000;
  std::int64_t n_override = 0;       // 0: faithful pool size
  std::string wrapper = "replay";    // replay | live
  std::int64_t concept_index = -1;   // -1: drawn from the seed
  std::string sequence_file;         // adversary=fixed: CSV with header x,y
  std::string marginal = "uniform";  // iid: uniform | random

  static ExperimentConfig from_kv_text(const std::string& text);
  void apply_kv_line(const std::string& key, const std::string& value);
  std::string to_kv_text() const;

  void validate() const;  // throws ConfigError
};

struct BoundsSummary {
  double mw = 0.0;
  double weak = 0.0;
  double bbm = 0.0;
  double theorem1 = 0.0;
  friend bool operator==(const BoundsSummary&, const BoundsSummary&) = default;
};

struct ResolvedParams {
  std::int32_t m0 = 0;
  std::int64_t pool_n = 0;
  std::int64_t boosters = 0;
  std::int64_t concept_index = -1;
  double weak_excess = 0.0;
  friend bool operator==(const ResolvedParams&, const ResolvedParams&) = default;
};

struct MetricsSummary {
  ExperimentConfig config;
  ResolvedParams resolved;
  double mean_mistakes = 0.0;
  double std_error = 0.0;
  BoundsSummary bounds;
  // Insertion order is fixed (std::map sorts keys) so emission is stable.
  std::map<std::string, bool> pass_flags;
  std::vector<std::int64_t> per_trial_mistakes;

  bool all_pass() const;
  std::string to_json() const;
  static MetricsSummary from_json(const std::string& text);
};

struct ExperimentResult {
  MetricsSummary summary;
  std::vector<Transcript> transcripts;  // by trial index
};

// Runs config.trials seeded games (concurrently, merged by trial index),
// writes transcript_<trial>.csv files and summary.json when out_dir is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct SweepResult {
  std::vector<MetricsSummary> rows;  // one per horizon, in input order
  bool all_pass = false;
  std::string to_json() const;
};

// Repeats run_experiment for each horizon; artifacts land in out_dir/T_<T>/.
SweepResult run_sweep(const ExperimentConfig& base, const std::vector<std::int64_t>& horizons);

}  // namespace dpo

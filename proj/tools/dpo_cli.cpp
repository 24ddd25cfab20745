// dpo: command-line front end for the dponline shared library.
//
// Subcommands map onto the C API; every run/sweep option can also come from a
// flat key=value config file (--config), with explicit flags taking
// precedence. Exit code 0 means every asserted pass flag held.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dponline.h"

namespace {

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { dpo_string_free(ptr); }
};

struct OwnedClass {
  dpo_class* ptr = nullptr;
  ~OwnedClass() { dpo_class_destroy(ptr); }
};

int report_failure(const char* what, dpo_status status) {
  std::cerr << "dpo: " << what << " failed: " << dpo_status_name(status) << " ("
            << dpo_last_error() << ")\n";
  return 2;
}

// Ordered key=value assembly: config file entries first, explicit flags last
// so they win when the library folds duplicate keys (last wins).
class ConfigText {
 public:
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) lines_.push_back(line);
  }

  void set(const std::string& key, const std::string& value) {
    lines_.push_back(key + "=" + value);
  }

  template <typename T>
  void set_number(const std::string& key, T value) {
    std::ostringstream out;
    out << value;
    set(key, out.str());
  }

  std::string text() const {
    std::string out;
    for (const std::string& line : lines_) {
      out += line;
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> lines_;
};

void add_run_options(CLI::App* cmd, std::map<std::string, std::string>& flags,
                     std::string& config_path) {
  cmd->add_option("--config", config_path, "flat key=value config file; flags take precedence");
  cmd->add_option("--class", flags["class"], "hypothesis class: thresholds|points|intervals");
  cmd->add_option("--domain-size", flags["domain-size"], "grid domain size d");
  cmd->add_option("--T", flags["T"], "game horizon");
  cmd->add_option("--trials", flags["trials"], "independent seeded games");
  cmd->add_option("--adversary", flags["adversary"],
                  "iid|fixed|tracker|bisect|consistency");
  cmd->add_option("--mode", flags["mode"],
                  "faithful (adaptive wrapper on) | fast (oblivious adversaries only)");
  cmd->add_option("--learner", flags["learner"], "pipeline|weak|wrapped-weak");
  cmd->add_option("--seed", flags["seed"], "master seed");
  cmd->add_option("--out", flags["out"], "output directory for transcripts and summary.json");
  cmd->add_option("--m0", flags["m0"], "private-learner sample size; 0 calibrates");
  cmd->add_option("--eps", flags["eps"], "privacy budget");
  cmd->add_option("--alpha", flags["alpha"], "PAC accuracy");
  cmd->add_option("--beta", flags["beta"], "PAC confidence");
  cmd->add_option("--calibrate-trials", flags["calibrate-trials"], "Monte Carlo trials per m");
  cmd->add_option("--n-override", flags["n-override"],
                  "empirical pool-size override; 0 keeps the faithful size");
  cmd->add_option("--wrapper", flags["wrapper"], "replay|live");
  cmd->add_option("--concept", flags["concept"], "target concept index; -1 draws from the seed");
  cmd->add_option("--sequence-file", flags["sequence-file"], "CSV x,y sequence for adversary=fixed");
  cmd->add_option("--marginal", flags["marginal"], "iid instance marginal: uniform|random");
}

std::string assemble_config(const std::map<std::string, std::string>& flags,
                            const std::string& config_path) {
  ConfigText config;
  if (!config_path.empty()) config.load_file(config_path);
  for (const auto& [key, value] : flags)
    if (!value.empty()) config.set(key, value);
  return config.text();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online-learning-from-a-private-oracle simulation lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dpo_version()));

  // run
  auto* run = app.add_subcommand("run", "run one experiment and write its artifacts");
  std::map<std::string, std::string> run_flags;
  std::string run_config;
  add_run_options(run, run_flags, run_config);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "repeat run over a list of horizons");
  std::map<std::string, std::string> sweep_flags;
  std::string sweep_config;
  std::string t_list;
  add_run_options(sweep, sweep_flags, sweep_config);
  sweep->add_option("--T-list", t_list, "comma-separated horizons")->required();

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate",
                                       "empirically calibrate the private learner's sample size");
  std::string cal_class = "thresholds";
  std::int32_t cal_domain = 8;
  double cal_alpha = 0.25, cal_beta = 0.5, cal_eps = 0.1;
  std::int32_t cal_trials = 2000;
  std::uint64_t cal_seed = 1;
  calibrate->add_option("--class", cal_class, "hypothesis class");
  calibrate->add_option("--domain-size", cal_domain, "grid domain size d");
  calibrate->add_option("--alpha", cal_alpha, "PAC accuracy");
  calibrate->add_option("--beta", cal_beta, "PAC confidence");
  calibrate->add_option("--eps", cal_eps, "privacy budget");
  calibrate->add_option("--trials", cal_trials, "Monte Carlo trials per candidate m");
  calibrate->add_option("--seed", cal_seed, "seed");

  // audit-privacy
  auto* audit = app.add_subcommand("audit-privacy",
                                   "exhaustive group-privacy audit of the private learner");
  std::string audit_class = "thresholds";
  std::int32_t audit_domain = 8;
  std::int32_t audit_m = 4;
  double audit_eps = 0.1;
  std::int64_t audit_limit = 20000000;
  std::uint64_t audit_seed = 1;
  audit->add_option("--class", audit_class, "hypothesis class");
  audit->add_option("--domain-size", audit_domain, "grid domain size d");
  audit->add_option("--m", audit_m, "sample length");
  audit->add_option("--eps", audit_eps, "privacy budget");
  audit->add_option("--exhaustive-limit", audit_limit,
                    "max multiset pairs before falling back to sampling");
  audit->add_option("--seed", audit_seed, "seed for the sampling fallback");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    OwnedString summary;
    std::int32_t all_pass = 0;
    const std::string config = assemble_config(run_flags, run_config);
    const dpo_status status = dpo_experiment_run(config.c_str(), &summary.ptr, &all_pass);
    if (status != DPO_OK) return report_failure("run", status);
    std::cout << summary.ptr << "\n";
    return all_pass ? 0 : 1;
  }

  if (sweep->parsed()) {
    OwnedString summary;
    std::int32_t all_pass = 0;
    const std::string config = assemble_config(sweep_flags, sweep_config);
    const dpo_status status =
        dpo_sweep_run(config.c_str(), t_list.c_str(), &summary.ptr, &all_pass);
    if (status != DPO_OK) return report_failure("sweep", status);
    std::cout << summary.ptr << "\n";
    return all_pass ? 0 : 1;
  }

  if (calibrate->parsed()) {
    OwnedClass cls;
    dpo_status status = dpo_class_create(cal_class.c_str(), cal_domain, &cls.ptr);
    if (status != DPO_OK) return report_failure("calibrate", status);
    std::int32_t m0 = 0;
    status = dpo_calibrate(cls.ptr, cal_alpha, cal_beta, cal_eps, cal_trials, cal_seed, &m0);
    if (status != DPO_OK) return report_failure("calibrate", status);
    std::int64_t formula_m = 0;
    status = dpo_sample_complexity_formula(cls.ptr, cal_alpha, cal_beta, cal_eps, &formula_m);
    if (status != DPO_OK) return report_failure("calibrate", status);
    std::cout << "{\"class\":\"" << cal_class << "\",\"domain_size\":" << cal_domain
              << ",\"alpha\":" << cal_alpha << ",\"beta\":" << cal_beta << ",\"eps\":" << cal_eps
              << ",\"trials\":" << cal_trials << ",\"seed\":" << cal_seed << ",\"m0\":" << m0
              << ",\"formula_m\":" << formula_m << "}\n";
    return 0;
  }

  if (audit->parsed()) {
    OwnedClass cls;
    dpo_status status = dpo_class_create(audit_class.c_str(), audit_domain, &cls.ptr);
    if (status != DPO_OK) return report_failure("audit-privacy", status);
    OwnedString report;
    std::int32_t pass = 0;
    status = dpo_audit_privacy(cls.ptr, audit_m, audit_eps, audit_limit, audit_seed, &report.ptr,
                               &pass);
    if (status != DPO_OK) return report_failure("audit-privacy", status);
    std::cout << report.ptr << "\n";
    return pass ? 0 : 1;
  }

  return 2;
}

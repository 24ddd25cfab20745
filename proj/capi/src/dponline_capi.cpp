#include "dponline.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "dpo/dp_learner.hpp"
#include "dpo/experiment.hpp"
#include "dpo/hypothesis.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dpo_status fail(dpo_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
dpo_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const dpo::PreconditionError& e) {
    return fail(DPO_ERR_PRECONDITION, e.what());
  } catch (const dpo::ProtocolError& e) {
    return fail(DPO_ERR_PROTOCOL, e.what());
  } catch (const dpo::InfeasiblePoolError& e) {
    return fail(DPO_ERR_INFEASIBLE, e.what());
  } catch (const dpo::CalibrationError& e) {
    return fail(DPO_ERR_CALIBRATION, e.what());
  } catch (const dpo::ConfigError& e) {
    return fail(DPO_ERR_CONFIG, e.what());
  } catch (const dpo::ParseError& e) {
    return fail(DPO_ERR_PARSE, e.what());
  } catch (const dpo::IoError& e) {
    return fail(DPO_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(DPO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DPO_ERR_INTERNAL, "unknown error");
  }
}

const dpo::FiniteHypothesisClass* unwrap(const dpo_class* cls) {
  return reinterpret_cast<const dpo::FiniteHypothesisClass*>(cls);
}

}  // namespace

extern "C" {

const char* dpo_version(void) { return "1.0.0"; }

const char* dpo_status_name(dpo_status status) {
  switch (status) {
    case DPO_OK: return "ok";
    case DPO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DPO_ERR_PRECONDITION: return "precondition violation";
    case DPO_ERR_PROTOCOL: return "protocol violation";
    case DPO_ERR_INFEASIBLE: return "infeasible pool";
    case DPO_ERR_CALIBRATION: return "calibration failure";
    case DPO_ERR_CONFIG: return "bad configuration";
    case DPO_ERR_PARSE: return "parse error";
    case DPO_ERR_IO: return "io error";
    case DPO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dpo_last_error(void) { return g_last_error.c_str(); }

void dpo_string_free(char* s) { std::free(s); }

dpo_status dpo_class_create(const char* kind, int32_t domain_size, dpo_class** out_class) {
  if (!kind || !out_class) return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  *out_class = nullptr;
  return guarded([&] {
    auto* cls = new dpo::FiniteHypothesisClass(
        dpo::FiniteHypothesisClass::from_name(kind, domain_size));
    *out_class = reinterpret_cast<dpo_class*>(cls);
    return DPO_OK;
  });
}

void dpo_class_destroy(dpo_class* cls) { delete unwrap(cls); }

dpo_status dpo_class_size(const dpo_class* cls, int64_t* out_size) {
  if (!cls || !out_size) return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  *out_size = unwrap(cls)->size();
  return DPO_OK;
}

dpo_status dpo_class_eval(const dpo_class* cls, int64_t hypothesis, int32_t instance,
                          int32_t* out_label) {
  if (!cls || !out_label) return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_label = unwrap(cls)->eval(hypothesis, instance);
    return DPO_OK;
  });
}

dpo_status dpo_calibrate(const dpo_class* cls, double alpha, double beta, double eps,
                         int32_t trials, uint64_t seed, int32_t* out_m0) {
  if (!cls || !out_m0) return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    dpo::Rng rng(seed);
    *out_m0 = dpo::calibrate_sample_complexity(*unwrap(cls), alpha, beta, eps, trials, rng);
    return DPO_OK;
  });
}

dpo_status dpo_sample_complexity_formula(const dpo_class* cls, double alpha, double beta,
                                         double eps, int64_t* out_m) {
  if (!cls || !out_m) return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_m = dpo::sample_complexity_formula(*unwrap(cls), alpha, beta, eps);
    return DPO_OK;
  });
}

dpo_status dpo_pac_validate(const dpo_class* cls, int32_t m, double alpha, double beta, double eps,
                            int32_t trials, uint64_t seed, double* out_frequency,
                            double* out_std_error) {
  if (!cls || !out_frequency || !out_std_error)
    return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    dpo::Rng rng(seed);
    const dpo::PacValidation v =
        dpo::pac_validate(*unwrap(cls), m, alpha, beta, eps, trials, rng);
    *out_frequency = v.frequency;
    *out_std_error = v.std_error;
    return DPO_OK;
  });
}

dpo_status dpo_audit_privacy(const dpo_class* cls, int32_t m, double eps, int64_t pair_limit,
                             uint64_t seed, char** out_report_json, int32_t* out_pass) {
  if (!cls || !out_report_json || !out_pass)
    return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  *out_report_json = nullptr;
  return guarded([&] {
    const dpo::ExhaustiveAudit audit =
        dpo::audit_privacy_exhaustive(*unwrap(cls), m, eps, pair_limit, seed);
    *out_report_json = dup_string(audit.to_json(*unwrap(cls)));
    if (!*out_report_json) return fail(DPO_ERR_INTERNAL, "out of memory");
    *out_pass = audit.pass ? 1 : 0;
    return DPO_OK;
  });
}

dpo_status dpo_experiment_run(const char* config_text, char** out_summary_json,
                              int32_t* out_all_pass) {
  if (!config_text || !out_summary_json || !out_all_pass)
    return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  *out_summary_json = nullptr;
  return guarded([&] {
    const dpo::ExperimentConfig config = dpo::ExperimentConfig::from_kv_text(config_text);
    const dpo::ExperimentResult result = dpo::run_experiment(config);
    *out_summary_json = dup_string(result.summary.to_json());
    if (!*out_summary_json) return fail(DPO_ERR_INTERNAL, "out of memory");
    *out_all_pass = result.summary.all_pass() ? 1 : 0;
    return DPO_OK;
  });
}

dpo_status dpo_sweep_run(const char* config_text, const char* horizon_list,
                         char** out_summary_json, int32_t* out_all_pass) {
  if (!config_text || !horizon_list || !out_summary_json || !out_all_pass)
    return fail(DPO_ERR_INVALID_ARGUMENT, "null argument");
  *out_summary_json = nullptr;
  return guarded([&] {
    const dpo::ExperimentConfig config = dpo::ExperimentConfig::from_kv_text(config_text);
    std::vector<std::int64_t> horizons;
    const std::string list(horizon_list);
    std::size_t pos = 0;
    while (pos <= list.size()) {
      const std::size_t comma = list.find(',', pos);
      const std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
      if (!item.empty()) {
        try {
          horizons.push_back(std::stoll(item));
        } catch (const std::exception&) {
          throw dpo::ConfigError("sweep: bad horizon '" + item + "'");
        }
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    const dpo::SweepResult result = dpo::run_sweep(config, horizons);
    *out_summary_json = dup_string(result.to_json());
    if (!*out_summary_json) return fail(DPO_ERR_INTERNAL, "out of memory");
    *out_all_pass = result.all_pass ? 1 : 0;
    return DPO_OK;
  });
}

}  // extern "C"

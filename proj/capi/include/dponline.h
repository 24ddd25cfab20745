/*
 * C interface to the dponline simulation library.
 *
 * Every function returns a dpo_status; outputs go through pointers. A
 * non-DPO_OK status leaves a detail message readable via dpo_last_error()
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** are heap-allocated; release them with
 * dpo_string_free().
 */
#ifndef DPONLINE_H
#define DPONLINE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpo_status {
  DPO_OK = 0,
  DPO_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown name, bad parameter */
  DPO_ERR_PRECONDITION = 2,     /* documented operation precondition violated */
  DPO_ERR_PROTOCOL = 3,         /* predict/update or game protocol violation */
  DPO_ERR_INFEASIBLE = 4,       /* expert pool past its configured ceiling */
  DPO_ERR_CALIBRATION = 5,      /* sample-complexity search hit its ceiling */
  DPO_ERR_CONFIG = 6,           /* malformed experiment configuration */
  DPO_ERR_PARSE = 7,            /* malformed serialized data */
  DPO_ERR_IO = 8,               /* filesystem failure */
  DPO_ERR_INTERNAL = 9
} dpo_status;

const char* dpo_version(void);
const char* dpo_status_name(dpo_status status);
const char* dpo_last_error(void);
void dpo_string_free(char* s);

/* Finite hypothesis class over a grid domain [0, domain_size). */
typedef struct dpo_class dpo_class;

/* kind: "thresholds" | "points" | "intervals" */
dpo_status dpo_class_create(const char* kind, int32_t domain_size, dpo_class** out_class);
void dpo_class_destroy(dpo_class* cls);
dpo_status dpo_class_size(const dpo_class* cls, int64_t* out_size);
dpo_status dpo_class_eval(const dpo_class* cls, int64_t hypothesis, int32_t instance,
                          int32_t* out_label);

/* Empirical sample-complexity calibration of the private learner at
 * (alpha, beta); deterministic in the seed. */
dpo_status dpo_calibrate(const dpo_class* cls, double alpha, double beta, double eps,
                         int32_t trials, uint64_t seed, int32_t* out_m0);

/* Closed-form conservative bound for the same parameters. */
dpo_status dpo_sample_complexity_formula(const dpo_class* cls, double alpha, double beta,
                                         double eps, int64_t* out_m);

/* Monte Carlo PAC success frequency of the private learner at sample size m. */
dpo_status dpo_pac_validate(const dpo_class* cls, int32_t m, double alpha, double beta, double eps,
                            int32_t trials, uint64_t seed, double* out_frequency,
                            double* out_std_error);

/* Worst-case group-privacy audit over all q-neighboring sample pairs of
 * length m (q = 0..m). JSON report; out_pass is 1 iff every q passed. */
dpo_status dpo_audit_privacy(const dpo_class* cls, int32_t m, double eps, int64_t pair_limit,
                             uint64_t seed, char** out_report_json, int32_t* out_pass);

/* Runs one experiment from flat key=value configuration text (same format as
 * the CLI config file). Writes transcripts and summary.json under the
 * configured output directory; returns the summary JSON. out_all_pass is
 * 1 iff every asserted pass flag held. */
dpo_status dpo_experiment_run(const char* config_text, char** out_summary_json,
                              int32_t* out_all_pass);

/* Repeats the experiment for each comma-separated horizon in horizon_list. */
dpo_status dpo_sweep_run(const char* config_text, const char* horizon_list,
                         char** out_summary_json, int32_t* out_all_pass);

#ifdef __cplusplus
}
#endif

#endif /* DPONLINE_H */

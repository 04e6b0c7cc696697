#ifndef SUBCRIT_H
#define SUBCRIT_H

/* C interface to the subcrit library. Every call returns an sc_status; on
 * failure sc_last_error() holds a message for the calling thread. Objects are
 * opaque handles released with their *_free function. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

/* Values 1..15 mirror subcrit::ErrorCode. */
typedef enum sc_status {
  SC_OK = 0,
  SC_INVALID_ARGUMENT = 1,
  SC_UNKNOWN_CLASS = 2,
  SC_COMPOSITION_AT_NONZERO_CONSTANT = 3,
  SC_DISCONNECTED = 4,
  SC_MISSING_WEIGHTS = 5,
  SC_NON_POSITIVE_WEIGHT = 6,
  SC_PARAMETER_OUT_OF_RANGE = 7,
  SC_SAMPLER_RUNAWAY = 8,
  SC_SINGULAR_SYSTEM = 9,
  SC_NO_BRACKET = 10,
  SC_ORDER_TOO_SMALL = 11,
  SC_INFEASIBLE_SIZE = 12,
  SC_DOMAIN_TOO_SMALL = 13,
  SC_EMPTY_SAMPLE = 14,
  SC_PARSE_ERROR = 15,
  SC_INTERNAL_ERROR = 99
} sc_status;

SC_API const char* sc_status_name(sc_status status);
SC_API const char* sc_last_error(void);
SC_API const char* sc_version(void);

/* Owned text returned by the library. */
typedef struct sc_buffer sc_buffer;
SC_API const char* sc_buffer_data(const sc_buffer* buffer);
SC_API size_t sc_buffer_size(const sc_buffer* buffer);
SC_API void sc_buffer_free(sc_buffer* buffer);

/* Graph classes: trees, forb_c4, forb_c5, cacti, outerplanar. */
SC_API size_t sc_class_count(void);
SC_API const char* sc_class_name_at(size_t index);

typedef struct sc_class sc_class;
SC_API sc_status sc_class_open(const char* name, sc_class** out);
SC_API void sc_class_free(sc_class* cls);
SC_API const char* sc_class_name(const sc_class* cls);

typedef struct sc_constants {
  double y, rho, lambda, sigma2, kappa, H, c;
  int span;
} sc_constants;
SC_API sc_status sc_class_constants(const sc_class* cls, sc_constants* out);

/* Recomputed constants beside the published table (text or JSON). */
SC_API sc_status sc_constants_table(int json, sc_buffer** out);

/* CSV n,coefficient,labeled_count of the rooted connected series C(z). */
SC_API sc_status sc_series_csv(const sc_class* cls, int order, int exact, sc_buffer** out);

/* CSV n,exact,asymptotic,ratio,brute_force for n = 1..max_n. */
SC_API sc_status sc_counts_csv(const sc_class* cls, int max_n, int brute_force_max, sc_buffer** out);

typedef enum sc_graph_format { SC_FORMAT_EDGES = 0, SC_FORMAT_JSON = 1 } sc_graph_format;

/* Uniform rooted connected graph on n vertices. `method` is "tree_first" or
 * "rejection"; `weights` may be NULL. Vertex labels in the output are 1-based;
 * *root receives the 1-based root when non-NULL. */
SC_API sc_status sc_sample_graph(const sc_class* cls, int n, uint64_t seed, uint64_t stream, const char* method,
                                 const char* weights, sc_graph_format format, sc_buffer** out, int* root);

/* Experiment configuration. */
typedef struct sc_config sc_config;
SC_API sc_status sc_config_new(sc_config** out);
SC_API void sc_config_free(sc_config* cfg);
SC_API sc_status sc_config_set_class(sc_config* cfg, const char* name);
SC_API sc_status sc_config_set_n(sc_config* cfg, int n);
SC_API sc_status sc_config_set_m(sc_config* cfg, long m);
SC_API sc_status sc_config_set_seed(sc_config* cfg, uint64_t seed);
SC_API sc_status sc_config_set_workers(sc_config* cfg, int workers);
/* "height", "diameter" or "both". */
SC_API sc_status sc_config_set_statistic(sc_config* cfg, const char* statistic);
SC_API sc_status sc_config_set_method(sc_config* cfg, const char* method);
/* NULL clears the weights. */
SC_API sc_status sc_config_set_weights(sc_config* cfg, const char* weights);
/* CSV written while the run proceeds; NULL or "" for none. */
SC_API sc_status sc_config_set_output(sc_config* cfg, const char* path);
SC_API sc_status sc_config_set_kappa_draws(sc_config* cfg, long draws);

typedef enum sc_run_kind { SC_RUN_CONVERGENCE = 0, SC_RUN_TAILS = 1, SC_RUN_FPP = 2 } sc_run_kind;

typedef struct sc_report sc_report;
SC_API sc_status sc_run(const sc_config* cfg, sc_run_kind kind, sc_report** out);
SC_API sc_status sc_report_parse_csv(const char* text, sc_report** out);
SC_API void sc_report_free(sc_report* report);
SC_API long sc_report_size(const sc_report* report);

typedef struct sc_record {
  long index;
  int n;
  double height;   /* -1 when not computed */
  double diameter; /* -1 when not computed */
  int largest_block;
  double seconds;
} sc_record;
SC_API sc_status sc_report_record(const sc_report* report, long index, sc_record* out);
SC_API sc_status sc_report_csv(const sc_report* report, sc_buffer** out);
SC_API sc_status sc_report_summary_json(const sc_report* report, sc_buffer** out);
/* 1 when the two reports hold the same samples (timings ignored). */
SC_API int sc_report_same_samples(const sc_report* a, const sc_report* b);

typedef enum sc_law { SC_LAW_HEIGHT = 0, SC_LAW_DIAMETER = 1 } sc_law;
SC_API sc_status sc_law_sf(sc_law law, double x, double* out);
SC_API sc_status sc_law_moment(sc_law law, int k, double* out);
SC_API sc_status sc_law_quantile(sc_law law, double p, double* out);

typedef struct sc_verify_options {
  int quick;
  uint64_t seed;
  int workers;
  double kappa_multiplier;
} sc_verify_options;
SC_API void sc_verify_options_default(sc_verify_options* out);

/* Called after each criterion with its one-line result. */
typedef void (*sc_verify_callback)(int id, int passed, const char* line, double seconds, void* user);

/* Runs the acceptance suite (all criteria when only_count is 0). The report
 * text excludes timings; *passed is 1 when every criterion passed. */
SC_API sc_status sc_verify(const sc_verify_options* options, const int* only, size_t only_count,
                           sc_verify_callback callback, void* user, sc_buffer** report, int* passed);

#ifdef __cplusplus
}
#endif

#endif

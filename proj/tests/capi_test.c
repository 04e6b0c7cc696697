#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "subcrit/subcrit.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static void classes(void) {
  EXPECT(sc_class_count() == 5);
  EXPECT(strcmp(sc_class_name_at(0), "trees") == 0);
  EXPECT(sc_class_name_at(5) == NULL);

  sc_class* cls = NULL;
  EXPECT(sc_class_open("planar", &cls) == SC_UNKNOWN_CLASS);
  EXPECT(cls == NULL);
  EXPECT(strstr(sc_last_error(), "planar") != NULL);
  EXPECT(strcmp(sc_status_name(SC_UNKNOWN_CLASS), "UnknownClass") == 0);
  EXPECT(sc_class_open(NULL, &cls) == SC_INVALID_ARGUMENT);

  EXPECT(sc_class_open("cacti", &cls) == SC_OK);
  EXPECT(strcmp(sc_class_name(cls), "cacti") == 0);
  sc_constants k;
  EXPECT(sc_class_constants(cls, &k) == SC_OK);
  EXPECT(fabs(k.y - 0.45631) < 1e-4);
  EXPECT(fabs(k.kappa - 1.20297) < 1e-4);
  EXPECT(k.span == 1);

  sc_buffer* buf = NULL;
  EXPECT(sc_series_csv(cls, 6, 1, &buf) == SC_OK);
  EXPECT(strncmp(sc_buffer_data(buf), "n,coefficient,labeled_count", 27) == 0);
  EXPECT(strstr(sc_buffer_data(buf), "\n4,") != NULL);
  sc_buffer_free(buf);

  EXPECT(sc_counts_csv(cls, 5, 5, &buf) == SC_OK);
  EXPECT(strstr(sc_buffer_data(buf), "\n5,362,") != NULL);
  sc_buffer_free(buf);

  int root = 0;
  EXPECT(sc_sample_graph(cls, 30, 1, 0, "tree_first", NULL, SC_FORMAT_EDGES, &buf, &root) == SC_OK);
  EXPECT(root >= 1 && root <= 30);
  EXPECT(strncmp(sc_buffer_data(buf), "30 ", 3) == 0);
  sc_buffer* again = NULL;
  EXPECT(sc_sample_graph(cls, 30, 1, 0, "tree_first", NULL, SC_FORMAT_EDGES, &again, NULL) == SC_OK);
  EXPECT(sc_buffer_size(buf) == sc_buffer_size(again));
  EXPECT(memcmp(sc_buffer_data(buf), sc_buffer_data(again), sc_buffer_size(buf)) == 0);
  sc_buffer_free(buf);
  sc_buffer_free(again);

  EXPECT(sc_sample_graph(cls, 10, 1, 0, "rejection", "exp:1", SC_FORMAT_JSON, &buf, NULL) == SC_OK);
  EXPECT(strstr(sc_buffer_data(buf), "\"weights\"") != NULL);
  sc_buffer_free(buf);

  buf = NULL;
  EXPECT(sc_sample_graph(cls, 0, 1, 0, "tree_first", NULL, SC_FORMAT_EDGES, &buf, NULL) == SC_INVALID_ARGUMENT);
  EXPECT(buf == NULL);
  EXPECT(sc_sample_graph(cls, 10, 1, 0, "magic", NULL, SC_FORMAT_EDGES, &buf, NULL) == SC_INVALID_ARGUMENT);
  EXPECT(sc_sample_graph(cls, 10, 1, 0, "tree_first", "constant:-2", SC_FORMAT_EDGES, &buf, NULL) ==
         SC_NON_POSITIVE_WEIGHT);
  EXPECT(sc_sample_graph(cls, 10, 1, 0, "tree_first", "gauss:1", SC_FORMAT_EDGES, &buf, NULL) == SC_PARSE_ERROR);
  sc_class_free(cls);

  EXPECT(sc_class_open("forb_c4", &cls) == SC_OK);
  EXPECT(sc_counts_csv(cls, 4, 4, &buf) == SC_OK);
  EXPECT(strstr(sc_buffer_data(buf), "\n4,28,") != NULL);
  sc_buffer_free(buf);
  sc_class_free(cls);

  EXPECT(sc_constants_table(1, &buf) == SC_OK);
  EXPECT(sc_buffer_data(buf)[0] == '{' || sc_buffer_data(buf)[0] == '[');
  sc_buffer_free(buf);
}

static void experiments(void) {
  sc_config* cfg = NULL;
  EXPECT(sc_config_new(&cfg) == SC_OK);
  EXPECT(sc_config_set_class(cfg, "bogus") == SC_UNKNOWN_CLASS);
  EXPECT(sc_config_set_class(cfg, "forb_c5") == SC_OK);
  EXPECT(sc_config_set_n(cfg, 0) == SC_INVALID_ARGUMENT);
  EXPECT(sc_config_set_n(cfg, 120) == SC_OK);
  EXPECT(sc_config_set_m(cfg, 16) == SC_OK);
  EXPECT(sc_config_set_seed(cfg, 5) == SC_OK);
  EXPECT(sc_config_set_workers(cfg, 2) == SC_OK);
  EXPECT(sc_config_set_statistic(cfg, "girth") == SC_INVALID_ARGUMENT);
  EXPECT(sc_config_set_statistic(cfg, "both") == SC_OK);

  sc_report* rep = NULL;
  EXPECT(sc_run(cfg, SC_RUN_CONVERGENCE, &rep) == SC_OK);
  EXPECT(sc_report_size(rep) == 16);
  sc_record r;
  EXPECT(sc_report_record(rep, 3, &r) == SC_OK);
  EXPECT(r.index == 3 && r.n == 120 && r.height >= 1 && r.diameter >= r.height);
  EXPECT(sc_report_record(rep, 16, &r) == SC_INVALID_ARGUMENT);

  sc_buffer* csv = NULL;
  EXPECT(sc_report_csv(rep, &csv) == SC_OK);
  sc_report* back = NULL;
  EXPECT(sc_report_parse_csv(sc_buffer_data(csv), &back) == SC_OK);
  EXPECT(sc_report_same_samples(rep, back) == 1);
  sc_buffer_free(csv);
  sc_report_free(back);
  EXPECT(sc_report_parse_csv("not,a,report\n", &back) == SC_PARSE_ERROR);

  sc_buffer* json = NULL;
  EXPECT(sc_report_summary_json(rep, &json) == SC_OK);
  EXPECT(strstr(sc_buffer_data(json), "\"ks_height\"") != NULL);
  sc_buffer_free(json);

  EXPECT(sc_config_set_workers(cfg, 1) == SC_OK);
  sc_report* single = NULL;
  EXPECT(sc_run(cfg, SC_RUN_CONVERGENCE, &single) == SC_OK);
  EXPECT(sc_report_same_samples(rep, single) == 1);
  sc_report_free(single);
  sc_report_free(rep);

  rep = NULL;
  EXPECT(sc_run(cfg, SC_RUN_FPP, &rep) == SC_MISSING_WEIGHTS);
  EXPECT(rep == NULL);
  EXPECT(sc_config_set_weights(cfg, "constant:1") == SC_OK);
  EXPECT(sc_config_set_kappa_draws(cfg, 1000) == SC_OK);
  EXPECT(sc_run(cfg, SC_RUN_FPP, &rep) == SC_OK);
  sc_report_free(rep);
  sc_config_free(cfg);
}

static void laws(void) {
  double v = 0;
  EXPECT(sc_law_moment(SC_LAW_HEIGHT, 1, &v) == SC_OK && fabs(v - 1.25331) < 1e-5);
  EXPECT(sc_law_moment(SC_LAW_DIAMETER, 1, &v) == SC_OK && fabs(v - 1.67109) < 1e-5);
  EXPECT(sc_law_sf(SC_LAW_HEIGHT, 0.01, &v) == SC_DOMAIN_TOO_SMALL);
  EXPECT(sc_law_quantile(SC_LAW_DIAMETER, 0.5, &v) == SC_OK);
  double p = 0;
  EXPECT(sc_law_sf(SC_LAW_DIAMETER, v, &p) == SC_OK && fabs(p - 0.5) < 1e-10);
}

static int callbacks = 0;
static void on_result(int id, int passed, const char* line, double seconds, void* user) {
  (void)seconds;
  (void)passed;
  ++*(int*)user;
  EXPECT(strncmp(line, "criterion ", 10) == 0);
  EXPECT(id == 3);
}

static void verify(void) {
  sc_verify_options o;
  sc_verify_options_default(&o);
  EXPECT(o.seed != 0 && o.quick == 0 && o.kappa_multiplier == 1.0);
  o.quick = 1;
  const int only[] = {3};
  sc_buffer* text = NULL;
  int passed = 0;
  EXPECT(sc_verify(&o, only, 1, on_result, &callbacks, &text, &passed) == SC_OK);
  EXPECT(passed == 1);
  EXPECT(callbacks == 1);
  EXPECT(strstr(sc_buffer_data(text), "criterion 3 PASS") != NULL);
  sc_buffer_free(text);
  const int bad[] = {11};
  EXPECT(sc_verify(&o, bad, 1, NULL, NULL, &text, &passed) == SC_INVALID_ARGUMENT);
}

int main(void) {
  EXPECT(sc_version() != NULL);
  classes();
  experiments();
  laws();
  verify();
  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}

#include "subcrit/subcrit.h"

#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "subcrit/constants.hpp"
#include "subcrit/error.hpp"
#include "subcrit/experiments.hpp"
#include "subcrit/limits.hpp"
#include "subcrit/samplers.hpp"
#include "subcrit/verify.hpp"

struct sc_buffer {
  std::string text;
};

struct sc_class {
  subcrit::ClassSpec spec;
  mutable std::once_flag once;
  mutable std::unique_ptr<subcrit::ClassSampler> sampler;

  const subcrit::ClassSampler& get() const {
    std::call_once(once, [this] { sampler = std::make_unique<subcrit::ClassSampler>(spec); });
    return *sampler;
  }
};

struct sc_config {
  subcrit::ExperimentConfig cfg;
};

struct sc_report {
  subcrit::SampleReport report;
};

namespace {

thread_local std::string last_error;

template <class F>
sc_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return SC_OK;
  } catch (const subcrit::Error& e) {
    last_error = e.what();
    return static_cast<sc_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SC_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SC_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw subcrit::Error(subcrit::ErrorCode::InvalidArgument, what);
}

sc_buffer* make_buffer(std::string text) { return new sc_buffer{std::move(text)}; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

subcrit::LawKind law_kind(sc_law law) {
  require(law == SC_LAW_HEIGHT || law == SC_LAW_DIAMETER, "unknown law");
  return law == SC_LAW_HEIGHT ? subcrit::LawKind::Height : subcrit::LawKind::Diameter;
}

subcrit::UniformMethod method_of(const char* method) {
  if (!method) return subcrit::UniformMethod::TreeFirst;
  const auto m = subcrit::parse_uniform_method(method);
  if (!m) throw subcrit::Error(subcrit::ErrorCode::InvalidArgument, std::string("unknown method '") + method + "'");
  return *m;
}

}  // namespace

extern "C" {

const char* sc_status_name(sc_status status) {
  if (status == SC_OK) return "Ok";
  if (status == SC_INTERNAL_ERROR) return "InternalError";
  if (status >= 1 && status <= 15) return subcrit::error_code_name(static_cast<subcrit::ErrorCode>(status));
  return "UnknownStatus";
}

const char* sc_last_error(void) { return last_error.c_str(); }

const char* sc_version(void) { return "1.0.0"; }

const char* sc_buffer_data(const sc_buffer* buffer) { return buffer ? buffer->text.c_str() : ""; }
size_t sc_buffer_size(const sc_buffer* buffer) { return buffer ? buffer->text.size() : 0; }
void sc_buffer_free(sc_buffer* buffer) { delete buffer; }

size_t sc_class_count(void) { return subcrit::class_names().size(); }

const char* sc_class_name_at(size_t index) {
  const auto& names = subcrit::class_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

sc_status sc_class_open(const char* name, sc_class** out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = new sc_class{subcrit::make_class(name), {}, {}};
  });
}

void sc_class_free(sc_class* cls) { delete cls; }

const char* sc_class_name(const sc_class* cls) { return cls ? cls->spec.name().c_str() : nullptr; }

sc_status sc_class_constants(const sc_class* cls, sc_constants* out) {
  return guarded([&] {
    require(cls && out, "null argument");
    const auto& c = cls->get().constants();
    *out = {c.y, c.rho, c.lambda, c.sigma2, c.kappa, c.H, c.c, c.span};
  });
}

sc_status sc_constants_table(int json, sc_buffer** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = make_buffer(subcrit::constants_table(json != 0));
  });
}

sc_status sc_series_csv(const sc_class* cls, int order, int exact, sc_buffer** out) {
  return guarded([&] {
    require(cls && out, "null argument");
    require(order >= 1, "order must be >= 1");
    const auto o = static_cast<std::size_t>(order);
    std::ostringstream csv;
    csv << "n,coefficient,labeled_count\n";
    if (exact) {
      const auto c = subcrit::ps_fixed_point(cls->spec.b1_series_exact(o), o);
      subcrit::BigInt fact = 1;
      for (std::size_t n = 0; n < o; ++n) {
        if (n > 0) fact *= static_cast<unsigned>(n);
        const subcrit::Rational count = c[n] * subcrit::Rational(fact);
        csv << n << ',' << c[n].str() << ',' << count.str() << '\n';
      }
    } else {
      const auto c = subcrit::ps_fixed_point(cls->spec.b1_series(o), o);
      double log_fact = 0.0;
      for (std::size_t n = 0; n < o; ++n) {
        if (n > 0) log_fact += std::log(static_cast<double>(n));
        const double count = c[n] == 0.0 ? 0.0 : c[n] * std::exp(log_fact);
        csv << n << ',' << fmt(c[n]) << ',' << fmt(count) << '\n';
      }
    }
    *out = make_buffer(csv.str());
  });
}

sc_status sc_counts_csv(const sc_class* cls, int max_n, int brute_force_max, sc_buffer** out) {
  return guarded([&] {
    require(cls && out, "null argument");
    require(brute_force_max >= 0 && brute_force_max <= 7, "brute force is limited to n <= 7");
    const auto rows = subcrit::run_counts(cls->spec, max_n, brute_force_max);
    std::ostringstream csv;
    csv << "n,exact,asymptotic,ratio,brute_force\n";
    for (const auto& r : rows) {
      csv << r.n << ',' << r.exact.str() << ',' << fmt(r.asymptotic) << ',' << fmt(r.ratio) << ',';
      if (r.brute_force) csv << *r.brute_force;
      csv << '\n';
    }
    *out = make_buffer(csv.str());
  });
}

sc_status sc_sample_graph(const sc_class* cls, int n, uint64_t seed, uint64_t stream, const char* method,
                          const char* weights, sc_graph_format format, sc_buffer** out, int* root) {
  return guarded([&] {
    require(cls && out, "null argument");
    require(format == SC_FORMAT_EDGES || format == SC_FORMAT_JSON, "unknown format");
    const auto m = method_of(method);
    std::optional<subcrit::WeightDistribution> w;
    if (weights) w = subcrit::WeightDistribution::parse(weights);
    subcrit::Rng rng(seed, stream);
    auto g = subcrit::sample_uniform_cn(cls->get(), n, rng, m);
    if (w) g.graph = subcrit::assign_weights(g.graph, *w, rng);
    *out = make_buffer(format == SC_FORMAT_JSON ? subcrit::write_graph_json(g.graph) + "\n"
                                                : subcrit::write_edge_list(g.graph));
    if (root) *root = g.root + 1;
  });
}

sc_status sc_config_new(sc_config** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new sc_config;
  });
}

void sc_config_free(sc_config* cfg) { delete cfg; }

sc_status sc_config_set_class(sc_config* cfg, const char* name) {
  return guarded([&] {
    require(cfg && name, "null argument");
    cfg->cfg.class_name = subcrit::make_class(name).name();
  });
}

sc_status sc_config_set_n(sc_config* cfg, int n) {
  return guarded([&] {
    require(cfg, "null argument");
    require(n >= 1, "n must be >= 1");
    cfg->cfg.n = n;
  });
}

sc_status sc_config_set_m(sc_config* cfg, long m) {
  return guarded([&] {
    require(cfg, "null argument");
    require(m >= 1, "m must be >= 1");
    cfg->cfg.m = m;
  });
}

sc_status sc_config_set_seed(sc_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg, "null argument");
    cfg->cfg.seed = seed;
  });
}

sc_status sc_config_set_workers(sc_config* cfg, int workers) {
  return guarded([&] {
    require(cfg, "null argument");
    require(workers >= 1, "workers must be >= 1");
    cfg->cfg.workers = workers;
  });
}

sc_status sc_config_set_statistic(sc_config* cfg, const char* statistic) {
  return guarded([&] {
    require(cfg && statistic, "null argument");
    const auto s = subcrit::parse_statistic(statistic);
    require(s.has_value(), "statistic must be height, diameter or both");
    cfg->cfg.statistic = *s;
  });
}

sc_status sc_config_set_method(sc_config* cfg, const char* method) {
  return guarded([&] {
    require(cfg && method, "null argument");
    cfg->cfg.method = method_of(method);
  });
}

sc_status sc_config_set_weights(sc_config* cfg, const char* weights) {
  return guarded([&] {
    require(cfg, "null argument");
    if (!weights) {
      cfg->cfg.weights.reset();
      return;
    }
    subcrit::WeightDistribution::parse(weights);
    cfg->cfg.weights = weights;
  });
}

sc_status sc_config_set_output(sc_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg, "null argument");
    cfg->cfg.output = path ? path : "";
  });
}

sc_status sc_config_set_kappa_draws(sc_config* cfg, long draws) {
  return guarded([&] {
    require(cfg, "null argument");
    require(draws >= 2, "kappa draws must be >= 2");
    cfg->cfg.kappa_draws = draws;
  });
}

sc_status sc_run(const sc_config* cfg, sc_run_kind kind, sc_report** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    auto r = std::make_unique<sc_report>();
    switch (kind) {
      case SC_RUN_CONVERGENCE: r->report = subcrit::run_convergence(cfg->cfg); break;
      case SC_RUN_TAILS: r->report = subcrit::run_tails(cfg->cfg); break;
      case SC_RUN_FPP: r->report = subcrit::run_fpp(cfg->cfg); break;
      default: require(false, "unknown run kind");
    }
    *out = r.release();
  });
}

sc_status sc_report_parse_csv(const char* text, sc_report** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new sc_report{subcrit::parse_csv(text)};
  });
}

void sc_report_free(sc_report* report) { delete report; }

long sc_report_size(const sc_report* report) {
  return report ? static_cast<long>(report->report.records.size()) : 0;
}

sc_status sc_report_record(const sc_report* report, long index, sc_record* out) {
  return guarded([&] {
    require(report && out, "null argument");
    require(index >= 0 && index < sc_report_size(report), "record index out of range");
    const auto& r = report->report.records[static_cast<std::size_t>(index)];
    *out = {r.index, r.n, r.height, r.diameter, r.largest_block, r.seconds};
  });
}

sc_status sc_report_csv(const sc_report* report, sc_buffer** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = make_buffer(subcrit::emit_csv(report->report));
  });
}

sc_status sc_report_summary_json(const sc_report* report, sc_buffer** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = make_buffer(subcrit::summary_json(report->report) + "\n");
  });
}

int sc_report_same_samples(const sc_report* a, const sc_report* b) {
  return a && b && a->report.same_samples(b->report) ? 1 : 0;
}

sc_status sc_law_sf(sc_law law, double x, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = subcrit::law_sf(law_kind(law), x);
  });
}

sc_status sc_law_moment(sc_law law, int k, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = subcrit::law_moment(law_kind(law), k);
  });
}

sc_status sc_law_quantile(sc_law law, double p, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = subcrit::law_quantile(law_kind(law), p);
  });
}

void sc_verify_options_default(sc_verify_options* out) {
  if (!out) return;
  const subcrit::VerifyOptions d;
  *out = {d.quick ? 1 : 0, d.seed, d.workers, d.kappa_multiplier};
}

sc_status sc_verify(const sc_verify_options* options, const int* only, size_t only_count,
                    sc_verify_callback callback, void* user, sc_buffer** report, int* passed) {
  return guarded([&] {
    require(options && report && passed, "null argument");
    require(only || only_count == 0, "null criteria list");
    subcrit::VerifyOptions o;
    o.quick = options->quick != 0;
    o.seed = options->seed;
    o.workers = options->workers;
    o.kappa_multiplier = options->kappa_multiplier;
    o.only.assign(only, only + only_count);
    subcrit::VerifyProgress progress;
    if (callback) {
      progress = [&](const subcrit::CriterionResult& r) {
        callback(r.id, r.pass ? 1 : 0, subcrit::criterion_line(r).c_str(), r.seconds, user);
      };
    }
    const auto rep = subcrit::run_verify(o, progress);
    *report = make_buffer(rep.text());
    *passed = rep.all_pass() ? 1 : 0;
  });
}

}  // extern "C"

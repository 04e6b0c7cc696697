#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subcrit/subcrit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Failure {
  sc_status status;
};

void check(sc_status s) {
  if (s != SC_OK) throw Failure{s};
}

// Owning wrappers for the C handles.
struct Buffer {
  sc_buffer* p = nullptr;
  ~Buffer() { sc_buffer_free(p); }
  std::string str() const { return std::string(sc_buffer_data(p), sc_buffer_size(p)); }
};

struct Class {
  sc_class* p = nullptr;
  explicit Class(const std::string& name) { check(sc_class_open(name.c_str(), &p)); }
  ~Class() { sc_class_free(p); }
};

struct Config {
  sc_config* p = nullptr;
  Config() { check(sc_config_new(&p)); }
  ~Config() { sc_config_free(p); }
};

struct Report {
  sc_report* p = nullptr;
  ~Report() { sc_report_free(p); }
};

void print(const std::string& s) { std::fwrite(s.data(), 1, s.size(), stdout); }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBCRIT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    std::fprintf(stderr, "warning: ignoring malformed SUBCRIT_SEED '%s'\n", env);
  }
  sc_verify_options o;
  sc_verify_options_default(&o);
  return o.seed;
}

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct ExperimentArgs {
  std::string cls = "trees";
  int n = 1000;
  long m = 100;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string statistic = "both";
  std::string method = "tree_first";
  std::string weights;
  std::string output;
  long kappa_draws = 100000;
};

void add_experiment_options(CLI::App* cmd, ExperimentArgs& a, bool fpp) {
  cmd->add_option("class", a.cls, "graph class")->required();
  cmd->add_option("-n,--n", a.n, "vertices per graph")->check(CLI::PositiveNumber);
  cmd->add_option("-m,--m", a.m, "number of samples")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "random seed (default: SUBCRIT_SEED or built-in)");
  cmd->add_option("--workers", a.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--statistic", a.statistic, "height, diameter or both")
      ->check(CLI::IsMember({"height", "diameter", "both"}));
  cmd->add_option("--method", a.method, "tree_first or rejection")->check(CLI::IsMember({"tree_first", "rejection"}));
  cmd->add_option("-o,--output", a.output, "per-sample CSV file");
  if (fpp) {
    cmd->add_option("--weights", a.weights, "constant:c, uniform:a,b, exp:rate or geometric:p")->required();
    cmd->add_option("--kappa-draws", a.kappa_draws, "block draws for the scaling factor")
        ->check(CLI::Range(2L, 1000000000L));
  }
}

int run_experiment(const ExperimentArgs& a, sc_run_kind kind) {
  Config cfg;
  check(sc_config_set_class(cfg.p, a.cls.c_str()));
  check(sc_config_set_n(cfg.p, a.n));
  check(sc_config_set_m(cfg.p, a.m));
  check(sc_config_set_seed(cfg.p, a.seed));
  check(sc_config_set_workers(cfg.p, a.workers));
  check(sc_config_set_statistic(cfg.p, a.statistic.c_str()));
  check(sc_config_set_method(cfg.p, a.method.c_str()));
  check(sc_config_set_output(cfg.p, a.output.c_str()));
  if (kind == SC_RUN_FPP) {
    check(sc_config_set_weights(cfg.p, a.weights.c_str()));
    check(sc_config_set_kappa_draws(cfg.p, a.kappa_draws));
  }
  Report rep;
  check(sc_run(cfg.p, kind, &rep.p));
  Buffer json;
  check(sc_report_summary_json(rep.p, &json.p));
  print(json.str());
  return kExitOk;
}

void verify_progress(int, int, const char* line, double seconds, void*) {
  std::fprintf(stderr, "%s  (%.1f s)\n", line, seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and exact computation for subcritical graph classes"};
  app.require_subcommand(1);
  const std::uint64_t seed0 = default_seed();

  bool json = false;
  std::string const_class;
  auto* constants = app.add_subcommand("constants", "constants of one class, or all beside the published table");
  constants->add_option("class", const_class, "graph class (default: all)");
  constants->add_flag("--json", json, "emit JSON");

  std::string cls;
  int order = 32;
  bool exact = false;
  auto* series = app.add_subcommand("series", "coefficients of the rooted connected series");
  series->add_option("class", cls, "graph class")->required();
  series->add_option("--order", order, "number of coefficients")->check(CLI::Range(1, 100000));
  series->add_flag("--exact", exact, "exact rational arithmetic");

  int n = 100, count = 1;
  std::uint64_t seed = seed0;
  std::string method = "tree_first", weights, format = "edgelist";
  auto* sample = app.add_subcommand("sample", "uniform random connected graphs");
  sample->add_option("class", cls, "graph class")->required();
  sample->add_option("-n,--size", n, "vertices")->check(CLI::PositiveNumber);
  sample->add_option("--count", count, "number of graphs (streams 0..count-1)")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "random seed");
  sample->add_option("--method", method, "tree_first or rejection")->check(CLI::IsMember({"tree_first", "rejection"}));
  sample->add_option("--weights", weights, "edge weight distribution");
  sample->add_option("--format", format, "edgelist or json")->check(CLI::IsMember({"edgelist", "json"}));

  ExperimentArgs conv_args, tail_args, fpp_args;
  conv_args.seed = tail_args.seed = fpp_args.seed = seed0;
  conv_args.workers = tail_args.workers = fpp_args.workers = default_workers();
  tail_args.statistic = "height";
  fpp_args.statistic = "diameter";
  auto* convergence = app.add_subcommand("convergence", "rescaled height and diameter of uniform graphs");
  add_experiment_options(convergence, conv_args, false);
  auto* tails = app.add_subcommand("tails", "tail fits of the height and diameter");
  add_experiment_options(tails, tail_args, false);
  auto* fpp = app.add_subcommand("fpp", "first passage percolation distances");
  add_experiment_options(fpp, fpp_args, true);

  int max_n = 12, brute = 6;
  auto* counts = app.add_subcommand("counts", "exact counts against the asymptotic formula");
  counts->add_option("class", cls, "graph class")->required();
  counts->add_option("--max-n", max_n, "largest n")->check(CLI::Range(1, 400));
  counts->add_option("--brute-force", brute, "enumerate up to this n")->check(CLI::Range(0, 7));

  std::string law;
  std::vector<double> xs;
  int moments = 0;
  auto* law_cmd = app.add_subcommand("law", "survival function of a limit law");
  law_cmd->add_option("law", law, "height or diameter")->required()->check(CLI::IsMember({"height", "diameter"}));
  law_cmd->add_option("--x", xs, "points (comma separated)")->delimiter(',');
  law_cmd->add_option("--moments", moments, "also print moments 1..k")->check(CLI::Range(0, 16));

  bool quick = false;
  int vworkers = default_workers();
  double kappa_multiplier = 1.0;
  std::vector<int> only;
  std::uint64_t vseed = seed0;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", quick, "reduced sample sizes and looser tolerances");
  verify->add_option("--seed", vseed, "random seed");
  verify->add_option("--workers", vworkers, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--kappa-multiplier", kappa_multiplier, "perturb kappa (fault injection)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--only", only, "criteria to run (comma separated)")->delimiter(',')->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*constants) {
      if (const_class.empty()) {
        Buffer b;
        check(sc_constants_table(json ? 1 : 0, &b.p));
        print(b.str());
        return kExitOk;
      }
      Class c(const_class);
      sc_constants k;
      check(sc_class_constants(c.p, &k));
      if (json) {
        const nlohmann::json j{{"class", sc_class_name(c.p)}, {"y", k.y}, {"rho", k.rho}, {"lambda", k.lambda},
                               {"sigma2", k.sigma2}, {"kappa", k.kappa}, {"H", k.H}, {"c", k.c}, {"span", k.span}};
        print(j.dump(2) + "\n");
      } else {
        std::printf("%-8s %s\n", "class", sc_class_name(c.p));
        const std::pair<const char*, double> rows[] = {{"y", k.y},           {"rho", k.rho},     {"lambda", k.lambda},
                                                       {"sigma2", k.sigma2}, {"kappa", k.kappa}, {"H", k.H},
                                                       {"c", k.c}};
        for (const auto& [name, v] : rows) std::printf("%-8s %.12g\n", name, v);
        std::printf("%-8s %d\n", "span", k.span);
      }
      return kExitOk;
    }
    if (*series) {
      Class c(cls);
      Buffer b;
      check(sc_series_csv(c.p, order, exact ? 1 : 0, &b.p));
      print(b.str());
      return kExitOk;
    }
    if (*sample) {
      Class c(cls);
      for (int i = 0; i < count; ++i) {
        Buffer b;
        int root = 0;
        check(sc_sample_graph(c.p, n, seed, static_cast<std::uint64_t>(i), method.c_str(),
                              weights.empty() ? nullptr : weights.c_str(),
                              format == "json" ? SC_FORMAT_JSON : SC_FORMAT_EDGES, &b.p, &root));
        if (format == "edgelist") std::printf("# graph %d root %d\n", i, root);
        print(b.str());
      }
      return kExitOk;
    }
    if (*convergence) return run_experiment(conv_args, SC_RUN_CONVERGENCE);
    if (*tails) return run_experiment(tail_args, SC_RUN_TAILS);
    if (*fpp) return run_experiment(fpp_args, SC_RUN_FPP);
    if (*counts) {
      Class c(cls);
      Buffer b;
      check(sc_counts_csv(c.p, max_n, brute, &b.p));
      print(b.str());
      return kExitOk;
    }
    if (*law_cmd) {
      const sc_law kind = law == "height" ? SC_LAW_HEIGHT : SC_LAW_DIAMETER;
      std::printf("x,sf\n");
      for (double x : xs) {
        double v = 0;
        check(sc_law_sf(kind, x, &v));
        std::printf("%.17g,%.17g\n", x, v);
      }
      if (moments > 0) {
        std::printf("k,moment\n");
        for (int k = 1; k <= moments; ++k) {
          double v = 0;
          check(sc_law_moment(kind, k, &v));
          std::printf("%d,%.17g\n", k, v);
        }
      }
      return kExitOk;
    }
    if (*verify) {
      sc_verify_options o;
      sc_verify_options_default(&o);
      o.quick = quick ? 1 : 0;
      o.seed = vseed;
      o.workers = vworkers;
      o.kappa_multiplier = kappa_multiplier;
      Buffer b;
      int passed = 0;
      check(sc_verify(&o, only.data(), only.size(), verify_progress, nullptr, &b.p, &passed));
      print(b.str());
      return passed ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", sc_last_error());
    return f.status == SC_INTERNAL_ERROR ? kExitInternal : kExitUsage;
  }
  return kExitUsage;
}

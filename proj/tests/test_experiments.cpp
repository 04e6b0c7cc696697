#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "subcrit/experiments.hpp"
#include "subcrit/verify.hpp"

using namespace subcrit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig config(const std::string& cls, int n, long m) {
  ExperimentConfig cfg;
  cfg.class_name = cls;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("statistic names") {
  for (auto s : {Statistic::Height, Statistic::Diameter, Statistic::Both})
    CHECK(parse_statistic(statistic_name(s)) == s);
  CHECK_FALSE(parse_statistic("girth").has_value());
}

TEST_CASE("CSV round trip") {
  auto cfg = config("cacti", 200, 40);
  const auto r = run_convergence(cfg);
  CHECK(r.records.size() == 40);
  const auto back = parse_csv(emit_csv(r));
  CHECK(back == r);
  CHECK(emit_csv(back) == emit_csv(r));
  CHECK(back.summary.ks_height == r.summary.ks_height);

  cfg.weights = "uniform:0.5,1.5";
  cfg.kappa_draws = 2000;
  const auto f = run_fpp(cfg);
  CHECK(f.weights == "uniform:0.5,1.5");
  CHECK(parse_csv(emit_csv(f)) == f);
}

TEST_CASE("CSV parse errors") {
  for (const char* bad : {"", "index,n\n", "# schema=2\n", "# schema=1\n# class=trees n=x\n"}) {
    try {
      parse_csv(bad);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  auto text = emit_csv(run_convergence(config("trees", 10, 3)));
  text += "7,10,abc,1,2,0\n";
  CHECK_THROWS_AS(parse_csv(text), Error);
}

TEST_CASE("single-vertex graphs have zero height and diameter") {
  const auto r = run_convergence(config("outerplanar", 1, 5));
  for (const auto& rec : r.records) {
    CHECK(rec.height == 0);
    CHECK(rec.diameter == 0);
  }
  auto cfg = config("cacti", 1, 3);
  cfg.weights = "exp:1";
  cfg.kappa_draws = 100;
  for (const auto& rec : run_fpp(cfg).records) CHECK(rec.diameter == 0);
}

TEST_CASE("tail fits") {
  TailFit none = fit_tail({1, 1, 1, 1}, 10);
  CHECK(none.degenerate);
  CHECK(fit_tail({}, 10).degenerate);

  std::mt19937_64 gen(3);
  std::normal_distribution<double> z;
  const int n = 400;
  std::vector<double> v(200000);
  for (auto& x : v) x = std::abs(z(gen)) * std::sqrt(double(n));
  const auto fit = fit_tail(v, n);
  CHECK_FALSE(fit.degenerate);
  CHECK(fit.r2 > 0.98);
  CHECK(fit.slope < -0.4);
  CHECK(fit.slope > -0.7);
  const auto lower = fit_tail(v, n, true);
  CHECK_FALSE(lower.degenerate);
}

TEST_CASE("reports do not depend on the worker count") {
  auto cfg = config("cacti", 300, 50);
  cfg.workers = 1;
  const auto a = run_convergence(cfg);
  cfg.workers = 4;
  const auto b = run_convergence(cfg);
  CHECK(a.same_samples(b));
  const auto& cs = ClassSampler(make_class("forb_c5"));
  const auto k1 = estimate_kappa(cs, 10000, 4, 9, 1);
  const auto k3 = estimate_kappa(cs, 10000, 4, 9, 3);
  CHECK(k1.mean == k3.mean);
  CHECK(k1.se == k3.se);
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 3, [&](long i) { hits[i]++; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 2, [](long i) {
                    if (i == 7) throw Error(ErrorCode::InvalidArgument, "boom");
                  }),
                  Error);
}

TEST_CASE("streamed CSV equals the report") {
  const auto path = (std::filesystem::temp_directory_path() / "subcrit_stream_test.csv").string();
  auto cfg = config("forb_c4", 150, 30);
  cfg.workers = 3;
  cfg.output = path;
  const auto r = run_tails(cfg);
  CHECK(slurp(path) == emit_csv(r));
  std::filesystem::remove(path);
}

TEST_CASE("experiment configuration errors") {
  auto cfg = config("nope", 10, 1);
  CHECK_THROWS_AS(run_convergence(cfg), Error);
  cfg = config("forb_c4", 10, 1);
  cfg.statistic = Statistic::Height;
  CHECK_THROWS_AS(run_fpp(cfg), Error);
  cfg = config("trees", 10, 0);
  CHECK_THROWS_AS(run_convergence(cfg), Error);
}

TEST_CASE("exact counts") {
  CHECK(exact_counts(make_class("trees"), 4)[4] == 16);
  CHECK(exact_counts(make_class("forb_c4"), 3)[3] == 4);
  CHECK(exact_counts(make_class("cacti"), 8)[8] == 2666392);
  const auto rows = run_counts(make_class("trees"), 40, 0);
  CHECK(rows.back().ratio == doctest::Approx(1.0).epsilon(0.05));
  for (const auto& name : class_names()) {
    const auto r = run_counts(make_class(name), 6, 6);
    for (const auto& row : r) {
      INFO(name << " n=" << row.n);
      REQUIRE(row.brute_force.has_value());
      CHECK(BigInt(*row.brute_force) == row.exact);
    }
  }
  CHECK_THROWS_AS(enumerate_class(make_class("trees"), 8), Error);
}

TEST_CASE("verify: injected kappa fault is caught") {
  VerifyOptions opt;
  opt.quick = true;
  opt.only = {2};
  opt.kappa_multiplier = 1.01;
  const auto bad = run_verify(opt);
  REQUIRE(bad.results.size() == 1);
  CHECK_FALSE(bad.results[0].pass);
  opt.kappa_multiplier = 1.0;
  const auto good = run_verify(opt);
  CHECK(good.results[0].pass);
}

TEST_CASE("verify: quick report text is deterministic") {
  VerifyOptions opt;
  opt.quick = true;
  opt.only = {1, 3, 5};
  const auto a = run_verify(opt);
  opt.workers = 2;
  const auto b = run_verify(opt);
  CHECK(a.text() == b.text());
  CHECK(a.all_pass());
  CHECK(criterion_line(a.results[0]).rfind("criterion 1 PASS", 0) == 0);
}

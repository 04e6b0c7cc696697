#include "subcrit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "subcrit/constants.hpp"
#include "subcrit/error.hpp"
#include "subcrit/experiments.hpp"
#include "subcrit/limits.hpp"
#include "subcrit/samplers.hpp"

namespace subcrit {

namespace {

// Reference values of the published table and of the limit laws.
constexpr double kTableTol = 2e-4;
constexpr double kIdentityTol = 1e-10;
constexpr double kPublishedES = 5.46545;
constexpr double kMeanDiameter = 1.67109;
constexpr double kMeanHeight = 1.25331;

template <class... Args>
std::string format(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string pass_word(bool ok) { return ok ? "ok" : "FAIL"; }

ConstantSet tampered_constants(const ClassSpec& spec, double kappa_multiplier) {
  ConstantSet c = constant_set(spec);
  c.kappa *= kappa_multiplier;
  return c;
}

struct Scale {
  bool quick;
  template <class T>
  T pick(T full, T reduced) const {
    return quick ? reduced : full;
  }
};

class Context {
 public:
  explicit Context(const VerifyOptions& o) : opt(o), scale{o.quick} {}

  const ClassSampler& sampler(const std::string& name) {
    auto it = samplers_.find(name);
    if (it == samplers_.end()) it = samplers_.emplace(name, ClassSampler(make_class(name))).first;
    return it->second;
  }

  const VerifyOptions& opt;
  Scale scale;

 private:
  std::map<std::string, ClassSampler> samplers_;
};

// 1. Constants table.
void constants_criterion(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  int checked = 0, flagged = 0;
  for (const auto& row : published_constants()) {
    const auto spec = make_class(row.name);
    const auto cs = tampered_constants(spec, ctx.opt.kappa_multiplier);
    const auto mine = as_published_columns(cs);
    const double id_y = std::abs(cs.y * spec.b2(cs.y) - 1.0);
    const double id_rho = std::abs(cs.rho - cs.y * std::exp(-spec.b1(cs.y)));
    const double id_lambda = std::abs(cs.lambda - spec.b1(cs.y));
    for (std::size_t k = 0; k < mine.size(); ++k) {
      const double delta = std::abs(mine[k] - row.value[k]);
      if (row.trusted[k]) {
        ++checked;
        if (delta > kTableTol) {
          ok = false;
          r.details.push_back(format("%s %s: computed %.6f, published %.6f, |delta| %.2e > %.0e", row.name.c_str(),
                                     kPublishedColumns[k], mine[k], row.value[k], delta, kTableTol));
        }
      } else {
        ++flagged;
        const bool ids = id_y <= kIdentityTol && id_rho <= kIdentityTol && id_lambda <= kIdentityTol;
        ok = ok && ids;
        r.details.push_back(format("%s %s: paper-inconsistent (published %.5f, computed %.6f); identities y B''(y)=1 "
                                   "%.1e, rho=y exp(-B'(y)) %.1e, lambda=B'(y) %.1e: %s",
                                   row.name.c_str(), kPublishedColumns[k], row.value[k], mine[k], id_y, id_rho,
                                   id_lambda, pass_word(ids).c_str()));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ctx.scale.quick && secs >= 1.0) {
    ok = false;
    r.details.push_back("runtime budget of 1 s exceeded");
  }
  r.details.insert(r.details.begin(),
                   format("%d trusted cells within %.0e, %d flagged cells checked by identities", checked, kTableTol,
                          flagged));
  r.pass = ok;
}

// 2. kappa by Monte Carlo.
void kappa_criterion(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const long draws = ctx.scale.pick(1000000L, 100000L);
  bool ok = true;
  std::uint64_t tag = 0x200;
  for (const auto& name : class_names()) {
    const auto& cs = ctx.sampler(name);
    const double kappa = cs.constants().kappa * ctx.opt.kappa_multiplier;
    const auto est = estimate_kappa(cs, draws, ctx.opt.seed, tag++, ctx.opt.workers);
    const double z = est.se > 0 ? std::abs(est.mean - kappa) / est.se : (est.mean == kappa ? 0.0 : INFINITY);
    const bool pass = est.se > 0 ? z <= 3.0 : std::abs(est.mean - kappa) <= 1e-12;
    ok = ok && pass;
    r.details.push_back(format("%s: analytic %.6f, MC %.6f (SE %.2e, %ld draws), %.2f SE: %s", name.c_str(), kappa,
                               est.mean, est.se, draws, z, pass_word(pass).c_str()));
  }
  const double es = outerplanar_expected_s(outerplanar_ba(constant_set(make_class("outerplanar")).y));
  const bool es_ok = std::abs(es - kPublishedES) <= 1e-4;
  ok = ok && es_ok;
  r.details.push_back(format("outerplanar E[S] = %.6f vs %.5f: %s", es, kPublishedES, pass_word(es_ok).c_str()));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ctx.scale.quick && secs >= 120.0) {
    ok = false;
    r.details.push_back("runtime budget of 2 min exceeded");
  }
  r.pass = ok;
}

// 3. Exact counts against enumeration.
void counts_criterion(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const int brute = 5;
  bool ok = true;
  for (const auto& name : class_names()) {
    const auto spec = make_class(name);
    const auto exact = exact_counts(spec, brute);
    std::string line = name + ":";
    bool pass = true;
    for (int n = 1; n <= brute; ++n) {
      const auto enumerated = enumerate_class(spec, n).size();
      pass = pass && exact[n] == BigInt(enumerated);
      line += format(" %d", static_cast<int>(enumerated));
    }
    ok = ok && pass;
    r.details.push_back(line + " (enumerated, n=1.." + std::to_string(brute) + "): " + pass_word(pass));
  }
  const auto trees = exact_counts(make_class("trees"), 12);
  bool cayley = true;
  for (int n = 1; n <= 12; ++n) cayley = cayley && BigInt(n) * trees[n] == boost::multiprecision::pow(BigInt(n), n - 1);
  ok = ok && cayley;
  r.details.push_back("trees: n |C_n| = n^(n-1) for n <= 12: " + pass_word(cayley));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ctx.scale.quick && secs >= 120.0) {
    ok = false;
    r.details.push_back("runtime budget of 2 min exceeded");
  }
  r.pass = ok;
}

std::vector<double> diameters(const ClassSampler& cs, int n, long m, UniformMethod method, std::uint64_t seed,
                              std::uint64_t tag, int workers) {
  std::vector<double> out(static_cast<std::size_t>(m));
  parallel_for(m, workers, [&](long i) {
    Rng rng(seed, sample_stream(tag, static_cast<std::uint64_t>(i)));
    out[i] = diameter(sample_uniform_cn(cs, n, rng, method, false).graph);
  });
  std::sort(out.begin(), out.end());
  return out;
}

// 4. Uniformity of the samplers.
void uniformity_criterion(Context& ctx, CriterionResult& r) {
  const long samples = ctx.scale.pick(100000L, 20000L);
  bool ok = true;
  std::uint64_t tag = 0x400;
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{{"forb_c4", 4}, {"cacti", 5}}) {
    const auto& cs = ctx.sampler(name);
    const auto all = enumerate_class(cs.spec(), n);
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
    for (auto method : {UniformMethod::TreeFirst, UniformMethod::Rejection}) {
      std::vector<std::size_t> cell(static_cast<std::size_t>(samples));
      std::vector<char> member(static_cast<std::size_t>(samples), 1);
      const std::uint64_t t = tag++;
      parallel_for(samples, ctx.opt.workers, [&](long i) {
        Rng rng(ctx.opt.seed, sample_stream(t, static_cast<std::uint64_t>(i)));
        const auto it = index.find(edge_mask(sample_uniform_cn(cs, n, rng, method).graph));
        if (it == index.end()) member[i] = 0;
        else cell[i] = it->second;
      });
      std::vector<long> observed(all.size(), 0);
      bool members = true;
      for (long i = 0; i < samples; ++i) {
        if (member[i]) ++observed[cell[i]];
        else members = false;
      }
      const std::vector<double> p(all.size(), 1.0 / static_cast<double>(all.size()));
      const auto chi = chi_square_test(observed, p);
      const bool pass = members && chi.p_value > 1e-3;
      ok = ok && pass;
      r.details.push_back(format("%s n=%d %s: %zu graphs, %ld samples, chi2 %.2f on %d dof, p %.4f: %s", name.c_str(),
                                 n, method == UniformMethod::TreeFirst ? "tree_first" : "rejection", all.size(),
                                 samples, chi.statistic, chi.dof, chi.p_value, pass_word(pass).c_str()));
    }
  }
  const long ks_m = ctx.scale.pick(10000L, 2000L);
  for (const auto& name : class_names()) {
    const auto& cs = ctx.sampler(name);
    const auto a = diameters(cs, 20, ks_m, UniformMethod::TreeFirst, ctx.opt.seed, tag++, ctx.opt.workers);
    const auto b = diameters(cs, 20, ks_m, UniformMethod::Rejection, ctx.opt.seed, tag++, ctx.opt.workers);
    const double d = ks_two_sample(a, b);
    const double p = ks_two_sample_pvalue(d, a.size(), b.size());
    const bool pass = p > 1e-3;
    ok = ok && pass;
    r.details.push_back(format("%s n=20 diameter tree_first vs rejection: D %.4f, p %.4f (%ld each): %s",
                               name.c_str(), d, p, ks_m, pass_word(pass).c_str()));
  }
  r.pass = ok;
}

// 5. Local limit for the Galton-Watson size.
void gw_criterion(Context& ctx, CriterionResult& r) {
  const int n = 1000;
  bool ok = true;
  for (const auto& name : class_names()) {
    const auto& cs = ctx.sampler(name);
    const double p = gw_size_probability(cs.offspring().pmf(), n, 1024);
    const double lhs = p * std::pow(n, 1.5);
    const double rhs = cs.constants().span / std::sqrt(2 * std::numbers::pi * cs.constants().sigma2);
    const double rel = std::abs(lhs / rhs - 1.0);
    const bool pass = rel <= 0.05;
    ok = ok && pass;
    r.details.push_back(format("%s: P(|T|=%d) n^1.5 = %.6f, d/sqrt(2 pi sigma2) = %.6f, rel %.4f: %s", name.c_str(),
                               n, lhs, rhs, rel, pass_word(pass).c_str()));
  }
  r.pass = ok;
}

// 6. Convergence of the rescaled height and diameter.
void convergence_criterion(Context& ctx, CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const double tol = ctx.scale.pick(0.10, 0.15);
  const double ks_max = ctx.scale.pick(0.08, 0.12);
  bool ok = true;
  std::uint64_t tag = 0x600;
  for (const char* name : {"trees", "cacti"}) {
    ExperimentConfig cfg;
    cfg.class_name = name;
    cfg.n = 10000;
    cfg.m = ctx.scale.pick(2000L, 300L);
    cfg.seed = ctx.opt.seed;
    cfg.workers = ctx.opt.workers;
    cfg.tag = tag++;
    const auto rep = run_convergence(cfg, ctx.sampler(name));
    const auto& s = rep.summary;
    const double dd = std::abs(s.rescaled_mean_diameter / kMeanDiameter - 1.0);
    const double dh = std::abs(s.rescaled_mean_height / kMeanHeight - 1.0);
    const double dr = std::abs(s.ratio / (4.0 / 3.0) - 1.0);
    const bool pass = dd <= tol && dh <= tol && dr <= tol && s.ks_height <= ks_max && s.ks_diameter <= ks_max;
    ok = ok && pass;
    r.details.push_back(format("%s n=%d m=%ld: diameter %.4f (rel %.3f), height %.4f (rel %.3f), ratio %.4f "
                               "(rel %.3f), KS height %.4f, KS diameter %.4f: %s",
                               name, cfg.n, cfg.m, s.rescaled_mean_diameter, dd, s.rescaled_mean_height, dh, s.ratio,
                               dr, s.ks_height, s.ks_diameter, pass_word(pass).c_str()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ctx.scale.quick && secs >= 600.0) {
    ok = false;
    r.details.push_back("runtime budget of 10 min exceeded");
  }
  r.pass = ok;
}

// 7. Gaussian-type tails of the height.
void tails_criterion(Context& ctx, CriterionResult& r) {
  const double r2_min = ctx.scale.pick(0.95, 0.90);
  bool ok = true;
  std::uint64_t tag = 0x700;
  for (const char* name : {"trees", "forb_c4"}) {
    ExperimentConfig cfg;
    cfg.class_name = name;
    cfg.n = ctx.scale.pick(4096, 1024);
    cfg.m = ctx.scale.pick(100000L, 10000L);
    cfg.seed = ctx.opt.seed;
    cfg.workers = ctx.opt.workers;
    cfg.statistic = Statistic::Height;
    cfg.tag = tag++;
    const auto rep = run_tails(cfg, ctx.sampler(name));
    const auto& f = rep.summary.height_tail;
    const bool pass = !f.degenerate && f.slope < 0 && f.r2 > r2_min;
    ok = ok && pass;
    r.details.push_back(format("%s n=%d m=%ld: log sf vs h^2/n slope %.4f, R^2 %.4f over %d points: %s", name, cfg.n,
                               cfg.m, f.slope, f.r2, f.points, pass_word(pass).c_str()));
  }
  r.pass = ok;
}

// 8. First passage percolation reductions.
void fpp_criterion(Context& ctx, CriterionResult& r) {
  const auto& cs = ctx.sampler("cacti");
  bool ok = true;
  ExperimentConfig cfg;
  cfg.class_name = "cacti";
  cfg.n = ctx.scale.pick(2000, 1000);
  cfg.m = ctx.scale.pick(2000L, 500L);
  cfg.seed = ctx.opt.seed;
  cfg.workers = ctx.opt.workers;
  cfg.kappa_draws = ctx.scale.pick(1000000L, 100000L);
  cfg.tag = 0x800;
  const auto plain = run_convergence(cfg, cs);
  cfg.tag = 0x801;
  cfg.weights = "constant:1";
  const auto unit = run_fpp(cfg, cs);
  for (int which = 0; which < 2; ++which) {
    auto a = which ? plain.rescaled_diameters() : plain.rescaled_heights();
    auto b = which ? unit.rescaled_diameters() : unit.rescaled_heights();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double d = ks_two_sample(a, b);
    const double p = ks_two_sample_pvalue(d, a.size(), b.size());
    const bool pass = p > 1e-3;
    ok = ok && pass;
    r.details.push_back(format("cacti n=%d m=%ld constant:1 vs unweighted rescaled %s: D %.4f, p %.4f: %s", cfg.n,
                               cfg.m, which ? "diameter" : "height", d, p, pass_word(pass).c_str()));
  }
  const auto two = WeightDistribution::parse("constant:2");
  const auto est = estimate_kappa(cs, cfg.kappa_draws, ctx.opt.seed, 0x802, ctx.opt.workers, &two);
  const double target = 2.0 * cs.constants().kappa;
  const double z = std::abs(est.mean - target) / est.se;
  const bool pass = z <= 3.0;
  ok = ok && pass;
  r.details.push_back(format("cacti constant:2 kappa-hat %.6f (SE %.2e) vs 2 kappa %.6f, %.2f SE: %s", est.mean,
                             est.se, target, z, pass_word(pass).c_str()));
  r.pass = ok;
}

// 9. Size-biased identity sum_ell P(|A^(ell)| = n) = n P(|A| = n).
void size_biased_criterion(Context& ctx, CriterionResult& r) {
  const int n = 9;
  const long runs = ctx.scale.pick(1000000L, 100000L);
  bool ok = true;
  std::uint64_t tag = 0x900;
  for (const auto& name : class_names()) {
    const auto& cs = ctx.sampler(name);
    // Left: ell uniform on 0..n-1, so n * indicator is unbiased for the sum.
    std::vector<char> left(static_cast<std::size_t>(runs)), right(static_cast<std::size_t>(runs));
    const std::uint64_t tl = tag++, tr = tag++;
    parallel_for(runs, ctx.opt.workers, [&](long i) {
      Rng a(ctx.opt.seed, sample_stream(tl, static_cast<std::uint64_t>(i)));
      const int ell = static_cast<int>(a.below(n));
      left[i] = sample_size_biased_size(cs, ell, a, n) == n;
      Rng b(ctx.opt.seed, sample_stream(tr, static_cast<std::uint64_t>(i)));
      const auto g = sample_boltzmann_pointed(cs, b, n, false);
      right[i] = g && g->graph.vertex_count() == n;
    });
    const double m = static_cast<double>(runs);
    const double pl = std::count(left.begin(), left.end(), 1) / m;
    const double pr = std::count(right.begin(), right.end(), 1) / m;
    const double lhs = n * pl, rhs = n * pr;
    const double se = n * std::sqrt(pl * (1 - pl) / m + pr * (1 - pr) / m);
    const double z = se > 0 ? std::abs(lhs - rhs) / se : 0.0;
    const bool pass = z <= 3.0;
    ok = ok && pass;
    r.details.push_back(format("%s n=%d, %ld runs: sum_ell P = %.5f, n P(|A|=n) = %.5f, %.2f SE: %s", name.c_str(), n,
                               runs, lhs, rhs, z, pass_word(pass).c_str()));
  }
  r.pass = ok;
}

// 10. Reproducibility.
void reproducibility_criterion(Context& ctx, CriterionResult& r) {
  bool ok = true;
  if (!ctx.scale.quick) {
    VerifyOptions q = ctx.opt;
    q.quick = true;
    q.only = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto first = run_verify(q).text();
    const auto second = run_verify(q).text();
    const bool same = first == second;
    ok = ok && same;
    r.details.push_back(format("quick suite twice with seed %llu: %s", static_cast<unsigned long long>(ctx.opt.seed),
                               same ? "byte-identical reports" : "reports differ"));
  }
  ExperimentConfig cfg;
  cfg.class_name = "cacti";
  cfg.n = ctx.scale.pick(2000, 500);
  cfg.m = ctx.scale.pick(400L, 64L);
  cfg.seed = ctx.opt.seed;
  cfg.tag = 0xA00;
  cfg.workers = 1;
  const auto& cs = ctx.sampler("cacti");
  const auto a = run_convergence(cfg, cs);
  const auto a2 = run_convergence(cfg, cs);
  cfg.workers = 8;
  const auto b = run_convergence(cfg, cs);
  const bool same_csv = [&] {
    auto strip = [](SampleReport rep) {
      for (auto& rec : rep.records) rec.seconds = 0;
      return emit_csv(rep);
    };
    return strip(a) == strip(a2);
  }();
  const bool workers = a.same_samples(b) && a.summary.ks_diameter == b.summary.ks_diameter &&
                       a.summary.mean_height == b.summary.mean_height;
  const auto k1 = estimate_kappa(cs, 20000, ctx.opt.seed, 0xA01, 1);
  const auto k8 = estimate_kappa(cs, 20000, ctx.opt.seed, 0xA01, 8);
  const bool kappa_same = k1.mean == k8.mean && k1.se == k8.se;
  ok = ok && same_csv && workers && kappa_same;
  r.details.push_back(format("repeated run, records without timings: %s", same_csv ? "identical" : "differ"));
  r.details.push_back(format("cacti n=%d m=%ld, 1 vs 8 workers: %s", cfg.n, cfg.m,
                             workers ? "identical sample statistics" : "statistics differ"));
  r.details.push_back(format("kappa estimate, 1 vs 8 workers: %s", kappa_same ? "bit-identical" : "differs"));
  r.pass = ok;
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Context&, CriterionResult&);
};

constexpr Criterion kCriteria[] = {
    {1, "constants table", constants_criterion},
    {2, "kappa cross-validation", kappa_criterion},
    {3, "exact counts", counts_criterion},
    {4, "sampler exactness", uniformity_criterion},
    {5, "Galton-Watson size law", gw_criterion},
    {6, "convergence of height and diameter", convergence_criterion},
    {7, "tail bounds", tails_criterion},
    {8, "first passage percolation reductions", fpp_criterion},
    {9, "size-biased identity", size_biased_criterion},
    {10, "reproducibility", reproducibility_criterion},
};

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

std::string criterion_line(const CriterionResult& r) {
  return format("criterion %d %s %s", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str());
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  out << "verify mode=" << (options.quick ? "quick" : "full") << " seed=" << options.seed;
  if (options.kappa_multiplier != 1.0) out << format(" kappa_multiplier=%.6g", options.kappa_multiplier);
  out << "\n\n" << constants_table << "\n";
  for (const auto& r : results) {
    out << criterion_line(r) << "\n";
    for (const auto& d : r.details) out << "    " << d << "\n";
  }
  out << "\n" << (all_pass() ? "all criteria passed" : "some criteria FAILED") << "\n";
  return out.str();
}

VerifyReport run_verify(const VerifyOptions& options, const VerifyProgress& progress) {
  if (options.workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
  for (int id : options.only) {
    if (id < 1 || id > 10) throw Error(ErrorCode::InvalidArgument, "criteria are numbered 1..10");
  }
  VerifyReport report;
  report.options = options;
  report.constants_table = constants_table(false, options.kappa_multiplier);
  Context ctx(options);
  for (const auto& c : kCriteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(ctx, r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.details.push_back(std::string("error: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) progress(r);
    report.results.push_back(std::move(r));
  }
  return report;
}

std::string constants_table(bool json, double kappa_multiplier) {
  nlohmann::json doc = nlohmann::json::array();
  std::ostringstream out;
  out << format("%-12s %-7s %14s %12s %10s  %s\n", "class", "column", "computed", "published", "|delta|", "flag");
  for (const auto& row : published_constants()) {
    const auto cs = tampered_constants(make_class(row.name), kappa_multiplier);
    const auto mine = as_published_columns(cs);
    nlohmann::json cells = nlohmann::json::object();
    for (std::size_t k = 0; k < mine.size(); ++k) {
      const double delta = std::abs(mine[k] - row.value[k]);
      const char* flag = !row.trusted[k] ? "paper-inconsistent" : delta <= kTableTol ? "ok" : "MISMATCH";
      out << format("%-12s %-7s %14.7f %12.5f %10.2e  %s\n", row.name.c_str(), kPublishedColumns[k], mine[k],
                    row.value[k], delta, flag);
      cells[kPublishedColumns[k]] = {
          {"computed", mine[k]}, {"published", row.value[k]}, {"trusted", row.trusted[k]}, {"flag", flag}};
    }
    doc.push_back({{"class", row.name}, {"span", cs.span}, {"cells", cells}});
  }
  return json ? doc.dump(2) + "\n" : out.str();
}

}  // namespace subcrit

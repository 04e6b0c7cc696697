#include "subcrit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "subcrit/error.hpp"
#include "subcrit/limits.hpp"

namespace subcrit {

const char* statistic_name(Statistic s) {
  switch (s) {
    case Statistic::Height: return "height";
    case Statistic::Diameter: return "diameter";
    case Statistic::Both: return "both";
  }
  return "both";
}

std::optional<Statistic> parse_statistic(std::string_view s) {
  if (s == "height") return Statistic::Height;
  if (s == "diameter") return Statistic::Diameter;
  if (s == "both") return Statistic::Both;
  return std::nullopt;
}

namespace {

const char* method_name(UniformMethod m) { return m == UniformMethod::TreeFirst ? "tree_first" : "rejection"; }

bool wants_height(Statistic s) { return s != Statistic::Diameter; }
bool wants_diameter(Statistic s) { return s != Statistic::Height; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Survival of the limit law, extended by 1 below the series domain.
double sf_or_one(LawKind kind, double x) { return x < kLawXMin ? 1.0 : law_sf(kind, x); }

void validate(const ExperimentConfig& cfg) {
  if (cfg.m < 1) throw Error(ErrorCode::InvalidArgument, "sample count m must be >= 1");
  if (cfg.n < 1) throw Error(ErrorCode::InvalidArgument, "size n must be >= 1");
  if (cfg.workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
}

SampleReport start_report(const ExperimentConfig& cfg, const ClassSampler& cs) {
  SampleReport r;
  r.class_name = cs.spec().name();
  r.n = cfg.n;
  r.m = cfg.m;
  r.seed = cfg.seed;
  r.tag = cfg.tag;
  r.statistic = cfg.statistic;
  r.method = cfg.method;
  r.kappa = cs.constants().kappa;
  r.sigma2 = cs.constants().sigma2;
  r.records.resize(static_cast<std::size_t>(cfg.m));
  return r;
}

std::string csv_header(const SampleReport& r) {
  std::ostringstream out;
  out << "# schema=1\n";
  out << "# class=" << r.class_name << " n=" << r.n << " m=" << r.m << " seed=" << r.seed << " tag=" << r.tag
      << " statistic=" << statistic_name(r.statistic) << " method=" << method_name(r.method)
      << " weights=" << r.weights << " kappa=" << fmt(r.kappa) << " kappa_se=" << fmt(r.kappa_se)
      << " sigma2=" << fmt(r.sigma2) << "\n";
  out << "index,n,height,diameter,largest_block,seconds\n";
  return out.str();
}

std::string csv_row(const SampleRecord& rec) {
  return std::to_string(rec.index) + ',' + std::to_string(rec.n) + ',' + fmt(rec.height) + ',' + fmt(rec.diameter) +
         ',' + std::to_string(rec.largest_block) + ',' + fmt(rec.seconds) + '\n';
}

// Appends records to the CSV in index order as they complete.
class OrderedWriter {
 public:
  OrderedWriter(const std::string& path, const SampleReport& r) : done_(r.records.size(), false) {
    if (path.empty()) return;
    out_.open(path);
    if (!out_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out_ << csv_header(r);
  }
  void complete(const std::vector<SampleRecord>& records, long i) {
    if (!out_.is_open()) return;
    std::lock_guard<std::mutex> lock(mu_);
    done_[i] = true;
    while (next_ < done_.size() && done_[next_]) out_ << csv_row(records[next_++]);
  }
  void close() {
    if (!out_.is_open()) return;
    out_.flush();
    if (!out_) throw Error(ErrorCode::InvalidArgument, "write failed");
  }

 private:
  std::ofstream out_;
  std::mutex mu_;
  std::vector<bool> done_;
  std::size_t next_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// One uniform graph with its statistics; `weights` switches to FPP metrics.
SampleRecord measure(const ExperimentConfig& cfg, const ClassSampler& cs, long index,
                     const WeightDistribution* weights) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(cfg.seed, sample_stream(cfg.tag, static_cast<std::uint64_t>(index)));
  SampleRecord rec;
  rec.index = index;
  rec.n = cfg.n;
  RootedGraph rg;
  if (cfg.method == UniformMethod::TreeFirst) {
    auto draw = sample_uniform_tree_first(cs, cfg.n, rng, false);
    rec.largest_block = draw.largest_block;
    if (!weights && cs.spec().id() == ClassId::Trees && !wants_diameter(cfg.statistic)) {
      rec.height = tree_height(draw.skeleton);
      rec.seconds = seconds_since(t0);
      return rec;
    }
    rg = std::move(draw.rooted);
  } else {
    rg = sample_uniform_cn(cs, cfg.n, rng, UniformMethod::Rejection, false);
    rec.largest_block = largest_block_size(rg.graph);
  }
  if (weights) {
    const Graph g = assign_weights(rg.graph, *weights, rng);
    if (wants_height(cfg.statistic)) rec.height = cfg.n == 1 ? 0.0 : weighted_height(g, rg.root);
    if (wants_diameter(cfg.statistic)) rec.diameter = cfg.n == 1 ? 0.0 : weighted_diameter(g);
  } else {
    if (wants_height(cfg.statistic)) rec.height = height(rg.graph, rg.root);
    if (wants_diameter(cfg.statistic)) rec.diameter = diameter(rg.graph);
  }
  rec.seconds = seconds_since(t0);
  return rec;
}

SampleReport run_samples(const ExperimentConfig& cfg, const ClassSampler& cs, const WeightDistribution* weights,
                         double kappa, double kappa_se) {
  validate(cfg);
  SampleReport r = start_report(cfg, cs);
  if (weights) r.weights = weights->to_string();
  r.kappa = kappa;
  r.kappa_se = kappa_se;
  OrderedWriter writer(cfg.output, r);
  parallel_for(cfg.m, cfg.workers, [&](long i) {
    r.records[i] = measure(cfg, cs, i, weights);
    writer.complete(r.records, i);
  });
  writer.close();
  r.recompute();
  return r;
}

}  // namespace

void parallel_for(long count, int workers, const std::function<void(long)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  const int w = static_cast<int>(std::min<long>(workers, count));
  pool.reserve(w);
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (long i = t; i < count; i += w) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Reports

std::vector<double> SampleReport::rescaled_heights() const {
  std::vector<double> v;
  for (const auto& r : records) {
    if (r.height >= 0) v.push_back(r.height * summary.scale);
  }
  return v;
}

std::vector<double> SampleReport::rescaled_diameters() const {
  std::vector<double> v;
  for (const auto& r : records) {
    if (r.diameter >= 0) v.push_back(r.diameter * summary.scale);
  }
  return v;
}

TailFit fit_tail(std::vector<double> values, int n, bool lower) {
  TailFit fit;
  if (values.empty()) return fit;
  std::sort(values.begin(), values.end());
  const double m = static_cast<double>(values.size());
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double h = values[i];
    // Upper: Pr{X >= h} = (m - i)/m. Lower: Pr{X <= h} = j/m.
    const double p = lower ? j / m : (m - i) / m;
    if (p >= 1e-3 && p <= 1e-1 && (!lower || h > 0)) {
      xs.push_back(lower ? n / (h * h) : h * h / n);
      ys.push_back(std::log(p));
    }
    i = j;
  }
  fit.points = static_cast<int>(xs.size());
  if (xs.size() < 3) return fit;
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = sxy * sxy / (sxx * syy);
  fit.degenerate = false;
  return fit;
}

void SampleReport::recompute() {
  SampleSummary s;
  s.scale = n > 0 && kappa > 0 ? std::sqrt(sigma2) / (2.0 * kappa * std::sqrt(static_cast<double>(n))) : 0.0;
  summary.scale = s.scale;
  std::vector<double> hs, ds;
  for (const auto& r : records) {
    if (r.height >= 0) hs.push_back(r.height);
    if (r.diameter >= 0) ds.push_back(r.diameter);
  }
  auto mean = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  s.mean_height = mean(hs);
  s.mean_diameter = mean(ds);
  s.rescaled_mean_height = s.mean_height * s.scale;
  s.rescaled_mean_diameter = s.mean_diameter * s.scale;
  s.ratio = s.mean_height > 0 ? s.mean_diameter / s.mean_height : 0.0;
  if (!hs.empty()) {
    s.height_tail = fit_tail(hs, n);
    s.height_lower_tail = fit_tail(hs, n, true);
    auto scaled = rescaled_heights();
    std::sort(scaled.begin(), scaled.end());
    s.ks_height = ks_statistic(scaled, [](double x) { return sf_or_one(LawKind::Height, x); });
  }
  if (!ds.empty()) {
    s.diameter_tail = fit_tail(ds, n);
    auto scaled = rescaled_diameters();
    std::sort(scaled.begin(), scaled.end());
    s.ks_diameter = ks_statistic(scaled, [](double x) { return sf_or_one(LawKind::Diameter, x); });
  }
  summary = s;
}

bool SampleReport::same_samples(const SampleReport& o) const {
  if (class_name != o.class_name || n != o.n || m != o.m || seed != o.seed || tag != o.tag ||
      statistic != o.statistic || method != o.method || weights != o.weights || kappa != o.kappa ||
      records.size() != o.records.size()) {
    return false;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].same_sample(o.records[i])) return false;
  }
  return true;
}

bool operator==(const SampleReport& a, const SampleReport& b) {
  if (!a.same_samples(b) || a.kappa_se != b.kappa_se || a.sigma2 != b.sigma2) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].seconds != b.records[i].seconds) return false;
  }
  return true;
}

std::string emit_csv(const SampleReport& r) {
  std::string out = csv_header(r);
  for (const auto& rec : r.records) out += csv_row(rec);
  return out;
}

SampleReport parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto fail = [](const std::string& why) -> SampleReport { throw Error(ErrorCode::ParseError, why); };
  if (!std::getline(in, line) || line != "# schema=1") fail("missing '# schema=1' header");
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) fail("missing configuration line");
  SampleReport r;
  {
    std::istringstream cfg(line.substr(2));
    std::string kv;
    while (cfg >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail("bad configuration entry '" + kv + "'");
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      try {
        if (key == "class") r.class_name = val;
        else if (key == "n") r.n = std::stoi(val);
        else if (key == "m") r.m = std::stol(val);
        else if (key == "seed") r.seed = std::stoull(val);
        else if (key == "tag") r.tag = std::stoull(val);
        else if (key == "statistic") {
          auto s = parse_statistic(val);
          if (!s) fail("bad statistic");
          r.statistic = *s;
        } else if (key == "method") {
          auto mth = parse_uniform_method(val);
          if (!mth) fail("bad method");
          r.method = *mth;
        } else if (key == "weights") r.weights = val;
        else if (key == "kappa") r.kappa = std::stod(val);
        else if (key == "kappa_se") r.kappa_se = std::stod(val);
        else if (key == "sigma2") r.sigma2 = std::stod(val);
      } catch (const std::logic_error&) {
        fail("bad value for '" + key + "'");
      }
    }
  }
  if (!std::getline(in, line) || line != "index,n,height,diameter,largest_block,seconds") fail("bad column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SampleRecord rec;
    char c1, c2, c3, c4, c5;
    std::istringstream row(line);
    if (!(row >> rec.index >> c1 >> rec.n >> c2 >> rec.height >> c3 >> rec.diameter >> c4 >> rec.largest_block >>
          c5 >> rec.seconds) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
      fail("bad record: " + line);
    }
    r.records.push_back(rec);
  }
  if (static_cast<long>(r.records.size()) != r.m) fail("record count differs from m");
  r.recompute();
  return r;
}

std::string summary_json(const SampleReport& r) {
  const auto& s = r.summary;
  auto tail = [](const TailFit& f) {
    return nlohmann::json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points},
                          {"degenerate", f.degenerate}};
  };
  nlohmann::json j{{"class", r.class_name},
                   {"n", r.n},
                   {"m", r.m},
                   {"seed", r.seed},
                   {"statistic", statistic_name(r.statistic)},
                   {"method", method_name(r.method)},
                   {"weights", r.weights},
                   {"kappa", r.kappa},
                   {"kappa_se", r.kappa_se},
                   {"sigma2", r.sigma2},
                   {"scale", s.scale},
                   {"mean_height", s.mean_height},
                   {"mean_diameter", s.mean_diameter},
                   {"rescaled_mean_height", s.rescaled_mean_height},
                   {"rescaled_mean_diameter", s.rescaled_mean_diameter},
                   {"ratio", s.ratio},
                   {"ks_height", s.ks_height},
                   {"ks_diameter", s.ks_diameter},
                   {"height_tail", tail(s.height_tail)},
                   {"height_lower_tail", tail(s.height_lower_tail)},
                   {"diameter_tail", tail(s.diameter_tail)}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Experiments

SampleReport run_convergence(const ExperimentConfig& cfg) {
  return run_convergence(cfg, ClassSampler(make_class(cfg.class_name)));
}

SampleReport run_convergence(const ExperimentConfig& cfg, const ClassSampler& cs) {
  return run_samples(cfg, cs, nullptr, cs.constants().kappa, 0.0);
}

SampleReport run_tails(const ExperimentConfig& cfg) { return run_tails(cfg, ClassSampler(make_class(cfg.class_name))); }

SampleReport run_tails(const ExperimentConfig& cfg, const ClassSampler& cs) {
  return run_samples(cfg, cs, nullptr, cs.constants().kappa, 0.0);
}

SampleReport run_fpp(const ExperimentConfig& cfg) { return run_fpp(cfg, ClassSampler(make_class(cfg.class_name))); }

SampleReport run_fpp(const ExperimentConfig& cfg, const ClassSampler& cs) {
  if (!cfg.weights) throw Error(ErrorCode::MissingWeights, "FPP needs a weight specification");
  const auto w = WeightDistribution::parse(*cfg.weights);
  const auto k = estimate_kappa(cs, cfg.kappa_draws, cfg.seed, cfg.tag + 0x100000, cfg.workers, &w);
  return run_samples(cfg, cs, &w, k.mean, k.se);
}

KappaEstimate estimate_kappa(const ClassSampler& cs, long draws, std::uint64_t seed, std::uint64_t tag, int workers,
                             const WeightDistribution* weights) {
  if (draws < 2) throw Error(ErrorCode::InvalidArgument, "need at least two draws");
  // Fixed chunks summed in index order keep the result independent of the
  // worker count.
  constexpr long kChunk = 4096;
  const long chunks = (draws + kChunk - 1) / kChunk;
  struct Sums {
    double s = 0, s2 = 0, z = 0, z2 = 0;
  };
  std::vector<Sums> part(static_cast<std::size_t>(chunks));
  parallel_for(chunks, workers, [&](long c) {
    Sums acc;
    for (long i = c * kChunk; i < std::min(draws, (c + 1) * kChunk); ++i) {
      Rng rng(seed, sample_stream(tag, static_cast<std::uint64_t>(i)));
      const auto b = cs.blocks().pointed(rng);
      PointedBlock pb = b.pointed();
      if (weights) pb.graph = assign_weights(pb.graph, *weights, rng);
      const double d = shp(pb);
      acc.s += d;
      acc.s2 += d * d;
      acc.z += b.size;
      acc.z2 += static_cast<double>(b.size) * b.size;
    }
    part[c] = acc;
  });
  Sums tot;
  for (const auto& p : part) {
    tot.s += p.s;
    tot.s2 += p.s2;
    tot.z += p.z;
    tot.z2 += p.z2;
  }
  const double m = static_cast<double>(draws);
  KappaEstimate k;
  k.draws = draws;
  k.mean = tot.s / m;
  k.se = std::sqrt(std::max(0.0, (tot.s2 / m - k.mean * k.mean) / (m - 1)));
  k.mean_size = tot.z / m;
  k.size_se = std::sqrt(std::max(0.0, (tot.z2 / m - k.mean_size * k.mean_size) / (m - 1)));
  return k;
}

// ---------------------------------------------------------------------------
// Counting

std::vector<BigInt> exact_counts(const ClassSpec& spec, int max_n) {
  if (max_n < 1) throw Error(ErrorCode::InvalidArgument, "max_n must be >= 1");
  const auto order = static_cast<std::size_t>(max_n) + 1;
  const auto c = ps_fixed_point(spec.b1_series_exact(order), order);
  std::vector<BigInt> out(order, 0);
  BigInt fact = 1;
  for (int n = 1; n <= max_n; ++n) {
    fact *= n;
    const Rational v = c[n] * Rational(fact) / Rational(n);
    if (boost::multiprecision::denominator(v) != 1) {
      throw Error(ErrorCode::InvalidArgument, "non-integral count; series is inconsistent");
    }
    out[n] = boost::multiprecision::numerator(v);
  }
  return out;
}

std::vector<std::uint64_t> enumerate_class(const ClassSpec& spec, int n) {
  if (n < 1 || n > 7) throw Error(ErrorCode::InvalidArgument, "enumeration needs 1 <= n <= 7");
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  std::vector<int> parent(n);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::iota(parent.begin(), parent.end(), 0);
    int comps = n;
    edges.clear();
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (!(mask >> b & 1)) continue;
      edges.push_back(pairs[b]);
      const int a = find(pairs[b].first), c = find(pairs[b].second);
      if (a != c) {
        parent[a] = c;
        --comps;
      }
    }
    if (comps != 1) continue;
    if (class_membership(spec, Graph::from_edges(n, edges))) out.push_back(mask);
  }
  return out;
}

std::vector<CountRow> run_counts(const ClassSpec& spec, int max_n, int brute_force_max) {
  const auto exact = exact_counts(spec, max_n);
  const auto cs = constant_set(spec);
  std::vector<CountRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    CountRow row;
    row.n = n;
    row.exact = exact[n];
    const double log_asym = std::log(cs.c) - 2.5 * std::log(n) - n * std::log(cs.rho) + std::lgamma(n + 1.0);
    row.asymptotic = std::exp(log_asym);
    row.ratio = std::exp(std::log(static_cast<double>(exact[n])) - log_asym);
    if (n <= brute_force_max) row.brute_force = static_cast<long>(enumerate_class(spec, n).size());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace subcrit

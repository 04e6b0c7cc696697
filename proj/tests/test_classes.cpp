#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "subcrit/classes.hpp"
#include "subcrit/constants.hpp"
#include "subcrit/limits.hpp"

using namespace subcrit;

namespace {

struct SeriesSums {
  double f = 0, d1 = 0, d2 = 0;
};

// B', B'', B''' from the coefficient series at x.
SeriesSums series_sums(const ClassSpec& spec, double x, std::size_t order) {
  SeriesSums out;
  if (x == 0) {
    const auto s = spec.b1_series(3);
    return {s[0], s[1], 2 * s[2]};
  }
  // coefficients scaled by x^k stay finite for outerplanar at large k
  const auto s = spec.b1_series(order, x);
  for (std::size_t k = order; k-- > 0;) {
    const double kd = static_cast<double>(k);
    out.f += s[k];
    out.d1 += kd * s[k] / x;
    out.d2 += kd * (kd - 1) * s[k] / (x * x);
  }
  return out;
}

// All 2-connected graphs (or K2) on k+1 labels that belong to the class.
std::vector<std::uint64_t> enumerate_blocks(const ClassSpec& spec, int k) {
  const int n = k + 1;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) e.push_back(pairs[b]);
    const auto g = Graph::from_edges(n, e);
    if (!g.is_connected() || block_decompose(g).blocks.size() != 1) continue;
    if (spec.block_member(g)) out.push_back(edge_mask(g));
  }
  return out;
}

}  // namespace

TEST_CASE("unknown class") {
  try {
    make_class("planar");
    FAIL("expected UnknownClass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownClass);
  }
  CHECK(class_names().size() == 5);
}

TEST_CASE("closed forms agree with the coefficient series") {
  for (const auto& name : class_names()) {
    const auto spec = make_class(name);
    const double y = solve_y(spec);
    const std::size_t order = spec.id() == ClassId::Outerplanar ? 1200 : 120;
    for (int i = 0; i <= 10; ++i) {
      const double x = 0.9 * y * i / 10.0;
      const auto s = series_sums(spec, x, order);
      INFO(name << " x=" << x);
      CHECK(std::abs(spec.b1(x) - s.f) < 1e-10);
      CHECK(std::abs(spec.b2(x) - s.d1) < 1e-10 * std::max(1.0, s.d1));
      CHECK(std::abs(spec.b3(x) - s.d2) < 1e-9 * std::max(1.0, s.d2));
    }
  }
}

TEST_CASE("exact block series matches the floating one") {
  for (const auto& name : class_names()) {
    const auto spec = make_class(name);
    const auto exact = spec.b1_series_exact(14);
    const auto real = spec.b1_series(14);
    for (int k = 0; k < 14; ++k) CHECK(static_cast<double>(exact[k]) == doctest::Approx(real[k]).epsilon(1e-13));
  }
}

TEST_CASE("closed form examples") {
  const auto trees = make_class("trees");
  CHECK(trees.b1(1.0) == 1.0);
  CHECK(trees.b2(0.3) == 1.0);
  CHECK(trees.b3(0.7) == 0.0);
  CHECK(make_class("cacti").b1(0.45631) == doctest::Approx(0.64779).epsilon(1e-4 / 0.64779));
  CHECK(std::abs(outerplanar_ba(0.17076) - 0.27578) < 1e-4);
  // Ba is steep near the radius, so E[S] needs the unrounded y
  const double y = solve_y(make_class("outerplanar"));
  CHECK(std::abs(outerplanar_expected_s(outerplanar_ba(y)) - 5.46545) < 1e-4);
  CHECK(outerplanar_system_det(0.27578) != 0.0);
}

TEST_CASE("analytic kappa") {
  CHECK(make_class("trees").kappa_analytic(1.0) == 1.0);
  const std::map<std::string, double> want{{"forb_c5", 1.10355}, {"cacti", 1.20297}, {"outerplanar", 5.08418}};
  for (const auto& [name, k] : want) {
    const auto spec = make_class(name);
    CHECK(std::abs(spec.kappa_analytic(solve_y(spec)) - k) < 1e-4);
  }
}

TEST_CASE("block membership examples") {
  const auto c5 = Graph::from_edges(5, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK_FALSE(make_class("forb_c5").block_member(c5));
  CHECK(make_class("cacti").block_member(c5));
  const auto k4 = Graph::from_edges(4, std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(make_class("forb_c5").block_member(k4));
  CHECK_FALSE(make_class("outerplanar").block_member(k4));
  const auto f4 = make_class("forb_c4");
  const std::vector<std::vector<std::pair<Vertex, Vertex>>> three{
      {{0, 1}, {1, 2}}, {{0, 1}, {0, 2}}, {{0, 2}, {1, 2}}, {{0, 1}, {1, 2}, {0, 2}}};
  for (const auto& e : three) CHECK(class_membership(f4, Graph::from_edges(3, e)));
}

TEST_CASE("block sampler range") {
  CHECK_THROWS_AS(BlockSampler(make_class("cacti"), 1.2), Error);
  CHECK_THROWS_AS(BlockSampler(make_class("outerplanar"), 0.2), Error);
}

TEST_CASE("pointed block sizes follow the pointed series") {
  // sum_k k b_k y^k = y B''(y) = 1, so the pointed size law needs no normalization.
  const std::map<std::string, long> draws{{"forb_c5", 200000}, {"cacti", 200000}, {"outerplanar", 20000}};
  for (const auto& [name, m] : draws) {
    const auto spec = make_class(name);
    const double y = solve_y(spec);
    const BlockSampler sampler(spec, y);
    const auto coeff = spec.b1_series(16, y);
    std::vector<double> p(17, 0.0);
    double covered = 0;
    for (int k = 1; k <= 15; ++k) covered += p[k - 1] = k * coeff[k];
    p[15] = 1 - covered;
    p.resize(16);
    std::vector<long> observed(16, 0);
    Rng rng(21, 0);
    double size_sum = 0;
    for (long i = 0; i < m; ++i) {
      const auto b = sampler.pointed(rng);
      size_sum += b.size;
      observed[std::min(b.size, 16) - 1]++;
      if (i < 2000) {
        CHECK(spec.block_member(b.graph()));
        CHECK(b.root >= 1);
        CHECK(b.root <= b.size);
      }
    }
    const auto chi = chi_square_test(observed, p);
    INFO(name << " chi2=" << chi.statistic << " dof=" << chi.dof);
    CHECK(chi.p_value > 0.001);
    if (name != "outerplanar") CHECK(size_sum / m == doctest::Approx(constant_set(spec).sigma2).epsilon(0.02));
  }
}

TEST_CASE("derived block sizes follow the derived series") {
  for (const auto& name : class_names()) {
    const auto spec = make_class(name);
    const double y = solve_y(spec);
    const BlockSampler sampler(spec, y);
    const auto coeff = spec.b1_series(12, y);
    const double lambda = spec.b1(y);
    for (int k = 1; k < 12; ++k) CHECK(sampler.derived_pmf()[k] == doctest::Approx(coeff[k] / lambda).epsilon(1e-9));
  }
}

TEST_CASE("pointed shp means match kappa") {
  const std::map<std::string, long> draws{{"trees", 10000}, {"forb_c4", 100000}, {"forb_c5", 100000},
                                          {"cacti", 200000}, {"outerplanar", 40000}};
  for (const auto& [name, m] : draws) {
    const auto spec = make_class(name);
    const double y = solve_y(spec);
    const BlockSampler sampler(spec, y);
    Rng rng(22, 0);
    CHECK(shp(sample_pointed_block(spec, y, rng)) >= 1);
    double s = 0, s2 = 0;
    for (long i = 0; i < m; ++i) {
      const double v = shp(sampler.pointed(rng).pointed());
      s += v;
      s2 += v * v;
    }
    const double mean = s / m;
    const double se = std::sqrt(std::max(0.0, s2 / m - mean * mean) / m);
    INFO(name << " mean=" << mean << " se=" << se);
    if (se == 0) {
      CHECK(mean == spec.kappa_analytic(y));
    } else {
      CHECK(std::abs(mean - spec.kappa_analytic(y)) < 3 * se);
    }
  }
}

TEST_CASE("exact-size blocks are uniform") {
  for (const auto& name : class_names()) {
    const auto spec = make_class(name);
    const ExactBlockSampler exact(spec);
    for (int k = 1; k <= 4; ++k) {
      const auto all = enumerate_blocks(spec, k);
      INFO(name << " k=" << k);
      CHECK(exact.feasible(k) == !all.empty());
      if (all.empty()) {
        Rng rng(1, 0);
        try {
          exact.sample(k, rng);
          FAIL("expected InfeasibleSize");
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::InfeasibleSize);
        }
        continue;
      }
      std::map<std::uint64_t, long> counts;
      for (auto m : all) counts[m] = 0;
      const long draws = 100000;
      Rng rng(23, static_cast<std::uint64_t>(k));
      bool in_family = true;
      for (long i = 0; i < draws; ++i) {
        const auto b = exact.sample(k, rng);
        CHECK(b.size == k);
        const auto it = counts.find(edge_mask(b.graph()));
        if (it == counts.end()) {
          in_family = false;
          break;
        }
        it->second++;
      }
      REQUIRE(in_family);
      std::vector<long> obs;
      for (const auto& [mask, c] : counts) obs.push_back(c);
      const std::vector<double> p(obs.size(), 1.0 / static_cast<double>(obs.size()));
      CHECK(chi_square_test(obs, p).p_value > 0.001);
    }
  }
}

TEST_CASE("outerplanar blocks: exact table sampler agrees with conditioned Boltzmann draws") {
  const auto spec = make_class("outerplanar");
  const ExactBlockSampler exact(spec);
  const BlockSampler boltzmann(spec, 0.9 * spec.radius());
  for (int k : {6, 9}) {
    std::vector<double> a, b;
    Rng ra(24, static_cast<std::uint64_t>(k)), rb(25, static_cast<std::uint64_t>(k));
    while (a.size() < 20000) a.push_back(static_cast<double>(exact.sample(k, ra).edges.size()));
    while (b.size() < 20000) {
      const auto s = boltzmann.derived(rb);
      if (s.size == k) b.push_back(static_cast<double>(s.edges.size()));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(ks_two_sample_pvalue(ks_two_sample(a, b), a.size(), b.size()) > 0.001);
  }
  Rng rng(26, 0);
  const auto big = exact.sample(kOuterplanarTableSize + 50, rng);
  CHECK(big.size == kOuterplanarTableSize + 50);
  CHECK(is_outerplanar_block(big.graph()));
}

TEST_CASE("shuffle relabels non-star vertices only") {
  const auto spec = make_class("cacti");
  const BlockSampler sampler(spec, 0.4);
  Rng rng(27, 0);
  for (int i = 0; i < 200; ++i) {
    auto b = sampler.derived(rng);
    const auto before = b.graph();
    const int star_degree = before.degree(0);
    b.shuffle(rng);
    const auto after = b.graph();
    CHECK(after.edge_count() == before.edge_count());
    CHECK(after.degree(0) == star_degree);
    CHECK(spec.block_member(after));
  }
}

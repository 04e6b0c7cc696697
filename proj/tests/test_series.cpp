#include <cmath>
#include <numbers>

#include "doctest.h"
#include "subcrit/series.hpp"

using namespace subcrit;

namespace {

RealSeries from(std::initializer_list<double> c) { return RealSeries(std::vector<double>(c)); }

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("exponential series coefficients") {
  const auto e = ps_exp(RealSeries::monomial(8, 1));
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(1.0));
  CHECK(e[2] == doctest::Approx(0.5));
  CHECK(e[3] == doctest::Approx(1.0 / 6));
  const auto exact = ps_exp(ExactSeries::monomial(6, 1));
  CHECK(exact[3] == Rational(1, 6));
  CHECK(exact[5] == Rational(1, 120));
}

TEST_CASE("pointing the exponential gives z exp(z)") {
  const auto p = ps_point(ExactSeries::exponential(10));
  const auto zexp = ps_mul(ExactSeries::monomial(10, 1), ExactSeries::exponential(10));
  CHECK(p == zexp);
  for (int k = 1; k < 10; ++k) CHECK(static_cast<double>(p[k]) == doctest::Approx(k / factorial(k)));
}

TEST_CASE("geometric series of z^2") {
  const auto g = ps_compose(RealSeries::geometric(6), RealSeries::monomial(6, 2));
  const std::vector<double> want{1, 0, 1, 0, 1, 0};
  for (int k = 0; k < 6; ++k) CHECK(g[k] == want[k]);
}

TEST_CASE("composition needs a zero constant term") {
  const auto inner = from({0.5, 1.0, 0.0});
  CHECK_THROWS_AS(ps_compose(RealSeries::geometric(3), inner), Error);
  try {
    ps_compose(RealSeries::geometric(3), inner);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CompositionAtNonzeroConstant);
  }
  CHECK_THROWS_AS(ps_exp(ExactSeries(std::vector<Rational>{Rational(1), Rational(0)})), Error);
}

TEST_CASE("floating exp factors out a constant term") {
  const auto e = ps_exp(from({1.0, 1.0, 0.0, 0.0}));
  CHECK(e[0] == doctest::Approx(std::exp(1.0)));
  CHECK(e[2] == doctest::Approx(std::exp(1.0) / 2));
}

TEST_CASE("ring laws in exact arithmetic") {
  const ExactSeries a(std::vector<Rational>{0, 1, Rational(1, 2), 3, Rational(-2, 7), 1, 0, 4});
  const ExactSeries b(std::vector<Rational>{2, Rational(1, 3), 0, 5, 1, Rational(3, 4), 2, 1});
  const ExactSeries c(std::vector<Rational>{0, 0, 1, Rational(1, 5), 0, 6, 1, 2});
  CHECK(ps_mul(a, b) == ps_mul(b, a));
  CHECK(ps_mul(a, ps_add(b, c)) == ps_add(ps_mul(a, b), ps_mul(a, c)));
  CHECK(ps_mul(ps_mul(a, b), c) == ps_mul(a, ps_mul(b, c)));
  // product rule and chain rule
  const auto lhs = ps_derive(ps_mul(a, b));
  const auto rhs = ps_add(ps_mul(ps_derive(a), b), ps_mul(a, ps_derive(b)));
  CHECK(lhs == rhs.truncated(lhs.order()));
  const auto chain = ps_derive(ps_compose(b, c));
  const auto chain2 = ps_mul(ps_compose(ps_derive(b), c), ps_derive(c));
  CHECK(chain == chain2.truncated(chain.order()));
  // exp(a + c) = exp(a) exp(c)
  CHECK(ps_exp(ps_add(a, c)) == ps_mul(ps_exp(a), ps_exp(c)));
  CHECK(ps_pow(b, 5) == ps_mul(ps_mul(ps_mul(b, b), ps_mul(b, b)), b));
}

TEST_CASE("evaluation") {
  const auto e = ps_eval(RealSeries::exponential(64), 1.0);
  CHECK(std::abs(e.value - std::numbers::e) < 1e-15);
  CHECK(e.last_term < 1e-80);
  CHECK(ps_eval(RealSeries(10), 0.7).value == 0.0);
  CHECK(ps_eval(ExactSeries::exponential(30), 0.5).value == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(ps_eval(RealSeries(3), -1.0), Error);
}

TEST_CASE("fixed point for trees gives n^(n-1)/n!") {
  const auto t = ps_fixed_point(ExactSeries::monomial(12, 1), 12);
  for (int n = 1; n < 12; ++n) {
    BigInt num = boost::multiprecision::pow(BigInt(n), n - 1);
    BigInt den = 1;
    for (int k = 2; k <= n; ++k) den *= k;
    CHECK(t[n] == Rational(num, den));
  }
  CHECK(t[0] == 0);
}

TEST_CASE("fixed point for Forb(C4) counts 4 graphs on 3 vertices") {
  const ExactSeries bprime(std::vector<Rational>{0, 1, Rational(1, 2), 0, 0, 0});
  const auto c = ps_fixed_point(bprime, 6);
  CHECK(c[3] * 6 / 3 == 4);
  CHECK(c[4] * 24 / 4 == 28);
}

TEST_CASE("empty block class degenerates to a single vertex") {
  const auto c = ps_fixed_point(ExactSeries(8), 8);
  CHECK(c == ExactSeries::monomial(8, 1));
}

TEST_CASE("fixed point satisfies its equation") {
  const auto bprime = ps_add(RealSeries::monomial(20, 1), ps_scale(RealSeries::monomial(20, 2), 0.5));
  const auto c = ps_fixed_point(bprime, 20);
  const auto rhs = ps_mul(RealSeries::monomial(20, 1), ps_exp(ps_compose(bprime, c)));
  for (int k = 0; k < 20; ++k) CHECK(c[k] == doctest::Approx(rhs[k]).epsilon(1e-12));
}

TEST_CASE("fixed point order checks") {
  CHECK_THROWS_AS(ps_fixed_point(RealSeries::monomial(5, 1), 0), Error);
  try {
    ps_fixed_point(RealSeries::monomial(5, 1), 10);
    FAIL("expected OrderTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderTooSmall);
  }
}

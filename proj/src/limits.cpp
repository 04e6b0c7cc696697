#include "subcrit/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "subcrit/error.hpp"

namespace subcrit {

namespace {

void check_domain(double x) {
  if (!(x >= kLawXMin)) throw Error(ErrorCode::DomainTooSmall, "survival series needs x >= 0.1");
}

// Sums term(k) for k = first, first + 1, ... until past the polynomial factor's last sign
// change (k^2 x^2 >= 10) the terms decrease and drop below 1e-14.
template <class Term>
double theta_sum(double x2, int first, Term term) {
  double sum = 0.0, prev = std::numeric_limits<double>::infinity();
  for (int k = first; k < 100000; ++k) {
    const double t = term(static_cast<double>(k));
    sum += t;
    if (k * k * x2 >= 10.0 && std::abs(t) < 1e-14 && std::abs(t) <= prev) break;
    prev = std::abs(t);
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

double height_sf(double x) {
  check_domain(x);
  const double x2 = x * x;
  return theta_sum(x2, 1, [&](double k) { return 2.0 * (4 * k * k * x2 - 1) * std::exp(-2 * k * k * x2); });
}

double diameter_sf(double x) {
  check_domain(x);
  const double x2 = x * x;
  // The k = 1 term vanishes.
  return theta_sum(x2, 2, [&](double k) {
    const double k2x2 = k * k * x2;
    return (k * k - 1) * (2.0 / 3.0 * k2x2 * k2x2 - 4 * k2x2 + 2) * std::exp(-k2x2 / 2);
  });
}

double law_sf(LawKind kind, double x) { return kind == LawKind::Height ? height_sf(x) : diameter_sf(x); }

double height_moment(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "moment order must be >= 1");
  if (k == 1) return std::sqrt(std::numbers::pi / 2);
  return std::pow(2.0, -k / 2.0) * k * (k - 1) * std::tgamma(k / 2.0) * std::riemann_zeta(k);
}

double diameter_moment(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "moment order must be >= 1");
  constexpr double pi = std::numbers::pi;
  switch (k) {
    case 1: return 4.0 / 3.0 * std::sqrt(pi / 2);
    case 2: return 2.0 / 3.0 * (1 + pi * pi / 3);
    case 3: return 2.0 * std::sqrt(2 * pi);
    default:
      return std::pow(2.0, k / 2.0) / 3.0 * k * (k - 1) * (k - 3) * std::tgamma(k / 2.0) *
             (std::riemann_zeta(k - 2) - std::riemann_zeta(k));
  }
}

double law_moment(LawKind kind, int k) { return kind == LawKind::Height ? height_moment(k) : diameter_moment(k); }

double law_moment_numeric(LawKind kind, int k, double upper) {
  auto f = [&](double x) { return k * std::pow(x, k - 1) * law_sf(kind, x); };
  const double body = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, kLawXMin, upper, 15, 1e-12);
  return body + std::pow(kLawXMin, k);
}

double law_quantile(LawKind kind, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile level must be in (0,1)");
  double lo = kLawXMin, hi = 20.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (law_sf(kind, mid) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_statistic(std::span<const double> sorted, const Survival& sf) {
  if (sorted.empty()) throw Error(ErrorCode::EmptySample, "KS statistic of an empty sample");
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = 1.0 - sf(sorted[i]);
    d = std::max({d, (i + 1) / m - cdf, cdf - i / m});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "KS statistic of an empty sample");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double kolmogorov_q(double t) {
  if (t <= 0.0) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (t < 1.18) {
    // Dual series, accurate for small t.
    double s = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      s += std::exp(-odd * odd * pi * pi / (8 * t * t));
    }
    return std::clamp(1.0 - std::sqrt(2 * pi) / t * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

double ks_pvalue(double d, std::size_t m) {
  const double sm = std::sqrt(static_cast<double>(m));
  return kolmogorov_q((sm + 0.12 + 0.11 / sm) * d);
}

double ks_two_sample_pvalue(double d, std::size_t m1, std::size_t m2) {
  const double ne = static_cast<double>(m1) * m2 / static_cast<double>(m1 + m2);
  const double s = std::sqrt(ne);
  return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

double chi_square_pvalue(double statistic, int dof) {
  if (dof < 1) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquare chi_square_test(std::span<const long> observed, std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw Error(ErrorCode::InvalidArgument, "observed and probability vectors differ in length");
  }
  double total = 0.0;
  for (long o : observed) total += static_cast<double>(o);
  if (total <= 0.0) throw Error(ErrorCode::EmptySample, "no observations");
  std::vector<double> exp_cells, obs_cells;
  double e_acc = 0.0, o_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    e_acc += probabilities[i] * total;
    o_acc += static_cast<double>(observed[i]);
    if (e_acc >= 5.0) {
      exp_cells.push_back(e_acc);
      obs_cells.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_cells.empty()) {
      exp_cells.push_back(e_acc);
      obs_cells.push_back(o_acc);
    } else {
      exp_cells.back() += e_acc;
      obs_cells.back() += o_acc;
    }
  }
  ChiSquare r;
  for (std::size_t i = 0; i < exp_cells.size(); ++i) {
    const double diff = obs_cells[i] - exp_cells[i];
    r.statistic += diff * diff / exp_cells[i];
  }
  r.dof = static_cast<int>(exp_cells.size()) - 1;
  r.p_value = chi_square_pvalue(r.statistic, r.dof);
  return r;
}

}  // namespace subcrit

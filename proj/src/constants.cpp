#include "subcrit/constants.hpp"

#include <cmath>
#include <numbers>

#include "subcrit/error.hpp"

namespace subcrit {

double solve_y(const ClassSpec& spec) {
  auto f = [&](double t) { return t * spec.b2(t) - 1.0; };
  const double r = spec.radius();
  double lo = 0.0, hi = std::min(0.25, r);
  while (true) {
    const double fh = f(hi);
    if (fh == 0.0) return hi;
    if (fh > 0.0) break;
    if (hi >= r) throw Error(ErrorCode::NoBracket, "t B''(t) stays below 1 up to the radius");
    lo = hi;
    hi = std::min(2.0 * hi, r);
    if (hi > 1e6) throw Error(ErrorCode::NoBracket, "no sign change found");
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    (fm > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ConstantSet constant_set(const ClassSpec& spec) {
  ConstantSet cs;
  cs.name = spec.name();
  cs.y = solve_y(spec);
  cs.lambda = spec.b1(cs.y);
  cs.rho = cs.y * std::exp(-cs.lambda);
  cs.sigma2 = 1.0 + spec.b3(cs.y) * cs.y * cs.y;
  cs.kappa = spec.kappa_analytic(cs.y);
  cs.span = spec.span();
  cs.H = cs.kappa * std::sqrt(2.0 * std::numbers::pi / cs.sigma2);
  cs.c = cs.y * cs.span / std::sqrt(2.0 * std::numbers::pi * cs.sigma2);
  return cs;
}

std::vector<double> offspring_pmf(const ClassSpec& spec, const ConstantSet& cs) {
  for (std::size_t cutoff = 512; cutoff <= 65536; cutoff *= 2) {
    auto b = spec.b1_series(cutoff, cs.y);
    std::vector<double> a(b.coeffs().begin(), b.coeffs().end());
    a[0] = -cs.lambda;
    const auto phi = ps_exp(RealSeries(std::move(a)));
    std::vector<double> pmf(phi.coeffs().begin(), phi.coeffs().end());
    double total = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      total += pmf[k];
      mean += static_cast<double>(k) * pmf[k];
    }
    if (1.0 - total <= 1e-12 && std::abs(1.0 - mean) <= 1e-11) return pmf;
  }
  throw Error(ErrorCode::ParameterOutOfRange, "offspring tail mass exceeds 1e-12");
}

double gw_size_probability(const std::vector<double>& pmf, int n, std::size_t order) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (order == 0) order = static_cast<std::size_t>(n);
  if (order < static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::OrderTooSmall, "series order below n");
  }
  const RealSeries phi = RealSeries(pmf).truncated(static_cast<std::size_t>(n));
  const auto power = ps_pow(phi, static_cast<unsigned long>(n));
  return power[n - 1] / n;
}

double gw_size_probability(const ClassSpec& spec, int n, std::size_t order) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (order != 0 && order < static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::OrderTooSmall, "series order below n");
  }
  const auto cs = constant_set(spec);
  return gw_size_probability(offspring_pmf(spec, cs), n, order);
}

const std::vector<PublishedRow>& published_constants() {
  static const std::vector<PublishedRow> rows = {
      {"trees", {1, 2.50662, 0.39894, 0.36787, 1, 1, 1}, {true, true, true, true, true, true, true}},
      {"forb_c4",
       {1, 2.13226, 0.20973, 0.23618, 0.27520, 0.80901, 1.38196},
       {true, true, true, false, false, true, true}},
      {"forb_c5",
       {1.10355, 1.88657, 0.10987, 0.06290, 0.40384, 1.85945, 2.14989},
       {true, true, true, false, true, false, true}},
      {"cacti",
       {1.20297, 1.99021, 0.12014, 0.23874, 0.45631, 0.64779, 2.29559},
       {true, true, true, true, true, true, true}},
      {"outerplanar",
       {5.08418, 1.30501, 0.00697, 0.13659, 0.17076, 0.22327, 95.3658},
       {true, true, true, true, true, true, true}},
  };
  return rows;
}

std::array<double, 7> as_published_columns(const ConstantSet& cs) {
  return {cs.kappa, cs.H, cs.c, cs.rho, cs.y, cs.lambda, cs.sigma2};
}

}  // namespace subcrit

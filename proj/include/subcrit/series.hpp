#pragma once

// Truncated exponential generating series. A TruncatedSeries<T> of order N holds
// the coefficients of z^0 .. z^{N-1}; every operation returns the exact formal
// result truncated to the smaller input order. T is double for evaluation and
// sampling tables, or Rational for exact counting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subcrit/error.hpp"

namespace subcrit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultSeriesOrder = 64;

template <class T>
class TruncatedSeries {
 public:
  static constexpr bool exact_mode = !std::is_floating_point_v<T>;

  TruncatedSeries() = default;
  explicit TruncatedSeries(std::size_t order) : coeffs_(order, T(0)) {}
  explicit TruncatedSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {}

  /// c * z^k truncated at `order`.
  static TruncatedSeries monomial(std::size_t order, std::size_t k, T c = T(1)) {
    TruncatedSeries s(order);
    if (k < order) s.coeffs_[k] = std::move(c);
    return s;
  }

  /// Series of exp(z).
  static TruncatedSeries exponential(std::size_t order) {
    TruncatedSeries s(order);
    T term(1);
    for (std::size_t k = 0; k < order; ++k) {
      if (k > 0) term /= T(static_cast<long>(k));
      s.coeffs_[k] = term;
    }
    return s;
  }

  /// Series of 1/(1-z).
  static TruncatedSeries geometric(std::size_t order) {
    return TruncatedSeries(std::vector<T>(order, T(1)));
  }

  std::size_t order() const { return coeffs_.size(); }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<const T> coeffs() const { return coeffs_; }

  TruncatedSeries truncated(std::size_t order) const {
    std::vector<T> c(coeffs_.begin(), coeffs_.begin() + std::min(order, coeffs_.size()));
    c.resize(order, T(0));
    return TruncatedSeries(std::move(c));
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<T> coeffs_;
};

using RealSeries = TruncatedSeries<double>;
using ExactSeries = TruncatedSeries<Rational>;

template <class T>
TruncatedSeries<T> ps_add(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<T> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = a[k] + b[k];
  return TruncatedSeries<T>(std::move(c));
}

template <class T>
TruncatedSeries<T> ps_scale(const TruncatedSeries<T>& a, const T& factor) {
  std::vector<T> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= factor;
  return TruncatedSeries<T>(std::move(c));
}

template <class T>
TruncatedSeries<T> ps_mul(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<T> c(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j] == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  return TruncatedSeries<T>(std::move(c));
}

namespace detail {
template <class T>
void require_zero_constant(const TruncatedSeries<T>& b, const char* op) {
  if (b.order() > 0 && b[0] != 0) {
    throw Error(ErrorCode::CompositionAtNonzeroConstant,
                std::string(op) + ": inner series has nonzero constant term");
  }
}
}  // namespace detail

/// a(b(z)) by Horner's scheme on series.
template <class T>
TruncatedSeries<T> ps_compose(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::require_zero_constant(b, "ps_compose");
  const std::size_t n = std::min(a.order(), b.order());
  if (n == 0) return TruncatedSeries<T>(0);
  const auto inner = b.truncated(n);
  auto acc = TruncatedSeries<T>::monomial(n, 0, a[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    acc = ps_mul(acc, inner);
    std::vector<T> c(acc.coeffs().begin(), acc.coeffs().end());
    c[0] += a[k];
    acc = TruncatedSeries<T>(std::move(c));
  }
  return acc;
}

/// d/dz a. The top coefficient would need a[order], so the result has order-1 terms.
template <class T>
TruncatedSeries<T> ps_derive(const TruncatedSeries<T>& a) {
  if (a.order() == 0) return a;
  std::vector<T> c(a.order() - 1);
  for (std::size_t k = 1; k < a.order(); ++k) c[k - 1] = a[k] * T(static_cast<long>(k));
  return TruncatedSeries<T>(std::move(c));
}

/// z d/dz a (pointing).
template <class T>
TruncatedSeries<T> ps_point(const TruncatedSeries<T>& a) {
  std::vector<T> c(a.order());
  for (std::size_t k = 0; k < a.order(); ++k) c[k] = a[k] * T(static_cast<long>(k));
  return TruncatedSeries<T>(std::move(c));
}

/// exp(a) via e' = a' e. Exact mode requires a[0] == 0; in floating mode a
/// nonzero constant is factored out as exp(a[0]).
template <class T>
TruncatedSeries<T> ps_exp(const TruncatedSeries<T>& a) {
  const std::size_t n = a.order();
  std::vector<T> e(n, T(0));
  if (n == 0) return TruncatedSeries<T>(0);
  if constexpr (TruncatedSeries<T>::exact_mode) {
    detail::require_zero_constant(a, "ps_exp");
    e[0] = T(1);
  } else {
    e[0] = std::exp(a[0]);
  }
  for (std::size_t m = 1; m < n; ++m) {
    T acc(0);
    for (std::size_t k = 1; k <= m; ++k) {
      if (a[k] == 0) continue;
      acc += T(static_cast<long>(k)) * a[k] * e[m - k];
    }
    e[m] = acc / T(static_cast<long>(m));
  }
  return TruncatedSeries<T>(std::move(e));
}

/// a^p by binary exponentiation of truncated products.
template <class T>
TruncatedSeries<T> ps_pow(const TruncatedSeries<T>& a, unsigned long p) {
  auto result = TruncatedSeries<T>::monomial(a.order(), 0, T(1));
  auto base = a;
  while (p > 0) {
    if (p & 1ul) result = ps_mul(result, base);
    p >>= 1;
    if (p > 0) base = ps_mul(base, base);
  }
  return result;
}

struct SeriesValue {
  double value = 0.0;
  /// |a[N-1]| x^{N-1}: magnitude of the last retained term.
  double last_term = 0.0;
};

template <class T>
SeriesValue ps_eval(const TruncatedSeries<T>& a, double x) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "ps_eval requires x >= 0");
  SeriesValue out;
  const std::size_t n = a.order();
  if (n == 0) return out;
  auto as_double = [](const T& v) {
    if constexpr (TruncatedSeries<T>::exact_mode) {
      return static_cast<double>(v);
    } else {
      return v;
    }
  };
  double acc = 0.0;
  for (std::size_t k = n; k-- > 0;) acc = acc * x + as_double(a[k]);
  out.value = acc;
  out.last_term = std::abs(as_double(a[n - 1])) * std::pow(x, static_cast<double>(n - 1));
  return out;
}

/// Solves C(z) = z exp(B'(C(z))) by iterating C <- z exp(B'(C)) from C = 0.
/// Iteration i fixes coefficient i, so `order` rounds suffice; round i only
/// needs the series truncated to order i + 1.
template <class T>
TruncatedSeries<T> ps_fixed_point(const TruncatedSeries<T>& bprime, std::size_t order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "ps_fixed_point requires order >= 1");
  if (bprime.order() < order) {
    throw Error(ErrorCode::OrderTooSmall, "block series order below requested order");
  }
  TruncatedSeries<T> c(order);
  for (std::size_t round = 1; round < order; ++round) {
    const std::size_t working = round + 1;
    auto inner = ps_exp(ps_compose(bprime.truncated(working), c.truncated(working)));
    std::vector<T> next(order, T(0));
    for (std::size_t k = 0; k + 1 < working; ++k) next[k + 1] = inner[k];
    c = TruncatedSeries<T>(std::move(next));
  }
  return c;
}

}  // namespace subcrit

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "subcrit/classes.hpp"

namespace subcrit {

struct ConstantSet {
  std::string name;
  double y = 0.0;
  double rho = 0.0;
  double lambda = 0.0;
  double sigma2 = 0.0;
  double kappa = 0.0;
  double H = 0.0;
  double c = 0.0;
  int span = 1;
};

/// Root of t B''(t) = 1 by bisection to 1e-13. Throws NoBracket.
double solve_y(const ClassSpec& spec);
ConstantSet constant_set(const ClassSpec& spec);

/// Pr{xi = k} for the offspring law with generating function
/// exp(B'(yz) - lambda). The cutoff doubles from 512 until the dropped tail is
/// at most 1e-12 and the mean is within 1e-11 of 1; throws ParameterOutOfRange past 65536.
std::vector<double> offspring_pmf(const ClassSpec& spec, const ConstantSet& cs);

/// Pr{|T| = n} for the Galton-Watson tree with that offspring law, computed
/// as [z^{n-1}] phi(z)^n / n with series of the given order (0 means n).
/// Throws OrderTooSmall if order < n.
double gw_size_probability(const ClassSpec& spec, int n, std::size_t order = 0);
double gw_size_probability(const std::vector<double>& pmf, int n, std::size_t order = 0);

/// A row of the published constants table with a per-cell trust flag.
struct PublishedRow {
  std::string name;
  // kappa, H, c, rho, y, lambda, sigma2
  std::array<double, 7> value;
  std::array<bool, 7> trusted;
};
inline constexpr std::array<const char*, 7> kPublishedColumns{"kappa", "H", "c", "rho", "y", "lambda", "sigma2"};
const std::vector<PublishedRow>& published_constants();
std::array<double, 7> as_published_columns(const ConstantSet& cs);

}  // namespace subcrit

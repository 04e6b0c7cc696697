#pragma once

// Limit laws of the rescaled height and diameter (theta-type survival series),
// their moments, and goodness-of-fit statistics.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace subcrit {

inline constexpr double kLawXMin = 0.1;

enum class LawKind { Height, Diameter };

/// Survival functions; throw DomainTooSmall below kLawXMin.
double height_sf(double x);
double diameter_sf(double x);
double law_sf(LawKind kind, double x);

double height_moment(int k);
double diameter_moment(int k);
double law_moment(LawKind kind, int k);

/// k * integral of x^{k-1} sf(x) over [x_min, upper] plus x_min^k for the head
/// (sf is 1 to double precision below x_min).
double law_moment_numeric(LawKind kind, int k, double upper = 12.0);

/// x with sf(x) = p, by bisection on [x_min, 20].
double law_quantile(LawKind kind, double p);

using Survival = std::function<double(double)>;

/// sup |empirical sf - sf| over sorted samples. Throws EmptySample.
double ks_statistic(std::span<const double> sorted, const Survival& sf);
/// Two-sample KS distance of sorted samples. Throws EmptySample.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov tail Q(t) = 2 sum (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_q(double t);
double ks_pvalue(double d, std::size_t m);
double ks_two_sample_pvalue(double d, std::size_t m1, std::size_t m2);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};
/// Pearson test of counts against probabilities; cells with expected count
/// below 5 are pooled into a neighbour.
ChiSquare chi_square_test(std::span<const long> observed, std::span<const double> probabilities);
double chi_square_pvalue(double statistic, int dof);

}  // namespace subcrit

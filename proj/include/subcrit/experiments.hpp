#pragma once

// Monte-Carlo experiments over uniform random graphs and their CSV reports.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subcrit/classes.hpp"
#include "subcrit/samplers.hpp"

namespace subcrit {

enum class Statistic { Height, Diameter, Both };
const char* statistic_name(Statistic s);
std::optional<Statistic> parse_statistic(std::string_view s);

struct ExperimentConfig {
  std::string class_name = "trees";
  int n = 1000;
  long m = 100;
  std::uint64_t seed = 1;
  int workers = 1;
  Statistic statistic = Statistic::Both;
  UniformMethod method = UniformMethod::TreeFirst;
  std::optional<std::string> weights;  // WeightDistribution spec
  std::string output;                  // CSV path; empty for none
  /// Separates the random streams of different experiments with equal seeds.
  std::uint64_t tag = 1;
  /// Pointed-block draws used to estimate the FPP scaling factor.
  long kappa_draws = 100000;
};

struct SampleRecord {
  long index = 0;
  int n = 0;
  double height = -1.0;    // -1 when not computed
  double diameter = -1.0;  // -1 when not computed
  int largest_block = 0;
  double seconds = 0.0;

  bool same_sample(const SampleRecord& o) const {
    return index == o.index && n == o.n && height == o.height && diameter == o.diameter &&
           largest_block == o.largest_block;
  }
};

struct TailFit {
  double slope = 0.0;  // of log survival against x^2/n (upper) or n/x^2 (lower)
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
  bool degenerate = true;
};

struct SampleSummary {
  double mean_height = 0.0;
  double mean_diameter = 0.0;
  double scale = 0.0;  // sigma / (2 kappa sqrt(n))
  double rescaled_mean_height = 0.0;
  double rescaled_mean_diameter = 0.0;
  double ratio = 0.0;  // mean diameter / mean height
  double ks_height = 0.0;
  double ks_diameter = 0.0;
  TailFit height_tail, diameter_tail, height_lower_tail;
};

struct SampleReport {
  std::string class_name;
  int n = 0;
  long m = 0;
  std::uint64_t seed = 0;
  std::uint64_t tag = 0;
  Statistic statistic = Statistic::Both;
  UniformMethod method = UniformMethod::TreeFirst;
  std::string weights = "none";
  double kappa = 0.0;  // scaling factor used (estimated for FPP)
  double kappa_se = 0.0;
  double sigma2 = 0.0;
  std::vector<SampleRecord> records;
  SampleSummary summary;

  /// Recomputes `summary` from the records.
  void recompute();
  std::vector<double> rescaled_heights() const;
  std::vector<double> rescaled_diameters() const;
  /// True when configuration and per-sample values agree (timings ignored).
  bool same_samples(const SampleReport& o) const;
};

/// Exact equality except that wall times are compared too.
bool operator==(const SampleReport& a, const SampleReport& b);

std::string emit_csv(const SampleReport& r);
/// Throws ParseError.
SampleReport parse_csv(const std::string& text);
std::string summary_json(const SampleReport& r);

/// Runs fn(i) for i in [0, count) over `workers` threads (index i goes to
/// worker i mod workers). Rethrows the first exception.
void parallel_for(long count, int workers, const std::function<void(long)>& fn);

/// Stream id of sample `index` in an experiment with tag `tag`.
inline std::uint64_t sample_stream(std::uint64_t tag, std::uint64_t index) { return (tag << 40) ^ index; }

SampleReport run_convergence(const ExperimentConfig& cfg);
SampleReport run_convergence(const ExperimentConfig& cfg, const ClassSampler& cs);
SampleReport run_tails(const ExperimentConfig& cfg);
SampleReport run_tails(const ExperimentConfig& cfg, const ClassSampler& cs);
SampleReport run_fpp(const ExperimentConfig& cfg);
SampleReport run_fpp(const ExperimentConfig& cfg, const ClassSampler& cs);

/// Monte-Carlo mean of shp over Gamma B'^bullet(y) draws, optionally weighted.
struct KappaEstimate {
  double mean = 0.0;
  double se = 0.0;
  double mean_size = 0.0;
  double size_se = 0.0;
  long draws = 0;
};
KappaEstimate estimate_kappa(const ClassSampler& cs, long draws, std::uint64_t seed, std::uint64_t tag,
                             int workers = 1, const WeightDistribution* weights = nullptr);

/// Least-squares fit of log empirical survival on x^2/n over the region where
/// the survival is in [1e-3, 1e-1]; `lower` fits log Pr{X <= x} on n/x^2 over
/// the same probability band.
TailFit fit_tail(std::vector<double> values, int n, bool lower = false);

struct CountRow {
  int n = 0;
  BigInt exact;  // |C_n|
  double asymptotic = 0.0;
  double ratio = 0.0;
  std::optional<long> brute_force;  // n <= brute_force_max
};
/// Exact counts of connected graphs from the block series; rows n = 1..max_n.
std::vector<CountRow> run_counts(const ClassSpec& spec, int max_n, int brute_force_max = 6);
/// Exact |C_n| for n < order via the fixed point of the exact series.
std::vector<BigInt> exact_counts(const ClassSpec& spec, int max_n);
/// Edge masks of all connected graphs on n labels in the class (n <= 7).
std::vector<std::uint64_t> enumerate_class(const ClassSpec& spec, int n);

}  // namespace subcrit

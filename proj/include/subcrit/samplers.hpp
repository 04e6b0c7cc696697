#pragma once

// Random generation: offspring counts, the Boltzmann sampler for rooted
// connected graphs, conditioned Galton-Watson trees, uniform graphs of a given
// size, the size-biased enriched tree, and edge weights.

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subcrit/classes.hpp"
#include "subcrit/constants.hpp"
#include "subcrit/graph.hpp"
#include "subcrit/rng.hpp"

namespace subcrit {

/// Law of xi, the number of non-root vertices in a Gamma(Set o B')(y) object.
class OffspringDistribution {
 public:
  /// pmf[k] = Pr{xi = k}; `lambda` and `block_pmf` (Pr{block size = k}) feed the
  /// compositional sampler and may be left empty.
  OffspringDistribution(std::vector<double> pmf, double lambda = 0.0, std::vector<double> block_pmf = {});

  const std::vector<double>& pmf() const { return pmf_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double lambda() const { return lambda_; }
  const std::vector<double>& block_pmf() const { return block_pmf_; }
  /// gcd of differences of the support.
  int span() const { return span_; }

  /// Inverse-CDF draw from the pmf table.
  int sample(Rng& rng) const;
  /// Poisson(lambda) blocks with iid sizes, summed.
  int sample_compositional(Rng& rng) const;
  /// Block size draw (>= 1).
  int sample_block_size(Rng& rng) const;

 private:
  std::vector<double> pmf_, cdf_;
  std::vector<double> block_pmf_, block_cdf_;
  double lambda_ = 0.0;
  double mean_ = 0.0;
  double variance_ = 0.0;
  int span_ = 1;
};

enum class OffspringMethod { Table, Compositional };
int sample_offspring_count(const OffspringDistribution& dist, Rng& rng,
                           OffspringMethod method = OffspringMethod::Table);

/// Everything needed to sample one class: constants, offspring law, block
/// samplers at y. Expensive to build, immutable and thread-safe afterwards.
class ClassSampler {
 public:
  explicit ClassSampler(const ClassSpec& spec);
  ClassSampler(const ClassSpec& spec, const ConstantSet& constants);

  const ClassSpec& spec() const { return spec_; }
  const ConstantSet& constants() const { return constants_; }
  const OffspringDistribution& offspring() const { return offspring_; }
  const BlockSampler& blocks() const { return blocks_; }
  const ExactBlockSampler& exact_blocks() const { return exact_; }

 private:
  ClassSpec spec_;
  ConstantSet constants_;
  BlockSampler blocks_;
  OffspringDistribution offspring_;
  ExactBlockSampler exact_;
};

struct RootedGraph {
  Graph graph;
  Vertex root = 0;
};

inline constexpr int kNoSizeCap = std::numeric_limits<int>::max();
/// Bug trap for the uncapped Boltzmann sampler.
inline constexpr int kRunawayVertices = 100000000;

/// Gamma C^bullet(rho). Returns nullopt once the object exceeds max_size
/// vertices. With the default cap a runaway object throws SamplerRunaway.
std::optional<RootedGraph> sample_boltzmann_pointed(const ClassSampler& cs, Rng& rng,
                                                    int max_size = kNoSizeCap, bool relabel = true);

/// Galton-Watson tree conditioned on n vertices: iid draws rejected until they
/// sum to n-1, then rotated by the cycle lemma. Throws InfeasibleSize.
PlaneTree sample_conditioned_gw(const OffspringDistribution& dist, int n, Rng& rng);

/// Cyclic shift that turns a sequence with sum(xi - 1) = -1 into a valid
/// depth-first outdegree sequence: start right after the first minimum of the
/// partial sums.
std::size_t cycle_lemma_shift(std::span<const int> degrees);

enum class UniformMethod { TreeFirst, Rejection };
std::optional<UniformMethod> parse_uniform_method(std::string_view s);

/// Uniform rooted connected graph on n vertices (the root is uniform too, so
/// dropping it gives a uniform unrooted graph). Throws InfeasibleSize.
RootedGraph sample_uniform_cn(const ClassSampler& cs, int n, Rng& rng,
                              UniformMethod method = UniformMethod::TreeFirst, bool relabel = true);

/// Tree-first sample that also returns its skeleton, for callers that only need
/// the tree (e.g. heights of trees).
struct UniformDraw {
  RootedGraph rooted;
  PlaneTree skeleton;  // vertex i of the skeleton is graph vertex i (before relabeling)
  int largest_block = 1;  // vertex count of the largest block
};
UniformDraw sample_uniform_tree_first(const ClassSampler& cs, int n, Rng& rng, bool relabel = true);

struct SizeBiasedSample {
  EnrichedTree tree;
  std::vector<Vertex> spine;  // ell + 1 vertices, spine[0] is the root
  int size = 0;
  bool truncated = false;  // exceeded max_size; tree is empty
};

/// Gamma A^(ell): mutant vertices carry Poisson(lambda) ordinary blocks plus
/// one Gamma B'^bullet(y) block whose root is the next spine vertex.
SizeBiasedSample sample_size_biased(const ClassSampler& cs, int ell, Rng& rng, int max_size = kNoSizeCap);
/// Size of a Gamma A^(ell) draw, capped at max_size + 1.
int sample_size_biased_size(const ClassSampler& cs, int ell, Rng& rng, int max_size);

class WeightDistribution {
 public:
  enum class Kind { Constant, Uniform, Exponential, Geometric };

  /// "constant:c", "uniform:a,b", "exp:rate", "geometric:p" (values 1, 2, ...).
  /// Throws ParseError or NonPositiveWeight.
  static WeightDistribution parse(std::string_view text);
  static WeightDistribution constant(double c);
  static WeightDistribution uniform(double a, double b);
  static WeightDistribution exponential(double rate);
  static WeightDistribution geometric(double p);

  Kind kind() const { return kind_; }
  double mean() const;
  double sample(Rng& rng) const;
  std::string to_string() const;

 private:
  WeightDistribution(Kind kind, double a, double b);
  Kind kind_;
  double a_;
  double b_;
};

Graph assign_weights(const Graph& g, const WeightDistribution& w, Rng& rng);

}  // namespace subcrit

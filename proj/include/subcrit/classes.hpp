#pragma once

// The five block-stable classes: closed forms of B' and its derivatives, block
// series, Boltzmann and exact-size block samplers, analytic kappa, and block
// membership.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subcrit/graph.hpp"
#include "subcrit/rng.hpp"
#include "subcrit/series.hpp"

namespace subcrit {

enum class ClassId { Trees, ForbC4, ForbC5, Cacti, Outerplanar };

/// A derived block on local vertices 0..size; vertex 0 is the * vertex.
struct BlockSample {
  int size = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  Vertex root = 1;  // marked non-* vertex of a pointed draw

  Graph graph() const;
  PointedBlock pointed() const;
  /// Applies a uniform permutation to the non-* labels.
  void shuffle(Rng& rng);
};

class ClassSpec {
 public:
  /// Throws UnknownClass.
  static ClassSpec make(std::string_view name);

  ClassId id() const { return id_; }
  const std::string& name() const { return name_; }

  double b1(double x) const;
  double b2(double x) const;
  double b3(double x) const;

  /// Radius of convergence of B' (infinity for entire series).
  double radius() const;

  /// Coefficients [z^k]B'(z) * scale^k, k < order.
  RealSeries b1_series(std::size_t order, double scale = 1.0) const;
  /// Exact [z^k]B'(z) = |B'_k| / k!.
  ExactSeries b1_series_exact(std::size_t order) const;

  /// Expected shp of a Gamma B'^bullet(y) block, in closed form.
  double kappa_analytic(double y) const;

  /// True iff `block` is a single edge or a 2-connected graph of the family.
  bool block_member(const Graph& block) const;

  /// gcd of the differences of the offspring support.
  int span() const;

 private:
  ClassId id_ = ClassId::Trees;
  std::string name_;
};

inline ClassSpec make_class(std::string_view name) { return ClassSpec::make(name); }
const std::vector<std::string>& class_names();

/// Ba(z) = (1 + z - sqrt(z^2 - 6z + 1)) / 4 and friends, for outerplanar blocks.
double outerplanar_ba(double x);
double outerplanar_ba_prime(double x);
double outerplanar_bra(double x);
/// Expected shp(Gamma Bra(y)) from the 3x3 linear system; throws SingularSystem.
double outerplanar_expected_s(double w);
double outerplanar_system_det(double w);

/// Boltzmann block sampler at parameter x with precomputed size tables.
class BlockSampler {
 public:
  /// Throws ParameterOutOfRange if x is outside the convergence domain or the
  /// size tables cannot capture all but 1e-12 of the mass.
  BlockSampler(const ClassSpec& spec, double x);

  const ClassSpec& spec() const { return spec_; }
  double x() const { return x_; }

  /// Gamma B'(x): a derived block, unpointed (root field unused).
  BlockSample derived(Rng& rng) const;
  /// Gamma B'^bullet(x): derived block with a marked non-* root.
  BlockSample pointed(Rng& rng) const;
  /// Size of a Gamma B'(x) draw only (no structure).
  int derived_size(Rng& rng) const;

  /// Normalized Pr{|Gamma B'(x)| = k}, k = 0..table end.
  const std::vector<double>& derived_pmf() const { return derived_pmf_; }
  const std::vector<double>& pointed_pmf() const { return pointed_pmf_; }

 private:
  BlockSample outerplanar_draw(Rng& rng, bool pointed, int size_cap) const;
  int draw_from(const std::vector<double>& cdf, Rng& rng) const;

  ClassSpec spec_;
  double x_ = 0.0;
  double ba_ = 0.0;
  double bra_ = 0.0;
  std::vector<double> derived_pmf_, derived_cdf_;
  std::vector<double> pointed_pmf_, pointed_cdf_;

  friend class ExactBlockSampler;
};

/// Uniform labeled derived block with exactly k non-* vertices.
class ExactBlockSampler {
 public:
  explicit ExactBlockSampler(const ClassSpec& spec);
  /// Throws InfeasibleSize if the class has no derived block of size k.
  BlockSample sample(int k, Rng& rng) const;
  bool feasible(int k) const;

 private:
  BlockSample outerplanar_exact(int k, Rng& rng) const;

  ClassSpec spec_;
  std::optional<BlockSampler> boltzmann_;  // outerplanar rejection source, k beyond the tables
  // Outerplanar dissection counts scaled by radius^n: ba_[n] for Ba objects,
  // split_[n] = sum_i ba_[i] seq_[n-i] with seq = nonempty sequences of Ba.
  std::vector<double> ba_, split_;
};

/// Sizes up to this use the recursive outerplanar block sampler.
inline constexpr int kOuterplanarTableSize = 4096;

/// Gamma B'^bullet(x) draw as a pointed block.
PointedBlock sample_pointed_block(const ClassSpec& spec, double x, Rng& rng);

/// Every block of connected g belongs to the class. Throws Disconnected.
bool class_membership(const ClassSpec& spec, const Graph& g);

/// Hard cap on the work stack of the recursive outerplanar sampler.
inline constexpr long kRunawayFrames = 1000000;

}  // namespace subcrit

#include "subcrit/samplers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "subcrit/error.hpp"

namespace subcrit {

namespace {

std::vector<double> cumulative(const std::vector<double>& pmf) {
  std::vector<double> cdf(pmf.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) cdf[k] = acc += pmf[k];
  if (!cdf.empty()) {
    for (std::size_t k = 0; k < cdf.size(); ++k) cdf[k] /= acc;
    cdf.back() = 1.0;
  }
  return cdf;
}

int invert(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

long poisson(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0;
  return std::poisson_distribution<long>(mean)(rng);
}

double log_poisson(long j, double mean) {
  return static_cast<double>(j) * std::log(mean) - mean - std::lgamma(static_cast<double>(j) + 1.0);
}

void check_feasible(int n, int span) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "size must be >= 1");
  if ((n - 1) % span != 0) {
    throw Error(ErrorCode::InfeasibleSize, "size must be 1 modulo the span " + std::to_string(span));
  }
}

std::vector<Vertex> random_permutation(int n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  return perm;
}

RootedGraph finish(int n, std::vector<std::pair<Vertex, Vertex>>& edges, Vertex root, bool relabel, Rng& rng) {
  if (relabel) {
    const auto perm = random_permutation(n, rng);
    for (auto& [u, v] : edges) {
      u = perm[u];
      v = perm[v];
    }
    root = perm[root];
  }
  return {Graph::from_edges(n, edges), root};
}

}  // namespace

// ---------------------------------------------------------------------------
// Offspring law

OffspringDistribution::OffspringDistribution(std::vector<double> pmf, double lambda,
                                             std::vector<double> block_pmf)
    : pmf_(std::move(pmf)), block_pmf_(std::move(block_pmf)), lambda_(lambda) {
  if (pmf_.empty()) throw Error(ErrorCode::InvalidArgument, "empty offspring pmf");
  cdf_ = cumulative(pmf_);
  if (!block_pmf_.empty()) block_cdf_ = cumulative(block_pmf_);
  double m2 = 0.0;
  int g = 0;
  int first = -1;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    const double kk = static_cast<double>(k);
    mean_ += kk * pmf_[k];
    m2 += kk * kk * pmf_[k];
    if (pmf_[k] > 0.0) {
      if (first < 0) {
        first = static_cast<int>(k);
      } else {
        g = std::gcd(g, static_cast<int>(k) - first);
      }
    }
  }
  variance_ = m2 - mean_ * mean_;
  span_ = g == 0 ? 1 : g;
}

int OffspringDistribution::sample(Rng& rng) const { return invert(cdf_, rng.uniform()); }

int OffspringDistribution::sample_block_size(Rng& rng) const {
  if (block_cdf_.empty()) throw Error(ErrorCode::InvalidArgument, "no block size law attached");
  return invert(block_cdf_, rng.uniform());
}

int OffspringDistribution::sample_compositional(Rng& rng) const {
  const long blocks = poisson(lambda_, rng);
  int total = 0;
  for (long i = 0; i < blocks; ++i) total += sample_block_size(rng);
  return total;
}

int sample_offspring_count(const OffspringDistribution& dist, Rng& rng, OffspringMethod method) {
  return method == OffspringMethod::Table ? dist.sample(rng) : dist.sample_compositional(rng);
}

ClassSampler::ClassSampler(const ClassSpec& spec) : ClassSampler(spec, constant_set(spec)) {}

ClassSampler::ClassSampler(const ClassSpec& spec, const ConstantSet& constants)
    : spec_(spec),
      constants_(constants),
      blocks_(spec, constants.y),
      offspring_(offspring_pmf(spec, constants), constants.lambda, blocks_.derived_pmf()),
      exact_(spec) {}

// ---------------------------------------------------------------------------
// Boltzmann growth

namespace {

struct RawBlock {
  Vertex star;
  Vertex first;  // local vertex i >= 1 is first + i - 1
  BlockSample block;
};

struct Grown {
  int size = 1;
  bool truncated = false;
  std::vector<RawBlock> blocks;
  std::vector<Vertex> spine{0};
};

// Vertices are created with consecutive ids and expanded in creation order,
// so the breadth-first queue is just the id range.
Grown grow(const ClassSampler& cs, Rng& rng, int ell, int max_size, bool record) {
  Grown g;
  const BlockSampler& blocks = cs.blocks();
  std::poisson_distribution<int> pois(cs.constants().lambda);
  const int trap = max_size == kNoSizeCap ? kRunawayVertices : max_size;
  for (Vertex v = 0; v < g.size; ++v) {
    const int m = pois(rng);
    for (int j = 0; j < m; ++j) {
      if (record) {
        auto b = blocks.derived(rng);
        const int s = b.size;
        g.blocks.push_back({v, g.size, std::move(b)});
        g.size += s;
      } else {
        g.size += blocks.derived_size(rng);
      }
    }
    if (v == g.spine.back() && static_cast<int>(g.spine.size()) <= ell) {
      auto b = blocks.pointed(rng);
      const int s = b.size;
      g.spine.push_back(g.size + b.root - 1);
      if (record) g.blocks.push_back({v, g.size, std::move(b)});
      g.size += s;
    }
    if (g.size > trap) {
      if (max_size == kNoSizeCap) throw Error(ErrorCode::SamplerRunaway, "Boltzmann object exceeds the vertex trap");
      g.truncated = true;
      return g;
    }
  }
  return g;
}

std::vector<std::pair<Vertex, Vertex>> grown_edges(const Grown& g) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(g.size);
  for (const auto& rb : g.blocks) {
    auto global = [&](Vertex local) { return local == 0 ? rb.star : rb.first + local - 1; };
    for (auto [a, b] : rb.block.edges) edges.emplace_back(global(a), global(b));
  }
  return edges;
}

}  // namespace

std::optional<RootedGraph> sample_boltzmann_pointed(const ClassSampler& cs, Rng& rng, int max_size,
                                                    bool relabel) {
  Grown g = grow(cs, rng, 0, max_size, true);
  if (g.truncated) return std::nullopt;
  auto edges = grown_edges(g);
  return finish(g.size, edges, 0, relabel, rng);
}

SizeBiasedSample sample_size_biased(const ClassSampler& cs, int ell, Rng& rng, int max_size) {
  if (ell < 0) throw Error(ErrorCode::InvalidArgument, "ell must be >= 0");
  Grown g = grow(cs, rng, ell, max_size, true);
  SizeBiasedSample out;
  out.size = g.size;
  out.truncated = g.truncated;
  if (g.truncated) return out;
  out.spine = std::move(g.spine);
  EnrichedTree& t = out.tree;
  const int n = g.size;
  t.root = 0;
  t.parent.assign(n, -1);
  t.children.assign(n, {});
  t.enrichment.assign(n, {});
  t.depth.assign(n, 0);
  for (auto& rb : g.blocks) {
    EnrichedBlock eb;
    eb.star = rb.star;
    for (int i = 1; i <= rb.block.size; ++i) {
      const Vertex u = rb.first + i - 1;
      eb.members.push_back(u);
      t.parent[u] = rb.star;
      t.depth[u] = t.depth[rb.star] + 1;
      t.children[rb.star].push_back(u);
    }
    eb.local = rb.block.graph();
    t.enrichment[rb.star].push_back(std::move(eb));
  }
  return out;
}

int sample_size_biased_size(const ClassSampler& cs, int ell, Rng& rng, int max_size) {
  const Grown g = grow(cs, rng, ell, max_size, false);
  return g.truncated ? max_size + 1 : g.size;
}

// ---------------------------------------------------------------------------
// Conditioned trees

std::size_t cycle_lemma_shift(std::span<const int> degrees) {
  long sum = 0, best = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    sum += degrees[i] - 1;
    if (sum < best) {
      best = sum;
      at = i + 1;
    }
  }
  if (sum != -1) throw Error(ErrorCode::InvalidArgument, "degrees must sum to length - 1");
  return at % degrees.size();
}

PlaneTree sample_conditioned_gw(const OffspringDistribution& dist, int n, Rng& rng) {
  check_feasible(n, dist.span());
  std::vector<int> xs(n);
  while (true) {
    long sum = 0;
    int i = 0;
    for (; i < n; ++i) {
      xs[i] = dist.sample(rng);
      sum += xs[i];
      if (sum > n - 1) break;
    }
    if (i == n && sum == n - 1) break;
  }
  std::rotate(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(cycle_lemma_shift(xs)), xs.end());
  return plane_tree_from_preorder_degrees(xs);
}

std::optional<UniformMethod> parse_uniform_method(std::string_view s) {
  if (s == "tree_first") return UniformMethod::TreeFirst;
  if (s == "rejection") return UniformMethod::Rejection;
  return std::nullopt;
}

// The multiset of blocks over all n vertices has independent Poisson(n lambda
// p_k) counts per size k. Sizes k >= 2 are drawn directly; the number of
// single-edge blocks is then forced to close the total at n-1 and accepted
// with probability proportional to its Poisson weight. Blocks go to uniform
// owners and the cycle lemma orders the owners depth-first.
UniformDraw sample_uniform_tree_first(const ClassSampler& cs, int n, Rng& rng, bool relabel) {
  check_feasible(n, cs.offspring().span());
  UniformDraw out;
  if (n == 1) {
    out.rooted = {Graph::from_edges(1, {}), 0};
    out.skeleton.children.assign(1, {});
    return out;
  }
  const auto& bp = cs.offspring().block_pmf();
  const double lam = cs.constants().lambda;
  const int kmax = static_cast<int>(bp.size()) - 1;
  const int k0 = std::min(32, kmax);
  double tail_mass = 0.0;
  std::vector<double> tail_cdf;
  for (int k = k0 + 1; k <= kmax; ++k) {
    tail_mass += bp[k];
    tail_cdf.push_back(tail_mass);
  }
  for (auto& c : tail_cdf) c /= tail_mass;
  const double mu1 = n * lam * bp[1];
  const double log_mode = log_poisson(static_cast<long>(std::floor(mu1)), mu1);

  std::vector<int> sizes;
  while (true) {
    sizes.clear();
    long used = 0;
    bool over = false;
    for (int k = 2; k <= k0 && !over; ++k) {
      const long count = poisson(n * lam * bp[k], rng);
      used += count * k;
      if (used > n - 1) over = true;
      sizes.insert(sizes.end(), count, k);
    }
    if (!over && tail_mass > 0.0) {
      const long count = poisson(n * lam * tail_mass, rng);
      for (long i = 0; i < count && !over; ++i) {
        const int k = k0 + 1 + invert(tail_cdf, rng.uniform());
        used += k;
        if (used > n - 1) over = true;
        sizes.push_back(k);
      }
    }
    if (over) continue;
    const long singles = n - 1 - used;
    if (rng.uniform() < std::exp(log_poisson(singles, mu1) - log_mode)) {
      sizes.insert(sizes.end(), singles, 1);
      break;
    }
  }

  // Owners and outdegrees.
  for (int k : sizes) out.largest_block = std::max(out.largest_block, k + 1);
  std::vector<int> owner(sizes.size());
  std::vector<int> degree(n, 0), block_count(n + 1, 0);
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    owner[b] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    degree[owner[b]] += sizes[b];
    ++block_count[owner[b] + 1];
  }
  std::partial_sum(block_count.begin(), block_count.end(), block_count.begin());
  std::vector<int> by_owner(sizes.size());
  {
    std::vector<int> fill(block_count.begin(), block_count.end() - 1);
    for (std::size_t b = 0; b < sizes.size(); ++b) by_owner[fill[owner[b]]++] = sizes[b];
  }

  const std::size_t shift = cycle_lemma_shift(degree);
  std::vector<int> order(n), preorder_degrees(n);
  for (int i = 0; i < n; ++i) {
    order[i] = static_cast<int>((shift + i) % n);
    preorder_degrees[i] = degree[order[i]];
  }
  out.skeleton = plane_tree_from_preorder_degrees(preorder_degrees);

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n + sizes.size());
  const auto& exact = cs.exact_blocks();
  for (int i = 0; i < n; ++i) {
    const auto& kids = out.skeleton.children[i];
    std::size_t next = 0;
    const int src = order[i];
    for (int b = block_count[src]; b < block_count[src + 1]; ++b) {
      const int k = by_owner[b];
      if (k == 1) {
        edges.emplace_back(i, kids[next++]);
        continue;
      }
      const auto blk = exact.sample(k, rng);
      auto global = [&](Vertex local) { return local == 0 ? i : kids[next + local - 1]; };
      for (auto [a, c] : blk.edges) edges.emplace_back(global(a), global(c));
      next += static_cast<std::size_t>(k);
    }
  }
  out.rooted = finish(n, edges, 0, relabel, rng);
  return out;
}

RootedGraph sample_uniform_cn(const ClassSampler& cs, int n, Rng& rng, UniformMethod method, bool relabel) {
  check_feasible(n, cs.offspring().span());
  if (method == UniformMethod::TreeFirst) return sample_uniform_tree_first(cs, n, rng, relabel).rooted;
  while (true) {
    auto g = sample_boltzmann_pointed(cs, rng, n, relabel);
    if (g && g->graph.vertex_count() == n) return std::move(*g);
  }
}

// ---------------------------------------------------------------------------
// Weights

WeightDistribution::WeightDistribution(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

WeightDistribution WeightDistribution::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::NonPositiveWeight, "constant weight must be > 0");
  return {Kind::Constant, c, 0.0};
}

WeightDistribution WeightDistribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw Error(ErrorCode::NonPositiveWeight, "uniform weights need 0 <= a < b");
  }
  return {Kind::Uniform, a, b};
}

WeightDistribution WeightDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw Error(ErrorCode::NonPositiveWeight, "rate must be > 0");
  return {Kind::Exponential, rate, 0.0};
}

WeightDistribution WeightDistribution::geometric(double p) {
  if (!(p > 0.0) || p > 1.0) throw Error(ErrorCode::NonPositiveWeight, "geometric needs 0 < p <= 1");
  return {Kind::Geometric, p, 0.0};
}

namespace {

std::vector<double> parse_numbers(std::string_view s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string part(s.substr(pos, comma - pos));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad number '" + part + "'");
    }
    if (used != part.size()) throw Error(ErrorCode::ParseError, "bad number '" + part + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

WeightDistribution WeightDistribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "weight spec needs kind:params");
  const auto kind = text.substr(0, colon);
  const auto args = parse_numbers(text.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw Error(ErrorCode::ParseError, "wrong parameter count in weight spec");
  };
  if (kind == "constant") {
    need(1);
    return constant(args[0]);
  }
  if (kind == "uniform") {
    need(2);
    return uniform(args[0], args[1]);
  }
  if (kind == "exp" || kind == "exponential") {
    need(1);
    return exponential(args[0]);
  }
  if (kind == "geometric") {
    need(1);
    return geometric(args[0]);
  }
  throw Error(ErrorCode::ParseError, "unknown weight kind '" + std::string(kind) + "'");
}

double WeightDistribution::mean() const {
  switch (kind_) {
    case Kind::Constant: return a_;
    case Kind::Uniform: return (a_ + b_) / 2.0;
    case Kind::Exponential: return 1.0 / a_;
    case Kind::Geometric: return 1.0 / a_;
  }
  return 0.0;
}

double WeightDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::Constant: return a_;
    case Kind::Uniform: return a_ + (b_ - a_) * rng.uniform_open();
    case Kind::Exponential: return -std::log(rng.uniform_open()) / a_;
    case Kind::Geometric: {
      if (a_ >= 1.0) return 1.0;
      return 1.0 + std::floor(std::log(rng.uniform_open()) / std::log1p(-a_));
    }
  }
  return 0.0;
}

std::string WeightDistribution::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::Constant: out << "constant:" << a_; break;
    case Kind::Uniform: out << "uniform:" << a_ << ',' << b_; break;
    case Kind::Exponential: out << "exp:" << a_; break;
    case Kind::Geometric: out << "geometric:" << a_; break;
  }
  return out.str();
}

Graph assign_weights(const Graph& g, const WeightDistribution& w, Rng& rng) {
  std::vector<double> weights(g.edge_count());
  for (auto& x : weights) x = w.sample(rng);
  return g.with_weights(weights);
}

}  // namespace subcrit

#include "subcrit/classes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "subcrit/error.hpp"

namespace subcrit {

namespace {

constexpr double kTailTolerance = 1e-12;

const std::array<std::pair<std::string_view, ClassId>, 5> kNames{{
    {"trees", ClassId::Trees},
    {"forb_c4", ClassId::ForbC4},
    {"forb_c5", ClassId::ForbC5},
    {"cacti", ClassId::Cacti},
    {"outerplanar", ClassId::Outerplanar},
}};

double op_q(double x) { return std::max(0.0, x * x - 6.0 * x + 1.0); }

}  // namespace

const std::vector<std::string>& class_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, id] : kNames) v.emplace_back(name);
    return v;
  }();
  return names;
}

// ---------------------------------------------------------------------------
// BlockSample

Graph BlockSample::graph() const { return Graph::from_edges(size + 1, edges); }

PointedBlock BlockSample::pointed() const { return {graph(), 0, root}; }

void BlockSample::shuffle(Rng& rng) {
  std::vector<Vertex> perm(size + 1);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = size; i > 1; --i) {
    const int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    std::swap(perm[i], perm[j]);
  }
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  root = perm[root];
}

// ---------------------------------------------------------------------------
// Outerplanar helpers

double outerplanar_ba(double x) { return (1.0 + x - std::sqrt(op_q(x))) / 4.0; }

double outerplanar_ba_prime(double x) { return (1.0 - (x - 3.0) / std::sqrt(op_q(x))) / 4.0; }

double outerplanar_bra(double x) {
  const double w = outerplanar_ba(x);
  return x * (w - 1.0) * (w - 1.0) / (2.0 * w * w - 4.0 * w + 1.0);
}

namespace {

struct System3 {
  std::array<std::array<double, 3>, 3> a;
  std::array<double, 3> b;
};

System3 outerplanar_system(double w) {
  const double w2 = w * w, w3 = w2 * w, w4 = w3 * w;
  const double diag = 2 * w4 - 4 * w3 + 3 * w - 1;
  const double off = -w3 + w2;
  const double m = w3 - 2 * w2 + w;
  const double r = -w2 + w;
  System3 s;
  s.a = {{{diag, off, m}, {off, diag, m}, {r, r, 2 * w4 - 4 * w3 + w2 + 2 * w - 1}}};
  s.b = {2 * w4 - 4 * w3 - w2 + 3 * w - 1, -w, -w2};
  return s;
}

double det3(const std::array<std::array<double, 3>, 3>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace

double outerplanar_system_det(double w) { return det3(outerplanar_system(w).a); }

double outerplanar_expected_s(double w) {
  const auto s = outerplanar_system(w);
  const double det = det3(s.a);
  if (std::abs(det) < 1e-9) throw Error(ErrorCode::SingularSystem, "outerplanar system is singular");
  // Cramer's rule for the first unknown.
  auto a = s.a;
  for (int i = 0; i < 3; ++i) a[i][0] = s.b[i];
  return det3(a) / det;
}

// ---------------------------------------------------------------------------
// ClassSpec

ClassSpec ClassSpec::make(std::string_view name) {
  for (const auto& [n, id] : kNames) {
    if (n == name) {
      ClassSpec s;
      s.id_ = id;
      s.name_ = std::string(n);
      return s;
    }
  }
  throw Error(ErrorCode::UnknownClass, "unknown class '" + std::string(name) + "'");
}

double ClassSpec::radius() const {
  switch (id_) {
    case ClassId::Cacti: return 1.0;
    case ClassId::Outerplanar: return 3.0 - 2.0 * std::sqrt(2.0);
    default: return std::numeric_limits<double>::infinity();
  }
}

// Closed forms. Derivatives were taken by hand:
//   forb_c5   B'   = (z^2+2z)e^z - (2z^3+15z^2+6z)/6
//             B''  = (z^2+4z+2)e^z - (z^2+5z+1)
//             B''' = (z^2+6z+6)e^z - (2z+5)
//   cacti     B'   = z + z^2/(2(1-z)),  B'' = 1/2 + 1/(2(1-z)^2),  B''' = 1/(1-z)^3
//   outerpl.  B'   = (z+Ba)/2,  B'' = (1+Ba')/2,  B''' = Ba''/2 = (z^2-6z+1)^(-3/2)
double ClassSpec::b1(double x) const {
  switch (id_) {
    case ClassId::Trees: return x;
    case ClassId::ForbC4: return x + x * x / 2.0;
    case ClassId::ForbC5:
      return (x * x + 2 * x) * std::exp(x) - (2 * x * x * x + 15 * x * x + 6 * x) / 6.0;
    case ClassId::Cacti: return x + x * x / (2.0 * (1.0 - x));
    case ClassId::Outerplanar: return (x + outerplanar_ba(x)) / 2.0;
  }
  return 0.0;
}

double ClassSpec::b2(double x) const {
  switch (id_) {
    case ClassId::Trees: return 1.0;
    case ClassId::ForbC4: return 1.0 + x;
    case ClassId::ForbC5: return (x * x + 4 * x + 2) * std::exp(x) - (x * x + 5 * x + 1);
    case ClassId::Cacti: return 0.5 + 0.5 / ((1.0 - x) * (1.0 - x));
    case ClassId::Outerplanar: return (1.0 + outerplanar_ba_prime(x)) / 2.0;
  }
  return 0.0;
}

double ClassSpec::b3(double x) const {
  switch (id_) {
    case ClassId::Trees: return 0.0;
    case ClassId::ForbC4: return 1.0;
    case ClassId::ForbC5: return (x * x + 6 * x + 6) * std::exp(x) - (2 * x + 5);
    case ClassId::Cacti: return 1.0 / std::pow(1.0 - x, 3);
    case ClassId::Outerplanar: return std::pow(op_q(x), -1.5);
  }
  return 0.0;
}

namespace {

// Ba = z + 2 Ba^2 - z Ba, coefficientwise; T is double (scaled by s) or Rational.
template <class T>
std::vector<T> outerplanar_ba_coeffs(std::size_t order, const T& s) {
  std::vector<T> a(order, T(0));
  for (std::size_t n = 1; n < order; ++n) {
    T acc(0);
    for (std::size_t i = 1; i < n; ++i) acc += a[i] * a[n - i];
    acc *= T(2);
    if (n == 1) acc += s;
    if (n >= 2) acc -= s * a[n - 1];
    a[n] = acc;
  }
  return a;
}

}  // namespace

RealSeries ClassSpec::b1_series(std::size_t order, double scale) const {
  std::vector<double> c(order, 0.0);
  switch (id_) {
    case ClassId::Trees:
      if (order > 1) c[1] = scale;
      break;
    case ClassId::ForbC4:
      if (order > 1) c[1] = scale;
      if (order > 2) c[2] = scale * scale / 2.0;
      break;
    case ClassId::ForbC5: {
      // |B'_m| = 1, 1, 10 for m = 1, 2, 3 and m(m+1) beyond.
      double p = 1.0;  // scale^m / m!
      for (std::size_t m = 1; m < order; ++m) {
        p *= scale / static_cast<double>(m);
        const double count = m == 1 ? 1.0 : m == 2 ? 1.0 : m == 3 ? 10.0 : double(m) * double(m + 1);
        c[m] = count * p;
      }
      break;
    }
    case ClassId::Cacti: {
      double p = scale;
      for (std::size_t m = 1; m < order; ++m) {
        c[m] = m == 1 ? p : p / 2.0;
        p *= scale;
      }
      break;
    }
    case ClassId::Outerplanar: {
      const auto a = outerplanar_ba_coeffs<double>(order, scale);
      for (std::size_t m = 1; m < order; ++m) c[m] = ((m == 1 ? scale : 0.0) + a[m]) / 2.0;
      break;
    }
  }
  return RealSeries(std::move(c));
}

ExactSeries ClassSpec::b1_series_exact(std::size_t order) const {
  std::vector<Rational> c(order, Rational(0));
  switch (id_) {
    case ClassId::Trees:
      if (order > 1) c[1] = 1;
      break;
    case ClassId::ForbC4:
      if (order > 1) c[1] = 1;
      if (order > 2) c[2] = Rational(1, 2);
      break;
    case ClassId::ForbC5: {
      BigInt fact = 1;
      for (std::size_t m = 1; m < order; ++m) {
        fact *= static_cast<long>(m);
        const long count = m == 1 ? 1 : m == 2 ? 1 : m == 3 ? 10 : long(m) * long(m + 1);
        c[m] = Rational(BigInt(count), fact);
      }
      break;
    }
    case ClassId::Cacti:
      for (std::size_t m = 1; m < order; ++m) c[m] = m == 1 ? Rational(1) : Rational(1, 2);
      break;
    case ClassId::Outerplanar: {
      const auto a = outerplanar_ba_coeffs<Rational>(order, Rational(1));
      for (std::size_t m = 1; m < order; ++m) c[m] = ((m == 1 ? Rational(1) : Rational(0)) + a[m]) / 2;
      break;
    }
  }
  return ExactSeries(std::move(c));
}

double ClassSpec::kappa_analytic(double y) const {
  switch (id_) {
    case ClassId::Trees:
    case ClassId::ForbC4:
      return 1.0;
    case ClassId::ForbC5:
      return (2 * y * y + 4 * y + 3) * y * std::exp(y) - (3 * y * y + 12 * y + 4) * y / 2.0;
    case ClassId::Cacti:
      return (y * y * y * y - 2 * y * y * y + 2 * y - 2) /
             ((y * y - 2 * y + 2) * (1 + y) * (y - 1));
    case ClassId::Outerplanar:
      return y / 2.0 + (1.0 - y / 2.0) * outerplanar_expected_s(outerplanar_ba(y));
  }
  return 0.0;
}

int ClassSpec::span() const {
  // Block sizes generate the offspring support; 0 is always in it.
  const auto s = b1_series(kDefaultSeriesOrder);
  int g = 0;
  for (std::size_t k = 1; k < s.order(); ++k) {
    if (s[k] > 0) g = std::gcd(g, static_cast<int>(k));
  }
  return g == 0 ? 1 : g;
}

namespace {

bool is_k2(const Graph& b) { return b.vertex_count() == 2 && b.edge_count() == 1; }

bool is_cycle(const Graph& b) {
  const int n = b.vertex_count();
  if (n < 3 || static_cast<int>(b.edge_count()) != n) return false;
  for (Vertex v = 0; v < n; ++v) {
    if (b.degree(v) != 2) return false;
  }
  return b.is_connected();
}

// K4, K_{2,m} (m >= 2) or K+_{2,m} (m >= 1).
bool is_c5_family(const Graph& b) {
  const int n = b.vertex_count();
  const auto m = static_cast<long>(b.edge_count());
  if (n == 3) return m == 3;
  if (n == 4) return m >= 4;  // every 2-connected graph on 4 vertices: C4, K4-e, K4
  std::vector<Vertex> hubs;
  for (Vertex v = 0; v < n; ++v) {
    if (b.degree(v) >= 3) hubs.push_back(v);
  }
  if (hubs.size() != 2) return false;
  const Vertex a = hubs[0], c = hubs[1];
  for (Vertex v = 0; v < n; ++v) {
    if (v == a || v == c) continue;
    if (b.degree(v) != 2 || !b.has_edge(v, a) || !b.has_edge(v, c)) return false;
  }
  return m == 2L * (n - 2) + (b.has_edge(a, c) ? 1 : 0);
}

bool is_block(const Graph& g) {
  if (g.vertex_count() < 2 || !g.is_connected()) return false;
  return block_decompose(g).blocks.size() == 1;
}

}  // namespace

bool ClassSpec::block_member(const Graph& block) const {
  if (is_k2(block)) return true;
  if (!is_block(block)) return false;
  switch (id_) {
    case ClassId::Trees: return false;
    case ClassId::ForbC4: return block.vertex_count() == 3;
    case ClassId::ForbC5: return is_c5_family(block);
    case ClassId::Cacti: return is_cycle(block);
    case ClassId::Outerplanar: return is_outerplanar_block(block);
  }
  return false;
}

bool class_membership(const ClassSpec& spec, const Graph& g) {
  const auto dec = block_decompose(g);
  for (const auto& verts : dec.blocks) {
    if (verts.size() < 2) continue;
    if (!spec.block_member(g.induced(verts))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Block samplers

namespace {

// Uniform labeled derived block of size k for the classes with explicit
// families. Labels are already uniform; no shuffle needed.
BlockSample family_block(ClassId id, int k, Rng& rng) {
  BlockSample b;
  b.size = k;
  if (k == 1) {
    b.edges = {{0, 1}};
    return b;
  }
  switch (id) {
    case ClassId::ForbC4:
      b.edges = {{0, 1}, {0, 2}, {1, 2}};
      return b;
    case ClassId::Cacti: {
      b.edges.reserve(k + 1);
      for (int i = 0; i < k; ++i) b.edges.emplace_back(i, i + 1);
      b.edges.emplace_back(k, 0);
      b.shuffle(rng);
      return b;
    }
    case ClassId::ForbC5: {
      if (k == 2) {
        b.edges = {{0, 1}, {0, 2}, {1, 2}};
        return b;
      }
      // Labeled counts: K4 1, C4 3, K4-e 6 at k = 3; K_{2,k-1} and K+_{2,k-1}
      // each C(k+1,2) for k >= 4, all determined by their pair of hubs.
      bool plus = false;
      if (k == 3) {
        const auto r = rng.below(10);
        if (r == 0) {
          b.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
          return b;
        }
        plus = r >= 4;
      } else {
        plus = rng.below(2) == 1;
      }
      const int n = k + 1;
      const int a = static_cast<int>(rng.below(n));
      int c = static_cast<int>(rng.below(n - 1));
      if (c >= a) ++c;
      for (int v = 0; v < n; ++v) {
        if (v == a || v == c) continue;
        b.edges.emplace_back(v, a);
        b.edges.emplace_back(v, c);
      }
      if (plus) b.edges.emplace_back(a, c);
      return b;
    }
    default:
      throw Error(ErrorCode::InfeasibleSize, "no derived block of this size");
  }
}

bool family_feasible(ClassId id, int k) {
  if (k < 1) return false;
  switch (id) {
    case ClassId::Trees: return k == 1;
    case ClassId::ForbC4: return k <= 2;
    default: return true;
  }
}

void build_table(const std::vector<double>& weights, std::vector<double>& pmf, std::vector<double>& cdf) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  pmf.resize(weights.size());
  cdf.resize(weights.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    pmf[k] = weights[k] / total;
    acc += pmf[k];
    cdf[k] = acc;
  }
  cdf.back() = 1.0;
}

int geometric_failures(double w, Rng& rng) {
  int j = 0;
  while (rng.bernoulli(w)) ++j;
  return j;
}

}  // namespace

BlockSampler::BlockSampler(const ClassSpec& spec, double x) : spec_(spec), x_(x) {
  const double r = spec.radius();
  if (!(x > 0.0) || x > r) throw Error(ErrorCode::ParameterOutOfRange, "Boltzmann parameter outside (0, radius]");
  if (spec.id() == ClassId::Cacti && x >= r) {
    throw Error(ErrorCode::ParameterOutOfRange, "cactus blocks diverge at x = 1");
  }
  const bool op = spec.id() == ClassId::Outerplanar;
  if (op) {
    ba_ = outerplanar_ba(x);
    bra_ = x < r ? outerplanar_bra(x) : std::numeric_limits<double>::infinity();
    if (!(ba_ < 0.5)) throw Error(ErrorCode::ParameterOutOfRange, "Ba(x) must be < 1/2");
    // x/Bra + sum_{i>=3} (i-1) Ba^{i-2} = 1 exactly when 2(1-Ba)^2 > 1.
    if (x < r) {
      const double total = x / bra_ + 1.0 / ((1.0 - ba_) * (1.0 - ba_)) - 1.0;
      if (!(bra_ > 0.0) || std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::ParameterOutOfRange, "face size distribution does not sum to 1");
      }
    }
    if (x >= r) return;  // heavy tail: no tables; the recursive sampler needs none
  }

  const double want_derived = spec.b1(x);
  const double want_pointed = x * spec.b2(x);
  const std::size_t max_cutoff = op ? (1u << 15) : (1u << 16);
  for (std::size_t cutoff = 512;; cutoff *= 2) {
    const auto s = spec.b1_series(cutoff + 1, x);
    std::vector<double> wd(cutoff + 1, 0.0), wp(cutoff + 1, 0.0);
    double sd = 0.0, sp = 0.0;
    for (std::size_t k = 1; k <= cutoff; ++k) {
      wd[k] = s[k];
      wp[k] = static_cast<double>(k) * s[k];
      sd += wd[k];
      sp += wp[k];
    }
    const double tail_d = 1.0 - sd / want_derived;
    const double tail_p = 1.0 - sp / want_pointed;
    if (tail_d <= kTailTolerance && tail_p <= kTailTolerance) {
      build_table(wd, derived_pmf_, derived_cdf_);
      build_table(wp, pointed_pmf_, pointed_cdf_);
      return;
    }
    if (cutoff * 2 > max_cutoff) {
      throw Error(ErrorCode::ParameterOutOfRange, "block size tail mass exceeds 1e-12");
    }
  }
}

int BlockSampler::draw_from(const std::vector<double>& cdf, Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

int BlockSampler::derived_size(Rng& rng) const {
  if (spec_.id() == ClassId::Outerplanar) return outerplanar_draw(rng, false, std::numeric_limits<int>::max()).size;
  return draw_from(derived_cdf_, rng);
}

BlockSample BlockSampler::derived(Rng& rng) const {
  if (spec_.id() == ClassId::Outerplanar) {
    auto b = outerplanar_draw(rng, false, std::numeric_limits<int>::max());
    b.shuffle(rng);
    return b;
  }
  return family_block(spec_.id(), draw_from(derived_cdf_, rng), rng);
}

BlockSample BlockSampler::pointed(Rng& rng) const {
  if (spec_.id() == ClassId::Outerplanar) {
    if (!std::isfinite(bra_)) throw Error(ErrorCode::ParameterOutOfRange, "pointed blocks diverge at this x");
    auto b = outerplanar_draw(rng, true, std::numeric_limits<int>::max());
    b.shuffle(rng);
    return b;
  }
  const int k = draw_from(pointed_cdf_, rng);
  auto b = family_block(spec_.id(), k, rng);
  b.root = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  return b;
}

// Recursive outerplanar sampler run on an explicit stack. A task (tail, head)
// builds one Ba object (or Bra object) whose root edge is tail->head; faces
// are v1 = tail, v2, ..., vs = head and edge (vi, vi+1) carries a sub-object.
// Returns size -1 when the block would exceed size_cap.
BlockSample BlockSampler::outerplanar_draw(Rng& rng, bool pointed, int size_cap) const {
  struct Task {
    Vertex tail, head;
    bool bra;
  };
  BlockSample out;
  out.size = 1;
  out.root = 1;
  const double edge_p = pointed ? x_ / (x_ + bra_) : x_ / (x_ + ba_);
  if (rng.uniform() < edge_p) {
    out.edges = {{0, 1}};
    return out;
  }
  std::vector<Task> stack{{0, 1, pointed}};
  std::vector<Vertex> face;
  long frames = 0;
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    if (++frames > kRunawayFrames) throw Error(ErrorCode::SamplerRunaway, "outerplanar sampler runaway");
    out.edges.emplace_back(task.tail, task.head);
    int sub = 0;     // number of face edges other than the root edge
    int marked = -1; // face edge carrying the Bra object
    if (task.bra) {
      if (rng.uniform() < x_ / bra_) {
        out.root = task.head;
        continue;
      }
      int m = 0;
      while (m == 0) m = geometric_failures(ba_, rng) + geometric_failures(ba_, rng);
      sub = m + 1;
      marked = static_cast<int>(rng.below(static_cast<std::uint64_t>(sub)));
    } else {
      if (rng.uniform() < x_ / ba_) continue;
      sub = 2 + geometric_failures(ba_, rng);
    }
    face.assign(1, task.tail);
    for (int i = 1; i < sub; ++i) face.push_back(out.size + i);
    face.push_back(task.head);
    out.size += sub - 1;
    if (out.size > size_cap) {
      out.size = -1;
      return out;
    }
    for (int i = 0; i < sub; ++i) stack.push_back({face[i], face[i + 1], i == marked});
  }
  return out;
}

ExactBlockSampler::ExactBlockSampler(const ClassSpec& spec) : spec_(spec) {
  if (spec.id() != ClassId::Outerplanar) return;
  boltzmann_.emplace(spec, spec.radius());
  const int kmax = kOuterplanarTableSize;
  ba_.assign(kmax + 1, 0.0);
  split_.assign(kmax + 1, 0.0);
  std::vector<double> seq(kmax + 1, 0.0);
  ba_[1] = seq[1] = spec.radius();
  for (int n = 2; n <= kmax; ++n) {
    double t = 0.0;
    for (int i = 1; i < n; ++i) t += ba_[i] * seq[n - i];
    split_[n] = t;
    ba_[n] = t;
    seq[n] = 2.0 * t;
  }
}

bool ExactBlockSampler::feasible(int k) const { return family_feasible(spec_.id(), k); }

// Ba of size n >= 2 is a face whose edges carry Ba objects with sizes summing
// to n; the first part is i with weight ba[i] seq[n-i], and a sequence of size
// m stops with a single part with probability ba[m] / seq[m].
BlockSample ExactBlockSampler::outerplanar_exact(int k, Rng& rng) const {
  struct Task {
    Vertex tail, head;
    int size;
  };
  const auto seq = [&](int m) { return m == 1 ? ba_[1] : 2.0 * split_[m]; };
  const auto first_part = [&](int n) {
    double u = rng.uniform() * split_[n];
    for (int i = 1; i < n - 1; ++i) {
      u -= ba_[i] * seq(n - i);
      if (u < 0) return i;
    }
    return n - 1;
  };
  BlockSample out;
  out.size = 1;
  std::vector<Task> stack{{0, 1, k}};
  std::vector<int> parts;
  std::vector<Vertex> face;
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    out.edges.emplace_back(task.tail, task.head);
    if (task.size == 1) continue;
    parts.clear();
    int rest = task.size;
    int i = first_part(rest);
    parts.push_back(i);
    rest -= i;
    while (!(rest == 1 || rng.uniform() < ba_[rest] / seq(rest))) {
      i = first_part(rest);
      parts.push_back(i);
      rest -= i;
    }
    parts.push_back(rest);
    const int sub = static_cast<int>(parts.size());
    face.assign(1, task.tail);
    for (int j = 1; j < sub; ++j) face.push_back(out.size + j);
    face.push_back(task.head);
    out.size += sub - 1;
    for (int j = 0; j < sub; ++j) stack.push_back({face[j], face[j + 1], parts[j]});
  }
  return out;
}

BlockSample ExactBlockSampler::sample(int k, Rng& rng) const {
  if (!feasible(k)) throw Error(ErrorCode::InfeasibleSize, "no derived block of size " + std::to_string(k));
  if (spec_.id() != ClassId::Outerplanar) return family_block(spec_.id(), k, rng);
  if (k == 1) return family_block(ClassId::Trees, 1, rng);
  if (k <= kOuterplanarTableSize) {
    auto b = outerplanar_exact(k, rng);
    b.shuffle(rng);
    return b;
  }
  // Boltzmann at the radius is conditioned on size k by rejection.
  while (true) {
    auto b = boltzmann_->outerplanar_draw(rng, false, k);
    if (b.size == k) {
      b.shuffle(rng);
      return b;
    }
  }
}

PointedBlock sample_pointed_block(const ClassSpec& spec, double x, Rng& rng) {
  return BlockSampler(spec, x).pointed(rng).pointed();
}

}  // namespace subcrit

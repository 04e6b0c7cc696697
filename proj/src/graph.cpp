#include "subcrit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

#include "subcrit/error.hpp"

namespace subcrit {

// ---------------------------------------------------------------------------
// Graph

Graph Graph::from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (auto [u, v] : edges) es.push_back({u, v, 1.0});
  Graph g = from_weighted_edges(n, es);
  g.weights_.clear();
  return g;
}

Graph Graph::from_weighted_edges(int n, std::span<const Edge> edges) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  Graph g;
  g.n_ = n;
  std::vector<int> deg(n, 0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (e.u == e.v) throw Error(ErrorCode::InvalidArgument, "self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonPositiveWeight, "edge weights must be finite and > 0");
    }
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  std::vector<std::pair<Vertex, double>> slots(g.offsets_[n]);
  std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) {
    slots[fill[e.u]++] = {e.v, e.weight};
    slots[fill[e.v]++] = {e.u, e.weight};
  }
  g.targets_.resize(slots.size());
  g.weights_.resize(slots.size());
  for (int v = 0; v < n; ++v) {
    auto first = slots.begin() + g.offsets_[v];
    auto last = slots.begin() + g.offsets_[v + 1];
    std::sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (it != first && it->first == (it - 1)->first) {
        throw Error(ErrorCode::InvalidArgument, "parallel edge");
      }
      const auto idx = static_cast<std::size_t>(it - slots.begin());
      g.targets_[idx] = it->first;
      g.weights_[idx] = it->second;
    }
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double Graph::edge_weight(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) throw Error(ErrorCode::InvalidArgument, "no such edge");
  if (weights_.empty()) return 1.0;
  return weights_[offsets_[u] + (it - nb.begin())];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    for (int i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      if (targets_[i] > u) out.push_back({u, targets_[i], weights_.empty() ? 1.0 : weights_[i]});
    }
  }
  return out;
}

Graph Graph::with_weights(std::span<const double> per_edge) const {
  auto es = edges();
  if (per_edge.size() != es.size()) {
    throw Error(ErrorCode::InvalidArgument, "weight count does not match edge count");
  }
  for (std::size_t i = 0; i < es.size(); ++i) es[i].weight = per_edge[i];
  return from_weighted_edges(n_, es);
}

Graph Graph::without_weights() const {
  Graph g = *this;
  g.weights_.clear();
  return g;
}

Graph Graph::relabeled(std::span<const Vertex> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw Error(ErrorCode::InvalidArgument, "bad permutation");
  auto es = edges();
  for (auto& e : es) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  Graph g = from_weighted_edges(n_, es);
  if (weights_.empty()) g.weights_.clear();
  return g;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  std::vector<int> local(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vertex u = vertices[i];
    for (int k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      const int j = local[targets_[k]];
      if (j > static_cast<int>(i)) {
        es.push_back({static_cast<int>(i), j, weights_.empty() ? 1.0 : weights_[k]});
      }
    }
  }
  Graph g = from_weighted_edges(static_cast<int>(vertices.size()), es);
  if (weights_.empty()) g.weights_.clear();
  return g;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return n_ == 1;
  auto d = bfs_distances(*this, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x == kUnreachable; });
}

// ---------------------------------------------------------------------------
// Block decomposition

BlockDecomposition block_decompose(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "empty graph");
  BlockDecomposition out;
  out.vertex_blocks.assign(n, {});
  if (n == 1) {
    out.blocks.push_back({0});
    out.block_edges.emplace_back();
    out.vertex_blocks[0].push_back(0);
    out.block_tree.assign(1, {});
    return out;
  }

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<Vertex, Vertex>> edge_stack;
  struct Frame {
    Vertex v;
    Vertex parent;
    int next;
  };
  std::vector<Frame> stack;
  int timer = 0;
  disc[0] = low[0] = timer++;
  stack.push_back({0, -1, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto nb = g.neighbors(f.v);
    if (f.next < static_cast<int>(nb.size())) {
      const Vertex w = nb[f.next++];
      if (disc[w] == -1) {
        edge_stack.emplace_back(f.v, w);
        disc[w] = low[w] = timer++;
        stack.push_back({w, f.v, 0});
      } else if (w != f.parent && disc[w] < disc[f.v]) {
        edge_stack.emplace_back(f.v, w);
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const Vertex w = f.v;
    const Vertex v = f.parent;
    stack.pop_back();
    if (v < 0) break;
    low[v] = std::min(low[v], low[w]);
    if (low[w] >= disc[v]) {
      std::vector<std::pair<Vertex, Vertex>> bedges;
      std::vector<Vertex> verts;
      while (true) {
        auto e = edge_stack.back();
        edge_stack.pop_back();
        bedges.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
        verts.push_back(e.first);
        verts.push_back(e.second);
        if (e.first == v && e.second == w) break;
      }
      std::sort(verts.begin(), verts.end());
      verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
      std::sort(bedges.begin(), bedges.end());
      out.blocks.push_back(std::move(verts));
      out.block_edges.push_back(std::move(bedges));
    }
  }
  if (std::any_of(disc.begin(), disc.end(), [](int d) { return d == -1; })) {
    throw Error(ErrorCode::Disconnected, "graph is not connected");
  }

  const int nb = static_cast<int>(out.blocks.size());
  for (int b = 0; b < nb; ++b) {
    for (Vertex v : out.blocks[b]) out.vertex_blocks[v].push_back(b);
  }
  std::vector<int> cut_index(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (out.vertex_blocks[v].size() > 1) {
      cut_index[v] = static_cast<int>(out.cutvertices.size());
      out.cutvertices.push_back(v);
    }
  }
  out.block_tree.assign(nb + out.cutvertices.size(), {});
  for (int b = 0; b < nb; ++b) {
    for (Vertex v : out.blocks[b]) {
      if (cut_index[v] >= 0) {
        out.block_tree[b].push_back(nb + cut_index[v]);
        out.block_tree[nb + cut_index[v]].push_back(b);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enriched trees

namespace {

Graph local_block_graph(const Graph& g, Vertex star, const std::vector<Vertex>& members,
                        const std::vector<std::pair<Vertex, Vertex>>& bedges) {
  auto local_of = [&](Vertex v) {
    if (v == star) return 0;
    return static_cast<int>(std::lower_bound(members.begin(), members.end(), v) - members.begin()) + 1;
  };
  std::vector<Edge> es;
  es.reserve(bedges.size());
  for (auto [u, v] : bedges) es.push_back({local_of(u), local_of(v), g.edge_weight(u, v)});
  Graph local = Graph::from_weighted_edges(static_cast<int>(members.size()) + 1, es);
  return g.has_weights() ? local : local.without_weights();
}

}  // namespace

EnrichedTree to_enriched_tree(const Graph& g, Vertex root) {
  const int n = g.vertex_count();
  if (root < 0 || root >= n) throw Error(ErrorCode::InvalidArgument, "root out of range");
  const auto dec = block_decompose(g);
  EnrichedTree t;
  t.root = root;
  t.parent.assign(n, -1);
  t.children.assign(n, {});
  t.enrichment.assign(n, {});
  t.depth.assign(n, 0);
  std::vector<char> used(dec.blocks.size(), 0);
  std::queue<Vertex> queue;
  queue.push(root);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    for (int b : dec.vertex_blocks[v]) {
      if (used[b]) continue;
      used[b] = 1;
      if (dec.blocks[b].size() < 2) continue;
      EnrichedBlock eb;
      eb.star = v;
      for (Vertex u : dec.blocks[b]) {
        if (u != v) eb.members.push_back(u);
      }
      eb.local = local_block_graph(g, v, eb.members, dec.block_edges[b]);
      for (Vertex u : eb.members) {
        t.parent[u] = v;
        t.depth[u] = t.depth[v] + 1;
        t.children[v].push_back(u);
        queue.push(u);
      }
      t.enrichment[v].push_back(std::move(eb));
    }
  }
  return t;
}

Graph reassemble(const EnrichedTree& t, int n, bool keep_weights) {
  std::vector<Edge> es;
  for (const auto& blocks : t.enrichment) {
    for (const auto& b : blocks) {
      auto global = [&](Vertex local) { return local == 0 ? b.star : b.members[local - 1]; };
      for (const auto& e : b.local.edges()) es.push_back({global(e.u), global(e.v), e.weight});
    }
  }
  Graph g = Graph::from_weighted_edges(n, es);
  return keep_weights ? g : g.without_weights();
}

// ---------------------------------------------------------------------------
// Distances

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<double> dijkstra_distances(const Graph& g, Vertex source) {
  if (!g.has_weights() && g.edge_count() > 0) throw Error(ErrorCode::MissingWeights, "graph has no edge weights");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.vertex_count(), inf);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    auto nb = g.neighbors(v);
    auto wt = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const double nd = d + wt[i];
      if (nd < dist[nb[i]]) {
        dist[nb[i]] = nd;
        heap.emplace(nd, nb[i]);
      }
    }
  }
  return dist;
}

int hop_distance(const Graph& g, Vertex u, Vertex v) {
  const int d = bfs_distances(g, u)[v];
  if (d == kUnreachable) throw Error(ErrorCode::Disconnected, "vertices are not connected");
  return d;
}

double weighted_distance(const Graph& g, Vertex u, Vertex v) {
  const double d = dijkstra_distances(g, u)[v];
  if (!std::isfinite(d)) throw Error(ErrorCode::Disconnected, "vertices are not connected");
  return d;
}

int height(const Graph& g, Vertex root) {
  const auto d = bfs_distances(g, root);
  int h = 0;
  for (int x : d) {
    if (x == kUnreachable) throw Error(ErrorCode::Disconnected, "graph is not connected");
    h = std::max(h, x);
  }
  return h;
}

double weighted_height(const Graph& g, Vertex root) {
  const auto d = dijkstra_distances(g, root);
  double h = 0.0;
  for (double x : d) {
    if (!std::isfinite(x)) throw Error(ErrorCode::Disconnected, "graph is not connected");
    h = std::max(h, x);
  }
  return h;
}

namespace {

// Longest shortest path, assembled over the block tree rooted at vertex 0.
// down[v] is the largest distance from v to a vertex below it; inside a block
// with top vertex p a longest path either turns at p (two child blocks) or
// passes through two non-top vertices of the same block.
template <class Dist, class BlockDistances>
Dist block_tree_diameter(const Graph& g, BlockDistances&& distances_from) {
  const int n = g.vertex_count();
  if (n <= 1) return Dist(0);
  const auto dec = block_decompose(g);
  const int nb = static_cast<int>(dec.blocks.size());

  std::vector<int> parent_block(n, -1), top(nb, -1);
  std::vector<Vertex> order;
  order.reserve(n);
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    for (int b : dec.vertex_blocks[v]) {
      if (top[b] != -1) continue;
      top[b] = v;
      for (Vertex u : dec.blocks[b]) {
        if (u != v) {
          parent_block[u] = b;
          order.push_back(u);
        }
      }
    }
  }

  std::vector<std::vector<Vertex>> members_of(nb);
  std::vector<Dist> down(n, Dist(0)), best1(n, Dist(0)), best2(n, Dist(0));
  Dist diam(0);
  auto offer = [&](Vertex v, Dist c) {
    if (c > best1[v]) {
      best2[v] = best1[v];
      best1[v] = c;
    } else if (c > best2[v]) {
      best2[v] = c;
    }
  };

  // Children are discovered after their parent, so reverse discovery order
  // finalizes down[] below a block before the block itself is processed.
  std::vector<char> done(nb, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    for (int b : dec.vertex_blocks[v]) {
      if (b == parent_block[v] || done[b]) continue;
      done[b] = 1;
      const auto& verts = dec.blocks[b];
      const int k = static_cast<int>(verts.size());
      // Local indices follow the sorted vertex list.
      std::vector<Edge> es;
      es.reserve(dec.block_edges[b].size());
      auto local = [&](Vertex x) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), x) - verts.begin());
      };
      for (auto [x, y] : dec.block_edges[b]) es.push_back({local(x), local(y), g.edge_weight(x, y)});
      Graph lg = Graph::from_weighted_edges(k, es);
      if (!g.has_weights()) lg = lg.without_weights();
      const int p = local(v);
      Dist top_contribution(0);
      for (int i = 0; i < k; ++i) {
        const auto dist = distances_from(lg, i);
        if (i == p) {
          for (int j = 0; j < k; ++j) {
            if (j != p) top_contribution = std::max(top_contribution, Dist(dist[j]) + down[verts[j]]);
          }
        } else {
          for (int j = i + 1; j < k; ++j) {
            if (j != p) diam = std::max(diam, down[verts[i]] + Dist(dist[j]) + down[verts[j]]);
          }
        }
      }
      offer(v, top_contribution);
    }
    down[v] = best1[v];
    diam = std::max(diam, best1[v] + best2[v]);
  }
  return diam;
}

}  // namespace

int diameter(const Graph& g) {
  return block_tree_diameter<int>(g, [](const Graph& lg, int s) { return bfs_distances(lg, s); });
}

double weighted_diameter(const Graph& g) {
  if (!g.has_weights() && g.edge_count() > 0) throw Error(ErrorCode::MissingWeights, "graph has no edge weights");
  return block_tree_diameter<double>(g,
                                     [](const Graph& lg, int s) { return dijkstra_distances(lg, s); });
}

int diameter_all_sources(const Graph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, height(g, v));
  return best;
}

double weighted_diameter_all_sources(const Graph& g) {
  double best = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, weighted_height(g, v));
  return best;
}

std::vector<int> bar_distances(const Graph& g, Vertex x) { return to_enriched_tree(g, x).depth; }

int bar_distance(const Graph& g, Vertex x, Vertex y) { return bar_distances(g, x)[y]; }

int largest_block_size(const Graph& g) {
  const auto dec = block_decompose(g);
  std::size_t best = 0;
  for (const auto& b : dec.blocks) best = std::max(best, b.size());
  return static_cast<int>(best);
}

double shp(const PointedBlock& b) {
  if (b.graph.has_weights()) return weighted_distance(b.graph, b.star, b.root);
  // Early-exit BFS: blocks can be large and only one target matters.
  const Graph& g = b.graph;
  std::vector<int> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> queue{b.star};
  dist[b.star] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    if (v == b.root) return dist[v];
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  throw Error(ErrorCode::Disconnected, "pointed block is not connected");
}

// ---------------------------------------------------------------------------
// Plane trees

PlaneTree plane_tree_from_preorder_degrees(std::span<const int> degrees) {
  const int n = static_cast<int>(degrees.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty degree sequence");
  PlaneTree t;
  t.children.assign(n, {});
  std::vector<std::pair<int, int>> open;  // (vertex, remaining children)
  for (int i = 0; i < n; ++i) {
    if (degrees[i] < 0) throw Error(ErrorCode::InvalidArgument, "negative outdegree");
    if (i > 0) {
      while (!open.empty() && open.back().second == 0) open.pop_back();
      if (open.empty()) throw Error(ErrorCode::InvalidArgument, "not a Lukasiewicz word");
      t.children[open.back().first].push_back(i);
      --open.back().second;
    }
    t.children[i].reserve(degrees[i]);
    open.emplace_back(i, degrees[i]);
  }
  for (auto [v, rem] : open) {
    if (rem != 0) throw Error(ErrorCode::InvalidArgument, "not a Lukasiewicz word");
  }
  return t;
}

PlaneTree mirror(const PlaneTree& t) {
  PlaneTree m = t;
  for (auto& c : m.children) std::reverse(c.begin(), c.end());
  return m;
}

std::vector<int> preorder(const PlaneTree& t) {
  std::vector<int> out;
  out.reserve(t.size());
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (auto it = t.children[v].rbegin(); it != t.children[v].rend(); ++it) stack.push_back(*it);
  }
  return out;
}

int tree_height(const PlaneTree& t) {
  std::vector<int> depth(t.size(), 0);
  int h = 0;
  for (int v : preorder(t)) {
    for (int c : t.children[v]) {
      depth[c] = depth[v] + 1;
      h = std::max(h, depth[c]);
    }
  }
  return h;
}

std::vector<int> contour_function(const PlaneTree& t) {
  std::vector<int> walk;
  walk.reserve(2 * t.size() - 1);
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  walk.push_back(0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < t.children[v].size()) {
      const int c = t.children[v][next++];
      stack.emplace_back(c, 0);
      walk.push_back(static_cast<int>(stack.size()) - 1);
    } else {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(static_cast<int>(stack.size()) - 1);
    }
  }
  return walk;
}

DfsQueues dfs_queues(const PlaneTree& t) {
  auto queue_of = [](const PlaneTree& tree) {
    std::vector<int> q{1};
    for (int v : preorder(tree)) {
      q.push_back(q.back() - 1 + static_cast<int>(tree.children[v].size()));
    }
    return q;
  };
  return {queue_of(t), queue_of(mirror(t))};
}

Graph plane_tree_graph(const PlaneTree& t) {
  std::vector<std::pair<Vertex, Vertex>> es;
  es.reserve(t.size());
  for (int v = 0; v < t.size(); ++v) {
    for (int c : t.children[v]) es.emplace_back(v, c);
  }
  return Graph::from_edges(t.size(), es);
}

// ---------------------------------------------------------------------------
// Text formats

namespace {
std::string format_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}
}  // namespace

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u + 1 << ' ' << e.v + 1;
    if (g.has_weights()) out << ' ' << format_weight(e.weight);
    out << '\n';
  }
  return out.str();
}

Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](std::string& dst) {
    while (std::getline(in, dst)) {
      if (dst.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw Error(ErrorCode::ParseError, "missing header line");
  long n = -1, m = -1;
  {
    std::istringstream hdr(line);
    if (!(hdr >> n >> m) || n < 0 || m < 0) throw Error(ErrorCode::ParseError, "bad header: " + line);
  }
  std::vector<Edge> es;
  int weighted = -1;
  for (long i = 0; i < m; ++i) {
    if (!next_line(line)) throw Error(ErrorCode::ParseError, "fewer edges than declared");
    std::istringstream row(line);
    long u = 0, v = 0;
    if (!(row >> u >> v)) throw Error(ErrorCode::ParseError, "bad edge line: " + line);
    double w = 1.0;
    const bool has_w = static_cast<bool>(row >> w);
    if (weighted == -1) weighted = has_w ? 1 : 0;
    if (weighted != (has_w ? 1 : 0)) throw Error(ErrorCode::ParseError, "mixed weighted/unweighted edges");
    if (u < 1 || v < 1 || u > n || v > n) throw Error(ErrorCode::ParseError, "vertex out of range");
    es.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), w});
  }
  Graph g = Graph::from_weighted_edges(static_cast<int>(n), es);
  return weighted == 1 ? g : g.without_weights();
}

std::string write_graph_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.vertex_count();
  auto edges = nlohmann::json::array();
  auto weights = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({e.u + 1, e.v + 1});
    weights.push_back(e.weight);
  }
  j["edges"] = std::move(edges);
  if (g.has_weights()) j["weights"] = std::move(weights);
  return j.dump();
}

Graph read_graph_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw Error(ErrorCode::ParseError, "graph JSON needs \"n\" and \"edges\"");
  }
  const int n = j.at("n").get<int>();
  const auto& edges = j.at("edges");
  const bool weighted = j.contains("weights") && !j.at("weights").is_null();
  if (weighted && j.at("weights").size() != edges.size()) {
    throw Error(ErrorCode::ParseError, "weights length differs from edges length");
  }
  std::vector<Edge> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "edge must be [u,v]");
    const int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 1 || v < 1 || u > n || v > n) throw Error(ErrorCode::ParseError, "vertex out of range");
    es.push_back({u - 1, v - 1, weighted ? j["weights"][i].get<double>() : 1.0});
  }
  Graph g = Graph::from_weighted_edges(n, es);
  return weighted ? g : g.without_weights();
}

std::uint64_t edge_mask(const Graph& g) {
  if (g.vertex_count() > 11) throw Error(ErrorCode::InvalidArgument, "edge_mask needs n <= 11");
  std::uint64_t mask = 0;
  for (const auto& e : g.edges()) {
    const int i = std::min(e.u, e.v), j = std::max(e.u, e.v);
    mask |= std::uint64_t{1} << (j * (j - 1) / 2 + i);
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Outerplanarity of a block

bool is_outerplanar_block(const Graph& block) {
  const int n = block.vertex_count();
  if (n <= 3) return true;
  const auto m = static_cast<long>(block.edge_count());
  if (m > 2L * n - 3) return false;

  std::vector<std::set<Vertex>> adj(n);
  for (const auto& e : block.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<char> alive(n, 1);
  std::vector<Vertex> work;
  for (Vertex v = 0; v < n; ++v) {
    if (adj[v].size() == 2) work.push_back(v);
  }
  struct Removal {
    Vertex v, a, b;
  };
  std::vector<Removal> removed;
  int remaining = n;
  while (remaining > 3) {
    Vertex v = -1;
    while (!work.empty()) {
      const Vertex c = work.back();
      work.pop_back();
      if (alive[c] && adj[c].size() == 2) {
        v = c;
        break;
      }
    }
    if (v < 0) return false;
    const Vertex a = *adj[v].begin();
    const Vertex b = *std::next(adj[v].begin());
    adj[a].erase(v);
    adj[b].erase(v);
    adj[v].clear();
    alive[v] = 0;
    --remaining;
    adj[a].insert(b);
    adj[b].insert(a);
    removed.push_back({v, a, b});
    if (adj[a].size() == 2) work.push_back(a);
    if (adj[b].size() == 2) work.push_back(b);
  }

  // Rebuild the Hamilton cycle as a circular doubly linked list.
  std::vector<Vertex> next(n, -1), prev(n, -1);
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) rest.push_back(v);
  }
  for (int i = 0; i < 3; ++i) {
    next[rest[i]] = rest[(i + 1) % 3];
    prev[rest[(i + 1) % 3]] = rest[i];
  }
  for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
    Vertex a = it->a, b = it->b;
    if (next[b] == a) std::swap(a, b);
    if (next[a] != b) return false;
    next[a] = it->v;
    prev[it->v] = a;
    next[it->v] = b;
    prev[b] = it->v;
  }

  std::vector<int> pos(n, -1);
  Vertex cur = 0;
  for (int i = 0; i < n; ++i) {
    if (pos[cur] != -1) return false;
    pos[cur] = i;
    if (!block.has_edge(cur, next[cur])) return false;
    cur = next[cur];
  }
  if (cur != 0) return false;

  std::vector<std::pair<int, int>> chords;
  for (const auto& e : block.edges()) {
    int p = pos[e.u], q = pos[e.v];
    if (p > q) std::swap(p, q);
    if (q - p == 1 || (p == 0 && q == n - 1)) continue;
    chords.emplace_back(p, q);
  }
  std::sort(chords.begin(), chords.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second > y.second;
  });
  std::vector<std::pair<int, int>> open;
  for (const auto& c : chords) {
    while (!open.empty() && open.back().second <= c.first) open.pop_back();
    if (!open.empty() && open.back().second < c.second) return false;
    open.push_back(c);
  }
  return true;
}

}  // namespace subcrit

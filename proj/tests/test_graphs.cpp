#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>

#include "doctest.h"
#include "subcrit/graph.hpp"
#include "subcrit/samplers.hpp"

using namespace subcrit;

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

Graph make(int n, EdgeList e) { return Graph::from_edges(n, e); }

Graph random_connected(int n, double p, Rng& rng) {
  for (;;) {
    EdgeList e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(p)) e.emplace_back(u, v);
    auto g = make(n, e);
    if (g.is_connected()) return g;
  }
}

// Boost's biconnected components as sorted vertex sets.
std::set<std::vector<Vertex>> boost_blocks(const Graph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                   boost::property<boost::edge_index_t, std::size_t>>;
  BG bg(g.vertex_count());
  std::size_t idx = 0;
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, idx++, bg);
  auto comp = boost::get(boost::edge_index, bg);
  std::vector<std::size_t> component(boost::num_edges(bg));
  const auto count =
      boost::biconnected_components(bg, boost::make_iterator_property_map(component.begin(), comp));
  std::vector<std::set<Vertex>> sets(count);
  for (auto [it, end] = boost::edges(bg); it != end; ++it) {
    const auto c = component[comp[*it]];
    sets[c].insert(static_cast<Vertex>(boost::source(*it, bg)));
    sets[c].insert(static_cast<Vertex>(boost::target(*it, bg)));
  }
  std::set<std::vector<Vertex>> out;
  for (const auto& s : sets) out.emplace(s.begin(), s.end());
  return out;
}

int tree_height_direct(const PlaneTree& t, int v = 0) {
  int h = 0;
  for (int c : t.children[v]) h = std::max(h, 1 + tree_height_direct(t, c));
  return h;
}

PlaneTree random_plane_tree(int n, Rng& rng) {
  // Uniform plane tree via the cycle lemma on a random Lukasiewicz word.
  std::vector<int> deg(n, 0);
  for (int i = 0; i < n - 1; ++i) deg[rng.below(n)]++;
  const auto shift = cycle_lemma_shift(deg);
  std::rotate(deg.begin(), deg.begin() + static_cast<long>(shift), deg.end());
  return plane_tree_from_preorder_degrees(deg);
}

}  // namespace

TEST_CASE("graph construction rejects bad input") {
  const EdgeList loop{{0, 0}};
  CHECK_THROWS_AS(make(2, loop), Error);
  const EdgeList twice{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(make(2, twice), Error);
  const EdgeList out{{0, 5}};
  CHECK_THROWS_AS(make(2, out), Error);
  const std::vector<Edge> neg{{0, 1, -1.0}};
  try {
    Graph::from_weighted_edges(2, neg);
    FAIL("expected NonPositiveWeight");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveWeight);
  }
}

TEST_CASE("block decomposition examples") {
  const auto path = block_decompose(make(3, {{0, 1}, {1, 2}}));
  const std::set<std::vector<Vertex>> path_blocks(path.blocks.begin(), path.blocks.end());
  CHECK(path_blocks == std::set<std::vector<Vertex>>{{0, 1}, {1, 2}});
  CHECK(path.cutvertices == std::vector<Vertex>{1});

  const auto tri = block_decompose(make(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(tri.blocks.size() == 1);
  CHECK(tri.cutvertices.empty());

  const auto bow = block_decompose(make(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}));
  CHECK(bow.blocks.size() == 2);
  CHECK(bow.cutvertices == std::vector<Vertex>{2});
  // block tree: block - cutvertex - block
  CHECK(bow.block_tree.size() == 3);
  CHECK(bow.block_tree[2].size() == 2);
  CHECK(bow.block_tree[0] == std::vector<int>{2});
  CHECK(bow.block_tree[1] == std::vector<int>{2});

  const auto single = block_decompose(make(1, {}));
  CHECK(single.blocks == std::vector<std::vector<Vertex>>{{0}});

  CHECK_THROWS_AS(block_decompose(make(3, {{0, 1}})), Error);
}

TEST_CASE("block decomposition agrees with Boost on random graphs") {
  Rng rng(11, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(12));
    const auto g = random_connected(n, 0.15 + 0.3 * rng.uniform(), rng);
    const auto d = block_decompose(g);
    std::set<std::vector<Vertex>> ours(d.blocks.begin(), d.blocks.end());
    CHECK(ours == boost_blocks(g));
    // block invariants
    std::size_t edges = 0;
    for (const auto& be : d.block_edges) edges += be.size();
    CHECK(edges == g.edge_count());
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
      for (std::size_t j = i + 1; j < d.blocks.size(); ++j) {
        std::vector<Vertex> common;
        std::set_intersection(d.blocks[i].begin(), d.blocks[i].end(), d.blocks[j].begin(), d.blocks[j].end(),
                              std::back_inserter(common));
        CHECK(common.size() <= 1);
        if (common.size() == 1) CHECK(std::binary_search(d.cutvertices.begin(), d.cutvertices.end(), common[0]));
      }
  }
}

TEST_CASE("enriched tree examples") {
  const auto edge = to_enriched_tree(make(2, {{0, 1}}), 0);
  CHECK(edge.children[0] == std::vector<Vertex>{1});
  CHECK(edge.enrichment[0].size() == 1);

  const auto tri = to_enriched_tree(make(3, {{0, 1}, {1, 2}, {0, 2}}), 0);
  auto kids = tri.children[0];
  std::sort(kids.begin(), kids.end());
  CHECK(kids == std::vector<Vertex>{1, 2});
  REQUIRE(tri.enrichment[0].size() == 1);
  CHECK(tri.enrichment[0][0].local.edge_count() == 3);

  const auto bow = make(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  const auto t = to_enriched_tree(bow, 0);
  CHECK(*std::max_element(t.depth.begin(), t.depth.end()) == 2);
  CHECK(reassemble(t, 5) == bow);
}

TEST_CASE("enriched tree reassembles random graphs") {
  Rng rng(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(14));
    const auto g = random_connected(n, 0.2, rng);
    const auto root = static_cast<Vertex>(rng.below(n));
    const auto t = to_enriched_tree(g, root);
    CHECK(reassemble(t, n) == g);
    CHECK(t.depth == bar_distances(g, root));
    for (Vertex v = 0; v < n; ++v) {
      std::vector<Vertex> members;
      for (const auto& b : t.enrichment[v]) members.insert(members.end(), b.members.begin(), b.members.end());
      std::sort(members.begin(), members.end());
      auto kids = t.children[v];
      std::sort(kids.begin(), kids.end());
      CHECK(members == kids);
    }
  }
}

TEST_CASE("distances and diameters") {
  const auto c5 = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK(hop_distance(c5, 0, 2) == 2);
  CHECK(diameter(c5) == 2);
  EdgeList p;
  for (int i = 0; i + 1 < 9; ++i) p.emplace_back(i, i + 1);
  const auto path = make(9, p);
  CHECK(diameter(path) == 8);
  CHECK(height(path, 0) == 8);
  const std::vector<Edge> w{{0, 1, 0.5}, {1, 2, 2.0}, {0, 2, 2.0}};
  const auto tri = Graph::from_weighted_edges(3, w);
  CHECK(weighted_distance(tri, 0, 2) == doctest::Approx(2.0));
  CHECK(weighted_distance(tri, 1, 2) == doctest::Approx(2.0));
  CHECK_THROWS_AS(weighted_distance(c5, 0, 1), Error);
  CHECK_THROWS_AS(hop_distance(make(2, {}), 0, 1), Error);
}

TEST_CASE("block-tree diameter matches all-source BFS") {
  Rng rng(13, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(30));
    const auto g = random_connected(n, 2.5 / n, rng);
    CHECK(diameter(g) == diameter_all_sources(g));
    std::vector<double> ws(g.edge_count());
    for (auto& x : ws) x = 0.1 + rng.uniform();
    const auto gw = g.with_weights(ws);
    CHECK(weighted_diameter(gw) == doctest::Approx(weighted_diameter_all_sources(gw)).epsilon(1e-12));
  }
}

TEST_CASE("bar distance") {
  const auto tri = make(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(bar_distance(tri, 0, 1) == 1);
  const auto bow = make(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  CHECK(bar_distance(bow, 0, 4) == 2);
}

TEST_CASE("bar distance is a metric bounded by the hop distance on random cacti") {
  const ClassSampler cs(make_class("cacti"));
  Rng rng(14, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = sample_uniform_cn(cs, 50, rng).graph;
    const auto x = static_cast<Vertex>(rng.below(50));
    const auto y = static_cast<Vertex>(rng.below(50));
    const auto z = static_cast<Vertex>(rng.below(50));
    const int xy = bar_distance(g, x, y);
    CHECK(xy == bar_distance(g, y, x));
    CHECK(xy <= hop_distance(g, x, y));
    CHECK(xy <= bar_distance(g, x, z) + bar_distance(g, z, y));
    CHECK((xy == 0) == (x == y));
  }
}

TEST_CASE("contour and queues") {
  const std::vector<int> path_deg{1, 1, 0};
  const auto path = plane_tree_from_preorder_degrees(path_deg);
  CHECK(contour_function(path) == std::vector<int>{0, 1, 2, 1, 0});
  const std::vector<int> star_deg{3, 0, 0, 0};
  const auto star = plane_tree_from_preorder_degrees(star_deg);
  CHECK(contour_function(star) == std::vector<int>{0, 1, 0, 1, 0, 1, 0});
  CHECK(dfs_queues(star).lexicographic == std::vector<int>{1, 3, 2, 1, 0});
  const std::vector<int> bad{0, 1};
  CHECK_THROWS_AS(plane_tree_from_preorder_degrees(bad), Error);
}

TEST_CASE("random plane trees: contour, mirror and queues") {
  Rng rng(15, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = random_plane_tree(1000, rng);
    const auto c = contour_function(t);
    CHECK(c.size() == 2 * 1000 - 1);
    CHECK(*std::max_element(c.begin(), c.end()) == tree_height_direct(t));
    CHECK(tree_height(t) == tree_height_direct(t));
    CHECK(c.front() == 0);
    CHECK(c.back() == 0);
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::abs(c[i] - c[i - 1]) == 1);
    const auto m = mirror(t);
    CHECK(tree_height(m) == tree_height(t));
    const auto mm = mirror(m);
    CHECK(mm.children == t.children);
    const auto q = dfs_queues(t);
    CHECK(q.lexicographic.size() == 1001);
    CHECK(q.lexicographic.front() == 1);
    CHECK(q.lexicographic[1] == static_cast<int>(t.children[0].size()));
    CHECK(q.lexicographic.back() == 0);
    CHECK(q.reverse.size() == 1001);
    CHECK(plane_tree_graph(t).edge_count() == 999);
  }
}

TEST_CASE("text formats round trip") {
  Rng rng(16, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(20));
    const auto g = random_connected(n, 0.3, rng);
    CHECK(read_edge_list(write_edge_list(g)) == g);
    CHECK(read_graph_json(write_graph_json(g)) == g);
    std::vector<double> ws(g.edge_count());
    for (auto& x : ws) x = 0.25 + rng.uniform();
    const auto gw = g.with_weights(ws);
    CHECK(read_edge_list(write_edge_list(gw)) == gw);
    CHECK(read_graph_json(write_graph_json(gw)) == gw);
  }
  CHECK_THROWS_AS(read_edge_list("2 1\n1 x\n"), Error);
  CHECK_THROWS_AS(read_graph_json("{\"n\": 2"), Error);
}

namespace {

// Hamilton cycle with pairwise non-crossing chords, by exhaustive search.
bool outerplanar_brute(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 2) return true;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  do {
    if (order[0] != 0) break;
    bool cycle = true;
    for (int i = 0; i < n && cycle; ++i) cycle = g.has_edge(order[i], order[(i + 1) % n]);
    if (!cycle) continue;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::pair<int, int>> chords;
    for (const auto& e : g.edges()) {
      int a = pos[e.u], b = pos[e.v];
      if (a > b) std::swap(a, b);
      if (b - a == 1 || (a == 0 && b == n - 1)) continue;
      chords.emplace_back(a, b);
    }
    bool ok = true;
    for (std::size_t i = 0; i < chords.size() && ok; ++i)
      for (std::size_t j = i + 1; j < chords.size() && ok; ++j) {
        const auto [a, b] = chords[i];
        const auto [c, d] = chords[j];
        if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) ok = false;
      }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace

TEST_CASE("outerplanarity of 2-connected blocks agrees with exhaustive search") {
  Rng rng(17, 0);
  int checked = 0, outer = 0;
  while (checked < 400) {
    const int n = 3 + static_cast<int>(rng.below(5));
    const auto g = random_connected(n, 0.3 + 0.5 * rng.uniform(), rng);
    if (block_decompose(g).blocks.size() != 1) continue;
    ++checked;
    const bool want = outerplanar_brute(g);
    outer += want;
    CHECK(is_outerplanar_block(g) == want);
  }
  CHECK(outer > 50);
  CHECK(outer < 390);
  CHECK_FALSE(is_outerplanar_block(make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
}

#pragma once

// Labeled simple graphs, block decomposition, the enriched-tree view of a rooted
// connected graph, graph metrics, and plane-tree walks.
//
// Vertices are stored 0-based (0..n-1). The text formats are 1-based and the
// readers/writers convert.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace subcrit {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;
};

class Graph {
 public:
  Graph() = default;

  /// Builds a simple graph. Throws InvalidArgument on loops, parallel edges or
  /// out-of-range endpoints; NonPositiveWeight if a weight is <= 0.
  static Graph from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges);
  static Graph from_weighted_edges(int n, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool has_weights() const { return !weights_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  /// Weights parallel to neighbors(v); empty when unweighted.
  std::span<const double> neighbor_weights(Vertex v) const {
    if (weights_.empty()) return {};
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;
  /// Weight of edge {u,v}; 1 for unweighted graphs. Throws if absent.
  double edge_weight(Vertex u, Vertex v) const;

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  Graph with_weights(std::span<const double> per_edge) const;  // same order as edges()
  Graph without_weights() const;
  /// Vertex v becomes perm[v].
  Graph relabeled(std::span<const Vertex> perm) const;
  Graph induced(std::span<const Vertex> vertices) const;  // local i <-> vertices[i]

  bool is_connected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<double> weights_;
};

struct BlockDecomposition {
  /// Sorted vertex lists; a single-vertex graph has one block of size 1.
  std::vector<std::vector<Vertex>> blocks;
  /// Edges of each block (u < v), parallel to `blocks`.
  std::vector<std::vector<std::pair<Vertex, Vertex>>> block_edges;
  std::vector<Vertex> cutvertices;  // sorted
  /// Blocks of each vertex.
  std::vector<std::vector<int>> vertex_blocks;
  /// Bipartite block tree: node i < blocks.size() is block i, node
  /// blocks.size() + j is cutvertices[j].
  std::vector<std::vector<int>> block_tree;
};

/// Lowpoint DFS decomposition (iterative). Throws Disconnected.
BlockDecomposition block_decompose(const Graph& g);

/// A derived block hanging below tree vertex `star`: local vertex 0 is the star,
/// local vertex i >= 1 is members[i-1].
struct EnrichedBlock {
  Vertex star = 0;
  std::vector<Vertex> members;
  Graph local;
};

struct EnrichedTree {
  Vertex root = 0;
  std::vector<Vertex> parent;                  // -1 at the root
  std::vector<std::vector<Vertex>> children;   // grouped block by block
  std::vector<std::vector<EnrichedBlock>> enrichment;
  std::vector<int> depth;
};

/// Throws Disconnected.
EnrichedTree to_enriched_tree(const Graph& g, Vertex root);
/// Identifies every block's star with its tree vertex and unions the edges.
Graph reassemble(const EnrichedTree& t, int n, bool keep_weights = false);

/// A pointed derived block: star = the * vertex, root = the marked non-* vertex.
struct PointedBlock {
  Graph graph;
  Vertex star = 0;
  Vertex root = 1;
  /// Non-* vertex count.
  int size() const { return graph.vertex_count() - 1; }
};

/// Hop distance from star to root (BFS), or weighted if the block carries weights.
double shp(const PointedBlock& b);

inline constexpr int kUnreachable = -1;

std::vector<int> bfs_distances(const Graph& g, Vertex source);
std::vector<double> dijkstra_distances(const Graph& g, Vertex source);

int hop_distance(const Graph& g, Vertex u, Vertex v);        // throws Disconnected
double weighted_distance(const Graph& g, Vertex u, Vertex v);  // MissingWeights, Disconnected
int height(const Graph& g, Vertex root);
double weighted_height(const Graph& g, Vertex root);

/// Exact diameter by dynamic programming over the block tree; distances inside a
/// block are all-pairs BFS (Dijkstra for the weighted variant) on that block.
int diameter(const Graph& g);
double weighted_diameter(const Graph& g);
/// Exact diameter by BFS from every vertex, O(n m). Reference implementation.
int diameter_all_sources(const Graph& g);
double weighted_diameter_all_sources(const Graph& g);

/// Number of blocks needed to cover a shortest x-y path: depth of y in the
/// enriched tree rooted at x.
int bar_distance(const Graph& g, Vertex x, Vertex y);
/// Depths of all vertices in the enriched tree rooted at x (block-tree BFS).
std::vector<int> bar_distances(const Graph& g, Vertex x);

int largest_block_size(const Graph& g);

/// Ordered rooted tree; vertex 0 is the root.
struct PlaneTree {
  std::vector<std::vector<int>> children;
  int size() const { return static_cast<int>(children.size()); }
};

/// Builds a plane tree from outdegrees listed in depth-first (preorder) order.
/// Throws InvalidArgument if the sequence is not a valid Lukasiewicz word.
PlaneTree plane_tree_from_preorder_degrees(std::span<const int> degrees);
PlaneTree mirror(const PlaneTree& t);
int tree_height(const PlaneTree& t);
std::vector<int> preorder(const PlaneTree& t);
std::vector<int> contour_function(const PlaneTree& t);

struct DfsQueues {
  std::vector<int> lexicographic;  // Q^d, length n+1
  std::vector<int> reverse;        // Q^r, from the mirror tree
};
DfsQueues dfs_queues(const PlaneTree& t);

/// Graph on the tree's vertices with parent-child edges.
Graph plane_tree_graph(const PlaneTree& t);

// Text formats (1-based). Edge list: "n m" then "u v [w]" per edge.
std::string write_edge_list(const Graph& g);
Graph read_edge_list(const std::string& text);
/// {"n":..,"edges":[[u,v],..],"weights":[..]} (weights only when present).
std::string write_graph_json(const Graph& g);
Graph read_graph_json(const std::string& text);

/// Edge set as a bitmask over pairs i<j (bit j*(j-1)/2+i); requires n <= 11.
std::uint64_t edge_mask(const Graph& g);

/// True iff the 2-connected graph (or single edge / vertex) is outerplanar:
/// peels degree-2 vertices to recover the Hamilton cycle, then checks that the
/// remaining edges are non-crossing chords of it.
bool is_outerplanar_block(const Graph& block);

}  // namespace subcrit

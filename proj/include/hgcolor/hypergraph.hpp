#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hgcolor {

using Vertex = int;
using EdgeId = int;

// Vertex coloring; color[v] == -1 means uncolored.
struct Coloring {
  std::vector<int> color;
  int palette_size = 0;
};

struct VerifyReport {
  bool proper = false;
  std::vector<EdgeId> monochromatic_edges;  // ascending edge ids
};

// Pair of neighbors of a center vertex v that appear together in an edge
// avoiding v.  witness is the smallest such edge id.
struct CoveredPair {
  Vertex x = 0;  // x < y
  Vertex y = 0;
  EdgeId witness = 0;
};

struct CoveredPairReport {
  Vertex center = 0;
  std::vector<CoveredPair> pairs;  // sorted by (x, y)
};

// k-uniform hypergraph on vertices [0, n).  Immutable after construction:
// edges are stored as sorted vertex k-sets in lexicographic order, and all
// queries are const (safe for concurrent readers).
class Hypergraph {
 public:
  // Canonicalizes edge_list (sorts vertices within edges, sorts edges
  // lexicographically).  Throws std::invalid_argument on wrong arity,
  // repeated vertices inside an edge, out-of-range ids, or duplicate edges.
  Hypergraph(int k, int n, std::vector<std::vector<Vertex>> edge_list);

  int uniformity() const { return k_; }
  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<Vertex>& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<std::vector<Vertex>>& edges() const { return edges_; }

  // Edge ids incident to v, ascending.
  const std::vector<EdgeId>& incident_edges(Vertex v) const {
    return incidence_[v];
  }

  int degree(Vertex v) const { return static_cast<int>(incidence_[v].size()); }
  int max_degree() const { return max_degree_; }

  // Vertices sharing an edge with v, sorted, excluding v itself.
  std::vector<Vertex> neighborhood(Vertex v) const;

  // True when every two distinct edges share at most one vertex.
  bool is_simple() const { return simple_; }

  // Edge ids containing both x and y, ascending.  Empty when the pair is
  // uncovered.  For a simple hypergraph the list has at most one entry.
  const std::vector<EdgeId>& edges_with_pair(Vertex x, Vertex y) const;

  // The other k-1 vertices of the unique edge through v and x (requires a
  // simple hypergraph and x in N(v)); throws otherwise.
  std::vector<Vertex> unique_completion(Vertex v, Vertex x) const;

  // All sets of i distinct edges spanned by at most i*(k-1) vertices, as
  // ascending edge-id i-sets in lexicographic order, truncated to limit.
  // Exhaustive enumeration: exponential in i, intended for small i.
  std::vector<std::vector<EdgeId>> find_i_cycles(int i, std::size_t limit) const;

  // Smallest i in [2, cap) with an i-cycle; returns cap when there is none
  // (meaning girth >= cap).  cap must be >= 2.
  int girth(int cap) const;

  // Triples of edges pairwise intersecting in single vertices with empty
  // common intersection, as ascending edge-id triples in lexicographic
  // order, truncated to limit.  Requires a simple hypergraph.
  std::vector<std::array<EdgeId, 3>> find_triangles(std::size_t limit) const;

  // Covered pairs of N(v) with their smallest witness edge.  Requires a
  // simple hypergraph.
  CoveredPairReport covered_pairs(Vertex v) const;

  // Induced subhypergraph on a vertex subset: keeps edges fully inside the
  // subset and relabels vertices to [0, |subset|).  Defined after the class
  // body because it holds a Hypergraph by value.
  struct Induced;
  Induced induced(const std::vector<Vertex>& subset) const;

  // Checks a total coloring; throws when a vertex is uncolored or a color
  // is outside [0, palette_size).
  VerifyReport verify_coloring(const Coloring& coloring) const;

 private:
  void check_vertex(Vertex v) const;

  int k_ = 0;
  int n_ = 0;
  int max_degree_ = 0;
  bool simple_ = true;
  std::vector<std::vector<Vertex>> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::unordered_map<std::uint64_t, std::vector<EdgeId>> pair_edges_;
};

struct Hypergraph::Induced {
  Hypergraph graph;
  std::vector<int> old_to_new;      // -1 for vertices outside the subset
  std::vector<Vertex> new_to_old;   // ascending
};

}  // namespace hgcolor

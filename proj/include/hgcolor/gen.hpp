#pragma once

#include <cstdint>
#include <string>

#include "hgcolor/hypergraph.hpp"

namespace hgcolor {

struct GenSpec {
  int k = 3;
  int n = 0;
  int max_degree = 1;
  double density = 1.0;           // fraction of the edge budget n*max_degree/k
  bool triangle_free = false;
  std::uint64_t seed = 0;
  int max_attempts_per_edge = 200;
};

struct GenResult {
  Hypergraph graph;
  int target_edges = 0;
  bool shortfall = false;          // fewer edges than the target
  std::uint64_t attempts_used = 0;
};

// Random greedy packing: sample k-sets and keep one when it respects the
// degree cap, shares at most one vertex with every kept edge, and (when
// requested) closes no triangle.  Attempt i is keyed by (seed, i), so the
// result is a pure function of the GenSpec.  Stops at the edge target or when
// the attempt budget max_attempts_per_edge * target runs out; the caller
// sees the gap through GenResult::shortfall.
GenResult gen_simple(const GenSpec& spec);
GenResult gen_simple_triangle_free(GenSpec spec);

// Named test instances:
//   fano            the 7-point 3-uniform projective plane
//   single_edge(k)  one edge on k vertices
//   loose_cycle(i,k) i edges meeting consecutively in single vertices
//   sunflower(d,k)  d edges sharing exactly vertex 0
Hypergraph fixture(const std::string& name);

}  // namespace hgcolor

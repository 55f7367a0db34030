#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgcolor/hypergraph.hpp"

namespace hgcolor {

// First-level split: random vertex parts sized so that induced degrees and
// covered-pair counts drop polynomially, certified by direct recount.
struct Lemma1Config {
  int parts = 0;               // 0: ceil(max_degree^(2/(3k-4) - eps))
  double eps = 0.05;           // exponent shave used by the default part count
  double degree_factor = 2.0;  // per-part degree <= factor * D / m^(k-1)
  double covered_factor = 0;   // 0: k^2; covered pairs <= factor * D^2 / m^(3k-4)
  int max_resample_rounds = 50;
  std::uint64_t seed = 0;
};

// Second-level split of one part; same machinery with the covered-pair
// condition expressed as a hard cap (reaching the cap is a violation).
struct Lemma2Config {
  int parts = 0;               // 0: ceil(d^(1/(k-1) - delta))
  double delta = 0.1;          // exponent shave, in (0, 1/(k-1))
  double degree_factor = 2.0;  // per-part degree <= factor * d / l^(k-1)
  int covered_cap = 0;         // 0: 200 k^2; violation when count >= cap
  int max_resample_rounds = 50;
  std::uint64_t seed = 0;
};

struct PartStats {
  int part = 0;
  int vertex_count = 0;
  int edge_count = 0;
  int max_degree = 0;
  int worst_covered_pairs = 0;
  long long triangle_count = 0;
};

struct PartitionResult {
  std::vector<int> assignment;  // vertex -> part
  std::vector<PartStats> parts;
  int rounds_used = 0;
  bool certified = false;
  double degree_bound = 0;       // violation when degree > bound
  double covered_bound = 0;
  bool covered_violation_at_bound = false;  // true: violation when count >= bound
};

// Assign each vertex a uniform part, then repeatedly re-randomize the
// distance-<=2 neighborhoods of violating vertices; a round with no progress
// falls back to a full re-randomization.  certified=false with the best
// assignment seen when the round cap is hit.
PartitionResult lemma1_partition(const Hypergraph& graph, const Lemma1Config& cfg);

// Requires a simple hypergraph (covered pairs are per-neighborhood).
PartitionResult lemma2_partition(const Hypergraph& graph, const Lemma2Config& cfg);

struct RefineResult {
  std::vector<std::vector<Vertex>> classes;  // partition of [0, n)
  int max_out_degree = 0;   // of the covered-pair conflict digraph
  int class_bound = 0;      // 2 * max_out_degree + 1
};

// Splits the vertex set into triangle-free classes: direct a conflict edge
// from every center to both members of each of its covered pairs, color the
// underlying graph greedily in smallest-last order, and read off the color
// classes.  Every class is re-checked to contain no triangle.  Requires a
// simple hypergraph.
RefineResult triangle_free_refine(const Hypergraph& graph);

struct PartitionCheck {
  bool stats_match = false;   // recorded stats equal an independent recount
  bool bounds_hold = false;   // every part respects the recorded bounds
  std::vector<std::string> mismatches;
};

// Recomputes all per-part statistics from the assignment alone and compares
// them field by field with the recorded result.
PartitionCheck check_partition(const Hypergraph& graph,
                               const PartitionResult& result);

// One JSON record per part: id, vertex list, stats.
void write_partition_jsonl(const PartitionResult& result, std::ostream& out);

}  // namespace hgcolor

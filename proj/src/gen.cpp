#include "hgcolor/gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "hgcolor/rng.hpp"

namespace hgcolor {

namespace {

constexpr std::uint64_t kTagAttempt = 0x67656e01;

std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Sorted-vector intersection with the candidate edge excluded; true when a
// common element outside `exclude` exists.
bool share_outside(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                   const std::vector<Vertex>& exclude) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      if (!std::binary_search(exclude.begin(), exclude.end(), a[i])) return true;
      ++i;
      ++j;
    }
  }
  return false;
}

void insert_sorted(std::vector<Vertex>& vec, Vertex v) {
  auto it = std::lower_bound(vec.begin(), vec.end(), v);
  if (it == vec.end() || *it != v) vec.insert(it, v);
}

}  // namespace

GenResult gen_simple(const GenSpec& spec) {
  if (spec.k < 2) throw std::invalid_argument("uniformity must be at least 2");
  if (spec.n < spec.k)
    throw std::invalid_argument("need at least k vertices to place an edge");
  if (spec.max_degree < 1) throw std::invalid_argument("degree cap must be positive");
  if (spec.density < 0.0 || spec.density > 1.0)
    throw std::invalid_argument("density must lie in [0, 1]");
  if (spec.max_attempts_per_edge < 1)
    throw std::invalid_argument("attempt budget must be positive");

  const long long budget_edges =
      static_cast<long long>(spec.n) * spec.max_degree / spec.k;
  const int target =
      static_cast<int>(std::floor(spec.density * static_cast<double>(budget_edges)));

  std::vector<std::vector<Vertex>> edges;
  std::vector<int> degree(spec.n, 0);
  std::unordered_set<std::uint64_t> used_pairs;
  // Sorted neighbor lists drive the incremental triangle test.
  std::vector<std::vector<Vertex>> nbrs(spec.n);

  const std::uint64_t max_attempts =
      static_cast<std::uint64_t>(spec.max_attempts_per_edge) *
      static_cast<std::uint64_t>(std::max(target, 1));
  std::uint64_t attempts = 0;

  std::vector<Vertex> cand(spec.k);
  while (static_cast<int>(edges.size()) < target && attempts < max_attempts) {
    rng::Stream stream(spec.seed, {kTagAttempt, attempts});
    ++attempts;

    bool distinct = true;
    for (int j = 0; j < spec.k; ++j) {
      cand[j] = static_cast<Vertex>(stream.below(static_cast<std::uint64_t>(spec.n)));
      for (int l = 0; l < j; ++l)
        if (cand[l] == cand[j]) {
          distinct = false;
          break;
        }
      if (!distinct) break;
    }
    if (!distinct) continue;
    std::sort(cand.begin(), cand.end());

    bool ok = true;
    for (Vertex v : cand)
      if (degree[v] >= spec.max_degree) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (int a = 0; a < spec.k && ok; ++a)
      for (int b = a + 1; b < spec.k; ++b)
        if (used_pairs.count(pair_key(cand[a], cand[b]))) {
          ok = false;
          break;
        }
    if (!ok) continue;

    if (spec.triangle_free) {
      // Adding the candidate closes a triangle exactly when two of its
      // vertices have a common neighbor outside the candidate: the two
      // witnessing edges meet the candidate in single (distinct) vertices
      // and each other in that neighbor.
      for (int a = 0; a < spec.k && ok; ++a)
        for (int b = a + 1; b < spec.k; ++b)
          if (share_outside(nbrs[cand[a]], nbrs[cand[b]], cand)) {
            ok = false;
            break;
          }
      if (!ok) continue;
    }

    for (Vertex v : cand) ++degree[v];
    for (int a = 0; a < spec.k; ++a)
      for (int b = a + 1; b < spec.k; ++b) {
        used_pairs.insert(pair_key(cand[a], cand[b]));
        insert_sorted(nbrs[cand[a]], cand[b]);
        insert_sorted(nbrs[cand[b]], cand[a]);
      }
    edges.push_back(cand);
  }

  GenResult result{Hypergraph(spec.k, spec.n, std::move(edges)), target,
                   false, attempts};
  result.shortfall = result.graph.edge_count() < target;
  return result;
}

GenResult gen_simple_triangle_free(GenSpec spec) {
  spec.triangle_free = true;
  return gen_simple(spec);
}

Hypergraph fixture(const std::string& name) {
  if (name == "fano") {
    return Hypergraph(3, 7,
                      {{0, 1, 2},
                       {0, 3, 4},
                       {0, 5, 6},
                       {1, 3, 5},
                       {1, 4, 6},
                       {2, 3, 6},
                       {2, 4, 5}});
  }
  int a = 0, b = 0;
  if (std::sscanf(name.c_str(), "single_edge(%d)", &a) == 1) {
    std::vector<Vertex> e(a);
    for (int j = 0; j < a; ++j) e[j] = j;
    return Hypergraph(a, a, {e});
  }
  if (std::sscanf(name.c_str(), "loose_cycle(%d,%d)", &a, &b) == 2) {
    // a edges; consecutive edges share one vertex, edge j starting at
    // vertex j*(b-1) on a cycle of a*(b-1) vertices.
    if (a < 2 || b < 2) throw std::invalid_argument("loose_cycle needs i,k >= 2");
    const int n = a * (b - 1);
    std::vector<std::vector<Vertex>> edges;
    for (int j = 0; j < a; ++j) {
      std::vector<Vertex> e;
      for (int l = 0; l <= b - 1; ++l) e.push_back((j * (b - 1) + l) % n);
      edges.push_back(std::move(e));
    }
    return Hypergraph(b, n, std::move(edges));
  }
  if (std::sscanf(name.c_str(), "sunflower(%d,%d)", &a, &b) == 2) {
    if (a < 1 || b < 2) throw std::invalid_argument("sunflower needs d >= 1, k >= 2");
    std::vector<std::vector<Vertex>> edges;
    for (int j = 0; j < a; ++j) {
      std::vector<Vertex> e{0};
      for (int l = 0; l < b - 1; ++l) e.push_back(1 + j * (b - 1) + l);
      edges.push_back(std::move(e));
    }
    return Hypergraph(b, 1 + a * (b - 1), std::move(edges));
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace hgcolor

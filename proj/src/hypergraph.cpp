#include "hgcolor/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hgcolor {

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

const std::vector<EdgeId> kNoEdges{};

}  // namespace

Hypergraph::Hypergraph(int k, int n, std::vector<std::vector<Vertex>> edge_list)
    : k_(k), n_(n) {
  if (k < 2) throw std::invalid_argument("uniformity must be at least 2");
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");

  for (auto& e : edge_list) {
    if (static_cast<int>(e.size()) != k)
      throw std::invalid_argument("edge arity differs from uniformity");
    std::sort(e.begin(), e.end());
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 0 || e[j] >= n)
        throw std::invalid_argument("edge vertex out of range");
      if (j > 0 && e[j] == e[j - 1])
        throw std::invalid_argument("edge has a repeated vertex");
    }
  }
  std::sort(edge_list.begin(), edge_list.end());
  for (std::size_t i = 1; i < edge_list.size(); ++i) {
    if (edge_list[i] == edge_list[i - 1])
      throw std::invalid_argument("duplicate edge");
  }
  edges_ = std::move(edge_list);

  incidence_.assign(n_, {});
  for (EdgeId e = 0; e < edge_count(); ++e) {
    for (Vertex v : edges_[e]) incidence_[v].push_back(e);
    for (std::size_t a = 0; a + 1 < edges_[e].size(); ++a)
      for (std::size_t b = a + 1; b < edges_[e].size(); ++b)
        pair_edges_[pair_key(edges_[e][a], edges_[e][b])].push_back(e);
  }
  for (Vertex v = 0; v < n_; ++v)
    max_degree_ = std::max(max_degree_, degree(v));
  for (const auto& [key, ids] : pair_edges_) {
    (void)key;
    if (ids.size() > 1) {
      simple_ = false;
      break;
    }
  }
}

void Hypergraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
}

std::vector<Vertex> Hypergraph::neighborhood(Vertex v) const {
  check_vertex(v);
  std::vector<Vertex> out;
  for (EdgeId e : incidence_[v])
    for (Vertex u : edges_[e])
      if (u != v) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<EdgeId>& Hypergraph::edges_with_pair(Vertex x, Vertex y) const {
  check_vertex(x);
  check_vertex(y);
  if (x == y) throw std::invalid_argument("pair vertices must differ");
  auto it = pair_edges_.find(pair_key(x, y));
  return it == pair_edges_.end() ? kNoEdges : it->second;
}

std::vector<Vertex> Hypergraph::unique_completion(Vertex v, Vertex x) const {
  if (!simple_)
    throw std::invalid_argument("unique completion requires a simple hypergraph");
  const auto& ids = edges_with_pair(v, x);
  if (ids.empty())
    throw std::invalid_argument("no edge through the requested pair");
  std::vector<Vertex> out;
  for (Vertex u : edges_[ids.front()])
    if (u != v) out.push_back(u);
  return out;
}

std::vector<std::vector<EdgeId>> Hypergraph::find_i_cycles(
    int i, std::size_t limit) const {
  if (i < 2) throw std::invalid_argument("cycle length must be at least 2");
  std::vector<std::vector<EdgeId>> result;
  if (limit == 0 || edge_count() < i) return result;
  const int span_bound = i * (k_ - 1);

  if (i == 2) {
    // A 2-cycle is a pair of edges sharing at least two vertices.
    std::set<std::pair<EdgeId, EdgeId>> found;
    for (const auto& [key, ids] : pair_edges_) {
      (void)key;
      for (std::size_t a = 0; a + 1 < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
          found.emplace(std::min(ids[a], ids[b]), std::max(ids[a], ids[b]));
    }
    for (const auto& [a, b] : found) {
      result.push_back({a, b});
      if (result.size() == limit) break;
    }
    return result;
  }

  // Depth-first enumeration over ascending edge ids.  The spanned vertex set
  // only grows, so any partial selection spanning more than i*(k-1) vertices
  // is discarded.
  std::vector<char> marked(n_, 0);
  std::vector<EdgeId> chosen;
  int span = 0;
  auto dfs = [&](auto&& self, EdgeId first) -> bool {
    if (static_cast<int>(chosen.size()) == i) {
      result.push_back(chosen);
      return result.size() >= limit;
    }
    const int remaining = i - static_cast<int>(chosen.size());
    for (EdgeId e = first; e <= edge_count() - remaining; ++e) {
      std::vector<Vertex> added;
      for (Vertex v : edges_[e])
        if (!marked[v]) added.push_back(v);
      if (span + static_cast<int>(added.size()) <= span_bound) {
        for (Vertex v : added) marked[v] = 1;
        span += static_cast<int>(added.size());
        chosen.push_back(e);
        const bool full = self(self, e + 1);
        chosen.pop_back();
        span -= static_cast<int>(added.size());
        for (Vertex v : added) marked[v] = 0;
        if (full) return true;
      }
    }
    return false;
  };
  dfs(dfs, 0);
  return result;
}

int Hypergraph::girth(int cap) const {
  if (cap < 2) throw std::invalid_argument("girth cap must be at least 2");
  for (int i = 2; i < cap; ++i)
    if (!find_i_cycles(i, 1).empty()) return i;
  return cap;
}

std::vector<std::array<EdgeId, 3>> Hypergraph::find_triangles(
    std::size_t limit) const {
  if (!simple_)
    throw std::invalid_argument("triangle search requires a simple hypergraph");
  // Each triangle {A, B, C} with A∩B = {v} shows up as a covered pair at v:
  // x = A∩C, y = B∩C, witnessed by C.  Scanning every center finds every
  // triangle exactly three times.
  std::set<std::array<EdgeId, 3>> found;
  for (Vertex v = 0; v < n_; ++v) {
    for (const CoveredPair& cp : covered_pairs(v).pairs) {
      EdgeId a = edges_with_pair(v, cp.x).front();
      EdgeId b = edges_with_pair(v, cp.y).front();
      std::array<EdgeId, 3> tri{a, b, cp.witness};
      std::sort(tri.begin(), tri.end());
      found.insert(tri);
    }
  }
  std::vector<std::array<EdgeId, 3>> result;
  for (const auto& tri : found) {
    result.push_back(tri);
    if (result.size() == limit) break;
  }
  return result;
}

CoveredPairReport Hypergraph::covered_pairs(Vertex v) const {
  if (!simple_)
    throw std::invalid_argument("covered pairs require a simple hypergraph");
  check_vertex(v);
  CoveredPairReport report;
  report.center = v;
  const std::vector<Vertex> nbrs = neighborhood(v);
  for (std::size_t a = 0; a + 1 < nbrs.size(); ++a) {
    for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
      for (EdgeId e : edges_with_pair(nbrs[a], nbrs[b])) {
        if (!std::binary_search(edges_[e].begin(), edges_[e].end(), v)) {
          report.pairs.push_back({nbrs[a], nbrs[b], e});
          break;  // smallest witness id
        }
      }
    }
  }
  return report;
}

Hypergraph::Induced Hypergraph::induced(const std::vector<Vertex>& subset) const {
  std::vector<Vertex> keep = subset;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (Vertex v : keep) check_vertex(v);

  std::vector<int> old_to_new(n_, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) old_to_new[keep[i]] = static_cast<int>(i);

  std::vector<std::vector<Vertex>> sub_edges;
  for (const auto& e : edges_) {
    std::vector<Vertex> mapped;
    for (Vertex v : e) {
      if (old_to_new[v] < 0) break;
      mapped.push_back(old_to_new[v]);
    }
    if (static_cast<int>(mapped.size()) == k_) sub_edges.push_back(std::move(mapped));
  }
  return Induced{Hypergraph(k_, static_cast<int>(keep.size()), std::move(sub_edges)),
                 std::move(old_to_new), std::move(keep)};
}

VerifyReport Hypergraph::verify_coloring(const Coloring& coloring) const {
  if (static_cast<int>(coloring.color.size()) != n_)
    throw std::invalid_argument("coloring size differs from vertex count");
  for (Vertex v = 0; v < n_; ++v) {
    if (coloring.color[v] < 0)
      throw std::invalid_argument("uncolored vertex present");
    if (coloring.color[v] >= coloring.palette_size)
      throw std::invalid_argument("color outside the declared palette");
  }
  VerifyReport report;
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto& verts = edges_[e];
    bool mono = true;
    for (std::size_t j = 1; j < verts.size(); ++j)
      if (coloring.color[verts[j]] != coloring.color[verts[0]]) {
        mono = false;
        break;
      }
    if (mono) report.monochromatic_edges.push_back(e);
  }
  report.proper = report.monochromatic_edges.empty();
  return report;
}

}  // namespace hgcolor

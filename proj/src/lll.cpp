#include "hgcolor/lll.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hgcolor/rng.hpp"

namespace hgcolor {

namespace {

constexpr std::uint64_t kTagInit = 0x6c6c6c69;
constexpr std::uint64_t kTagResample = 0x6c6c6c72;

bool edge_monochromatic(const Hypergraph& g, const std::vector<int>& color,
                        EdgeId e) {
  const auto& verts = g.edge(e);
  for (std::size_t i = 1; i < verts.size(); ++i)
    if (color[verts[i]] != color[verts[0]]) return false;
  return true;
}

FinisherResult resample_loop(const Hypergraph& g,
                             const std::vector<std::vector<int>>& lists,
                             int palette_size, FinisherConfig cfg) {
  const int n = g.vertex_count();
  const long long cap =
      cfg.resample_cap > 0 ? cfg.resample_cap
                           : 1000LL * std::max(g.edge_count(), 1);

  std::vector<int> color(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    rng::Stream s(cfg.seed, {kTagInit, static_cast<std::uint64_t>(v)});
    color[v] = lists[v][s.below(lists[v].size())];
  }

  std::set<EdgeId> violated;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (edge_monochromatic(g, color, e)) violated.insert(e);

  FinisherResult result;
  while (!violated.empty() && result.resamples < cap) {
    const EdgeId e = *violated.begin();
    ++result.resamples;
    const auto& verts = g.edge(e);
    for (std::size_t j = 0; j < verts.size(); ++j) {
      rng::Stream s(cfg.seed,
                    {kTagResample, static_cast<std::uint64_t>(result.resamples),
                     static_cast<std::uint64_t>(j)});
      const Vertex v = verts[j];
      color[v] = lists[v][s.below(lists[v].size())];
    }
    // Only edges touching a redrawn vertex can change status.
    for (Vertex v : verts)
      for (EdgeId f : g.incident_edges(v)) {
        if (edge_monochromatic(g, color, f))
          violated.insert(f);
        else
          violated.erase(f);
      }
  }
  result.success = violated.empty();
  result.coloring.color = std::move(color);
  result.coloring.palette_size = palette_size;
  return result;
}

}  // namespace

int finisher_palette(int k, int max_degree) {
  if (k < 2) throw std::invalid_argument("uniformity must be at least 2");
  if (max_degree < 0) throw std::invalid_argument("negative max degree");
  if (max_degree == 0) return 1;
  return static_cast<int>(std::ceil(
             4.0 * std::pow(max_degree, 1.0 / (k - 1)))) +
         1;
}

FinisherResult moser_tardos_color(const Hypergraph& graph, FinisherConfig cfg) {
  int palette = cfg.palette > 0
                    ? cfg.palette
                    : finisher_palette(graph.uniformity(), graph.max_degree());
  std::vector<int> base(palette);
  for (int c = 0; c < palette; ++c) base[c] = c;
  std::vector<std::vector<int>> lists(graph.vertex_count(), base);
  return resample_loop(graph, lists, palette, cfg);
}

FinisherResult moser_tardos_color(const Hypergraph& graph,
                                  const std::vector<std::vector<int>>& lists,
                                  FinisherConfig cfg) {
  if (static_cast<int>(lists.size()) != graph.vertex_count())
    throw std::invalid_argument("one color list per vertex required");
  int top = 0;
  for (const auto& list : lists) {
    if (list.empty()) throw std::invalid_argument("empty color list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] < 0) throw std::invalid_argument("negative color id");
      if (i > 0 && list[i] <= list[i - 1])
        throw std::invalid_argument("color lists must be strictly increasing");
      top = std::max(top, list[i] + 1);
    }
  }
  return resample_loop(graph, lists, top, cfg);
}

FinisherResult finish(const Hypergraph& residual, int offset,
                      int first_phase_palette, std::uint64_t seed) {
  if (offset < 0) throw std::invalid_argument("negative palette offset");
  FinisherConfig cfg;
  cfg.seed = seed;
  cfg.palette = std::max(
      1, std::min(first_phase_palette,
                  finisher_palette(residual.uniformity(),
                                   residual.max_degree())));
  FinisherResult result = moser_tardos_color(residual, cfg);
  for (int& c : result.coloring.color) c += offset;
  result.coloring.palette_size = offset + cfg.palette;
  return result;
}

}  // namespace hgcolor

#include "hgcolor/partition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "hgcolor/rng.hpp"

namespace hgcolor {

namespace {

constexpr std::uint64_t kTagAssign = 0x70617274;

struct PartView {
  std::vector<Vertex> members;          // original ids, ascending
  Hypergraph::Induced induced;
};

std::vector<PartView> build_parts(const Hypergraph& graph,
                                  const std::vector<int>& assignment,
                                  int parts) {
  std::vector<std::vector<Vertex>> members(parts);
  for (Vertex v = 0; v < graph.vertex_count(); ++v)
    members[assignment[v]].push_back(v);
  std::vector<PartView> views;
  views.reserve(parts);
  for (int i = 0; i < parts; ++i)
    views.push_back({members[i], graph.induced(members[i])});
  return views;
}

PartStats stats_for(const PartView& view, int part_id) {
  const Hypergraph& sub = view.induced.graph;
  PartStats st;
  st.part = part_id;
  st.vertex_count = sub.vertex_count();
  st.edge_count = sub.edge_count();
  st.max_degree = sub.vertex_count() ? sub.max_degree() : 0;
  for (Vertex v = 0; v < sub.vertex_count(); ++v)
    st.worst_covered_pairs =
        std::max(st.worst_covered_pairs,
                 static_cast<int>(sub.covered_pairs(v).pairs.size()));
  st.triangle_count =
      static_cast<long long>(sub.find_triangles(~std::size_t{0}).size());
  return st;
}

// Vertices violating either bound inside their part, in original labels.
std::vector<Vertex> find_violators(const std::vector<PartView>& views,
                                   double degree_bound, double covered_bound,
                                   bool covered_at_bound) {
  std::vector<Vertex> bad;
  for (const PartView& view : views) {
    const Hypergraph& sub = view.induced.graph;
    for (Vertex v = 0; v < sub.vertex_count(); ++v) {
      bool violates = sub.degree(v) > degree_bound;
      if (!violates) {
        const int covered = static_cast<int>(sub.covered_pairs(v).pairs.size());
        violates = covered_at_bound ? covered >= covered_bound
                                    : covered > covered_bound;
      }
      if (violates) bad.push_back(view.induced.new_to_old[v]);
    }
  }
  std::sort(bad.begin(), bad.end());
  return bad;
}

PartitionResult resample_partition(const Hypergraph& graph, int parts,
                                   double degree_bound, double covered_bound,
                                   bool covered_at_bound, int max_rounds,
                                   std::uint64_t seed) {
  if (parts < 1) throw std::invalid_argument("part count must be positive");
  const int n = graph.vertex_count();

  PartitionResult result;
  result.degree_bound = degree_bound;
  result.covered_bound = covered_bound;
  result.covered_violation_at_bound = covered_at_bound;
  result.assignment.assign(n, 0);

  auto draw = [&](int round, Vertex v) {
    return static_cast<int>(
        rng::draw_u64(seed, {kTagAssign, static_cast<std::uint64_t>(round),
                             static_cast<std::uint64_t>(v)}) %
        static_cast<std::uint64_t>(parts));
  };
  for (Vertex v = 0; v < n; ++v) result.assignment[v] = draw(0, v);

  std::vector<Vertex> previous;
  int round = 0;
  while (true) {
    const auto views = build_parts(graph, result.assignment, parts);
    const auto violators =
        find_violators(views, degree_bound, covered_bound, covered_at_bound);
    if (violators.empty()) {
      result.certified = true;
      result.rounds_used = round;
      result.parts.clear();
      for (int i = 0; i < parts; ++i) result.parts.push_back(stats_for(views[i], i));
      return result;
    }
    if (round >= max_rounds) {
      result.certified = false;
      result.rounds_used = round;
      result.parts.clear();
      for (int i = 0; i < parts; ++i) result.parts.push_back(stats_for(views[i], i));
      return result;
    }
    ++round;

    if (violators == previous) {
      // No progress: re-randomize everything.
      for (Vertex v = 0; v < n; ++v) result.assignment[v] = draw(round, v);
    } else {
      // Re-randomize the distance-<=2 neighborhood of every violator.
      std::set<Vertex> region;
      for (Vertex v : violators) {
        region.insert(v);
        for (Vertex u : graph.neighborhood(v)) {
          region.insert(u);
          for (Vertex w : graph.neighborhood(u)) region.insert(w);
        }
      }
      for (Vertex v : region) result.assignment[v] = draw(round, v);
    }
    previous = violators;
  }
}

}  // namespace

PartitionResult lemma1_partition(const Hypergraph& graph, const Lemma1Config& cfg) {
  if (!graph.is_simple())
    throw std::invalid_argument("partitioning requires a simple hypergraph");
  const int k = graph.uniformity();
  const double max_deg = std::max(1, graph.max_degree());
  int parts = cfg.parts;
  if (parts == 0) {
    if (cfg.eps <= 0 || cfg.eps >= 1)
      throw std::invalid_argument("eps must lie in (0, 1)");
    parts = static_cast<int>(
        std::ceil(std::pow(max_deg, 2.0 / (3 * k - 4) - cfg.eps)));
    parts = std::max(parts, 1);
  }
  const double covered_factor =
      cfg.covered_factor > 0 ? cfg.covered_factor : static_cast<double>(k) * k;
  const double degree_bound =
      cfg.degree_factor * max_deg / std::pow(parts, k - 1);
  const double covered_bound =
      covered_factor * max_deg * max_deg / std::pow(parts, 3 * k - 4);
  return resample_partition(graph, parts, degree_bound, covered_bound,
                            /*covered_at_bound=*/false,
                            cfg.max_resample_rounds, cfg.seed);
}

PartitionResult lemma2_partition(const Hypergraph& graph, const Lemma2Config& cfg) {
  if (!graph.is_simple())
    throw std::invalid_argument("partitioning requires a simple hypergraph");
  const int k = graph.uniformity();
  const double max_deg = std::max(1, graph.max_degree());
  int parts = cfg.parts;
  if (parts == 0) {
    if (cfg.delta <= 0 || cfg.delta >= 1.0 / (k - 1))
      throw std::invalid_argument("delta must lie in (0, 1/(k-1))");
    parts = static_cast<int>(
        std::ceil(std::pow(max_deg, 1.0 / (k - 1) - cfg.delta)));
    parts = std::max(parts, 1);
  }
  const int covered_cap = cfg.covered_cap > 0 ? cfg.covered_cap : 200 * k * k;
  const double degree_bound =
      cfg.degree_factor * max_deg / std::pow(parts, k - 1);
  return resample_partition(graph, parts, degree_bound,
                            static_cast<double>(covered_cap),
                            /*covered_at_bound=*/true,
                            cfg.max_resample_rounds, cfg.seed);
}

RefineResult triangle_free_refine(const Hypergraph& graph) {
  if (!graph.is_simple())
    throw std::invalid_argument("refinement requires a simple hypergraph");
  const int n = graph.vertex_count();

  // Conflict digraph: center -> both members of each covered pair.
  std::vector<std::set<Vertex>> out(n);
  for (Vertex v = 0; v < n; ++v)
    for (const CoveredPair& cp : graph.covered_pairs(v).pairs) {
      out[v].insert(cp.x);
      out[v].insert(cp.y);
    }
  RefineResult result;
  for (Vertex v = 0; v < n; ++v)
    result.max_out_degree =
        std::max(result.max_out_degree, static_cast<int>(out[v].size()));
  result.class_bound = 2 * result.max_out_degree + 1;

  // Underlying undirected graph.
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : out[v]) {
      adj[v].insert(u);
      adj[u].insert(v);
    }

  // Smallest-last order: repeatedly remove a minimum-degree vertex
  // (smallest id on ties), then color greedily in reverse removal order.
  std::vector<int> live_degree(n), order;
  std::vector<char> removed(n, 0);
  for (Vertex v = 0; v < n; ++v) live_degree[v] = static_cast<int>(adj[v].size());
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!removed[v] && (best < 0 || live_degree[v] < live_degree[best]))
        best = v;
    removed[best] = 1;
    order.push_back(best);
    for (Vertex u : adj[best])
      if (!removed[u]) --live_degree[u];
  }

  std::vector<int> color(n, -1);
  int classes = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::set<int> taken;
    for (Vertex u : adj[*it])
      if (color[u] >= 0) taken.insert(color[u]);
    int c = 0;
    while (taken.count(c)) ++c;
    color[*it] = c;
    classes = std::max(classes, c + 1);
  }
  if (classes > result.class_bound && n > 0)
    throw std::logic_error("class count exceeds the degeneracy bound");

  result.classes.assign(classes, {});
  for (Vertex v = 0; v < n; ++v) result.classes[color[v]].push_back(v);

  // A covered pair inside one class would need its center in another class;
  // verify directly that no class contains a triangle.
  for (const auto& cls : result.classes) {
    const auto sub = graph.induced(cls);
    if (!sub.graph.find_triangles(1).empty())
      throw std::logic_error("refined class contains a triangle");
  }
  return result;
}

PartitionCheck check_partition(const Hypergraph& graph,
                               const PartitionResult& result) {
  PartitionCheck check;
  const int n = graph.vertex_count();
  if (static_cast<int>(result.assignment.size()) != n) {
    check.mismatches.push_back("assignment size differs from vertex count");
    return check;
  }
  int parts = 0;
  for (int p : result.assignment) {
    if (p < 0) {
      check.mismatches.push_back("negative part id");
      return check;
    }
    parts = std::max(parts, p + 1);
  }
  parts = std::max(parts, static_cast<int>(result.parts.size()));

  const auto views = build_parts(graph, result.assignment, parts);
  check.stats_match = static_cast<int>(result.parts.size()) == parts;
  if (!check.stats_match)
    check.mismatches.push_back("part stats list size differs");

  check.bounds_hold = true;
  for (int i = 0; i < parts && check.stats_match; ++i) {
    const PartStats fresh = stats_for(views[i], i);
    const PartStats& stored = result.parts[i];
    auto differ = [&](const std::string& field, long long a, long long b) {
      if (a != b) {
        check.stats_match = false;
        check.mismatches.push_back("part " + std::to_string(i) + " " + field +
                                   ": stored " + std::to_string(a) +
                                   ", recomputed " + std::to_string(b));
      }
    };
    differ("vertex_count", stored.vertex_count, fresh.vertex_count);
    differ("edge_count", stored.edge_count, fresh.edge_count);
    differ("max_degree", stored.max_degree, fresh.max_degree);
    differ("worst_covered_pairs", stored.worst_covered_pairs,
           fresh.worst_covered_pairs);
    differ("triangle_count", stored.triangle_count, fresh.triangle_count);

    if (fresh.max_degree > result.degree_bound) check.bounds_hold = false;
    if (result.covered_violation_at_bound
            ? fresh.worst_covered_pairs >= result.covered_bound
            : fresh.worst_covered_pairs > result.covered_bound)
      check.bounds_hold = false;
  }
  if (result.certified && !check.bounds_hold)
    check.mismatches.push_back("certified result violates its bounds");
  return check;
}

void write_partition_jsonl(const PartitionResult& result, std::ostream& out) {
  for (const PartStats& st : result.parts) {
    nlohmann::json record;
    record["part"] = st.part;
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t v = 0; v < result.assignment.size(); ++v)
      if (result.assignment[v] == st.part) verts.push_back(v);
    record["vertices"] = std::move(verts);
    record["stats"] = {{"vertex_count", st.vertex_count},
                       {"edge_count", st.edge_count},
                       {"max_degree", st.max_degree},
                       {"worst_covered_pairs", st.worst_covered_pairs},
                       {"triangle_count", st.triangle_count}};
    out << record.dump() << '\n';
  }
}

}  // namespace hgcolor

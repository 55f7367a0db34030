#include "hgcolor/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "hgcolor/rng.hpp"

namespace hgcolor {

namespace {

constexpr std::uint64_t kTagActivate = 0x61637431;
constexpr std::uint64_t kTagKeep = 0x6b656570;

double geometric_sum(double x, int terms) {
  // sum_{t=0}^{terms-1} x^t
  if (terms <= 0) return 0;
  if (x == 1.0) return terms;
  return (1.0 - std::pow(x, terms)) / (1.0 - x);
}

}  // namespace

void EngineParams::validate() const {
  if (k < 3) throw std::invalid_argument("engine requires uniformity >= 3");
  if (max_degree < 1) throw std::invalid_argument("max_degree must be positive");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  if (palette < 1) throw std::invalid_argument("palette must be positive");
  if (prob_cap <= 0 || prob_cap > 1)
    throw std::invalid_argument("prob_cap must lie in (0, 1]");
  if (activation_rate <= 0)
    throw std::invalid_argument("activation_rate must be positive");
  if (activation_rate * prob_cap >= 1)
    throw std::invalid_argument(
        "activation_rate * prob_cap must stay below 1");
  if (max_rounds < 0) throw std::invalid_argument("max_rounds must be nonnegative");
  if (collision_budget <= 0)
    throw std::invalid_argument("collision_budget must be positive");
  if (handoff_exponent < 0 || handoff_exponent > 1)
    throw std::invalid_argument("handoff_exponent must lie in [0, 1]");
  if (round_retries < 0)
    throw std::invalid_argument("round_retries must be nonnegative");
}

EngineParams params_from(int k, int max_degree, double eps, ParamMode mode) {
  if (k < 3) throw std::invalid_argument("engine requires uniformity >= 3");
  if (max_degree < 2) throw std::invalid_argument("max_degree must be at least 2");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  if (mode != ParamMode::theory)
    throw std::invalid_argument(
        "practical parameters are explicit; use practical_params");

  EngineParams p;
  p.k = k;
  p.max_degree = max_degree;
  p.eps = eps;
  p.mode = ParamMode::theory;
  const double log_d = std::log(static_cast<double>(max_degree));
  p.collision_budget = eps * eps * log_d / (100.0 * std::pow(k, 2 * k + 1));
  p.activation_rate = eps / p.collision_budget;
  p.palette = static_cast<int>(std::ceil(
      std::pow(max_degree / p.collision_budget, 1.0 / (k - 1))));
  p.prob_cap = std::pow(max_degree, -1.0 / (k - 1) + eps);
  const double loglog = std::log(log_d);
  p.max_rounds = std::max(0, static_cast<int>(std::ceil(log_d * loglog / eps)));
  p.degenerate = p.collision_budget < 1 ||
                 p.activation_rate * p.prob_cap >= 1 ||
                 p.prob_cap * p.palette < 1 || p.prob_cap > 1;
  return p;
}

EngineParams practical_params(int k, int max_degree, double eps, int palette,
                              double activation_rate, double prob_cap,
                              int max_rounds, double collision_budget,
                              std::uint64_t seed) {
  EngineParams p;
  p.k = k;
  p.max_degree = max_degree;
  p.eps = eps;
  p.palette = palette;
  p.activation_rate = activation_rate;
  p.prob_cap = prob_cap;
  p.max_rounds = max_rounds;
  p.collision_budget =
      collision_budget > 0 ? collision_budget : eps / activation_rate;
  p.mode = ParamMode::practical;
  p.seed = seed;
  p.validate();
  return p;
}

void ColoringState::rebuild_derived() {
  const Hypergraph& g = *graph;
  const int k = g.uniformity();
  estate.assign(g.edge_count(), {});
  uncolored_count = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (color[v] < 0) ++uncolored_count;

  // Restriction edges keyed by their live vertex set; any duplicate key
  // means two original edges share at least two vertices.
  std::map<std::vector<Vertex>, int> seen;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EdgeState st;
    for (Vertex v : g.edge(e)) {
      if (color[v] < 0) {
        ++st.live;
      } else if (st.mono == -1) {
        st.mono = color[v];
      } else if (st.mono >= 0 && st.mono != color[v]) {
        st.mono = -2;
      }
    }
    if (st.live == 0 && st.mono >= 0)
      throw std::logic_error("soundness breach: monochromatic colored edge " +
                             std::to_string(e));
    if (st.live == 1 && st.mono >= 0) {
      // The last uncolored vertex must never be able to take the color.
      Vertex u = -1;
      for (Vertex v : g.edge(e))
        if (color[v] < 0) u = v;
      const double pv = p(u, st.mono);
      if (pv != 0.0 && pv != params.prob_cap)
        throw std::logic_error(
            "soundness breach: color still reachable on a nearly "
            "monochromatic edge " +
            std::to_string(e));
    }
    if (st.live >= 2 && st.live <= k - 1 && st.mono >= 0) {
      std::vector<Vertex> key;
      for (Vertex v : g.edge(e))
        if (color[v] < 0) key.push_back(v);
      auto [it, fresh] = seen.emplace(std::move(key), st.mono);
      if (!fresh)
        throw std::logic_error(
            "restriction edge duplicated; simplicity violated at edge " +
            std::to_string(e) + " (color " + std::to_string(it->second) + ")");
    }
    estate[e] = st;
  }
}

void ColoringState::validate_invariants() const {
  const Hypergraph& g = *graph;
  const int q = params.palette;
  if (static_cast<int>(color.size()) != g.vertex_count())
    throw std::logic_error("color vector size mismatch");
  if (prob.size() != static_cast<std::size_t>(g.vertex_count()) * q)
    throw std::logic_error("probability matrix size mismatch");
  if (lost_mask.size() != prob.size())
    throw std::logic_error("lost mask size mismatch");
  if (!color_ids.empty()) {
    if (static_cast<int>(color_ids.size()) != q)
      throw std::logic_error("external color table size mismatch");
    for (std::size_t i = 1; i < color_ids.size(); ++i)
      if (color_ids[i] <= color_ids[i - 1])
        throw std::logic_error("external color table not strictly increasing");
  }
  int unc = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (color[v] < -1 || color[v] >= q)
      throw std::logic_error("committed color out of range");
    if (color[v] < 0) ++unc;
    for (int c = 0; c < q; ++c) {
      const double pv = p(v, c);
      if (!(pv >= 0.0) || pv > params.prob_cap)
        throw std::logic_error("probability outside [0, prob_cap]");
      if (is_lost(v, c) && pv != 0.0)
        throw std::logic_error("lost color with nonzero probability");
    }
  }
  if (unc != uncolored_count) throw std::logic_error("uncolored count stale");

  ColoringState fresh = *this;
  fresh.rebuild_derived();
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (fresh.estate[e].live != estate[e].live ||
        fresh.estate[e].mono != estate[e].mono)
      throw std::logic_error("edge state cache stale at edge " + std::to_string(e));
}

namespace {

ColoringState base_state(std::shared_ptr<const Hypergraph> graph,
                         const EngineParams& params) {
  if (!graph) throw std::invalid_argument("null hypergraph");
  if (graph->uniformity() != params.k)
    throw std::invalid_argument("parameter uniformity differs from instance");
  if (!graph->is_simple())
    throw std::invalid_argument("engine requires a simple hypergraph");
  if (!graph->find_triangles(1).empty())
    throw std::invalid_argument("engine requires a triangle-free hypergraph");
  ColoringState st;
  st.graph = std::move(graph);
  st.params = params;
  st.color.assign(st.graph->vertex_count(), -1);
  return st;
}

}  // namespace

ColoringState init_state(std::shared_ptr<const Hypergraph> graph,
                         const EngineParams& params) {
  params.validate();
  if (params.degenerate)
    throw std::invalid_argument(
        "degenerate theory parameters cannot drive a run");
  if (1.0 / params.palette > params.prob_cap)
    throw std::invalid_argument("prob cap below the uniform initial value");
  ColoringState st = base_state(std::move(graph), params);
  st.support_size = params.palette;
  const std::size_t cells =
      static_cast<std::size_t>(st.graph->vertex_count()) * params.palette;
  st.prob.assign(cells, 1.0 / params.palette);
  st.lost_mask.assign(cells, 0);
  st.rebuild_derived();
  return st;
}

ColoringState init_state_list(std::shared_ptr<const Hypergraph> graph,
                              const EngineParams& params,
                              const std::vector<std::vector<int>>& lists) {
  params.validate();
  if (params.degenerate)
    throw std::invalid_argument(
        "degenerate theory parameters cannot drive a run");
  if (1.0 / params.palette > params.prob_cap)
    throw std::invalid_argument("prob cap below the uniform initial value");
  ColoringState st = base_state(std::move(graph), params);
  const int n = st.graph->vertex_count();
  const int q = params.palette;
  if (static_cast<int>(lists.size()) != n)
    throw std::invalid_argument("one color list per vertex required");

  // Active support: the q smallest of each vertex's 2q-color list.
  std::vector<std::vector<int>> support(n);
  std::vector<int> all;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<int> list = lists[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (static_cast<int>(list.size()) != 2 * q)
      throw std::invalid_argument("every color list must hold 2*palette distinct colors");
    for (int c : list)
      if (c < 0) throw std::invalid_argument("negative color id in a list");
    support[v].assign(list.begin(), list.begin() + q);
    all.insert(all.end(), support[v].begin(), support[v].end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  st.color_ids = all;
  st.params.palette = static_cast<int>(all.size());
  st.support_size = q;
  const std::size_t cells = static_cast<std::size_t>(n) * all.size();
  st.prob.assign(cells, 0.0);
  st.lost_mask.assign(cells, 0);
  for (Vertex v = 0; v < n; ++v)
    for (int c : support[v]) {
      const auto it = std::lower_bound(all.begin(), all.end(), c);
      st.prob[static_cast<std::size_t>(v) * all.size() + (it - all.begin())] =
          1.0 / q;
    }
  st.rebuild_derived();
  return st;
}

ColoringState state_from_partial(std::shared_ptr<const Hypergraph> graph,
                                 const EngineParams& params,
                                 std::vector<int> colors,
                                 std::vector<double> prob) {
  params.validate();
  ColoringState st = base_state(std::move(graph), params);
  const int n = st.graph->vertex_count();
  if (static_cast<int>(colors.size()) != n)
    throw std::invalid_argument("color vector size mismatch");
  if (prob.size() != static_cast<std::size_t>(n) * params.palette)
    throw std::invalid_argument("probability matrix size mismatch");
  for (int c : colors)
    if (c < -1 || c >= params.palette)
      throw std::invalid_argument("color out of range");
  for (double pv : prob)
    if (!(pv >= 0.0) || pv > params.prob_cap)
      throw std::invalid_argument("probability outside [0, prob_cap]");
  st.support_size = params.palette;
  st.color = std::move(colors);
  st.prob = std::move(prob);
  st.lost_mask.assign(st.prob.size(), 0);
  st.rebuild_derived();
  return st;
}

double survival_prob(const ColoringState& state, Vertex u, int c) {
  const Hypergraph& g = *state.graph;
  const int k = g.uniformity();
  const double rate = state.params.activation_rate;
  double product = 1.0;
  double log_sum = 0.0;
  bool tiny = false;
  auto apply = [&](double joint) {
    const double factor = 1.0 - joint;
    if (factor <= 0.0)
      throw std::logic_error("survival factor vanished; parameters out of range");
    if (factor < 1e-12) tiny = true;
    product *= factor;
    log_sum += std::log(factor);
  };

  for (EdgeId e : g.incident_edges(u)) {
    const auto& st = state.estate[e];
    if (st.live == k) {
      double joint = 1.0;
      for (Vertex v : g.edge(e))
        if (v != u) joint *= rate * state.p(v, c);
      apply(joint);
    } else if (st.live >= 2 && st.live <= k - 1 && st.mono == c) {
      double joint = 1.0;
      for (Vertex v : g.edge(e))
        if (v != u && state.color[v] < 0) joint *= rate * state.p(v, c);
      apply(joint);
    }
  }
  return tiny ? std::exp(log_sum) : product;
}

double survival_lower_bound(const ColoringState& state, Vertex u, int c) {
  const Hypergraph& g = *state.graph;
  const int k = g.uniformity();
  const double rate = state.params.activation_rate;
  double bound = 1.0;
  for (EdgeId e : g.incident_edges(u)) {
    const auto& st = state.estate[e];
    if (st.live == k) {
      double others = 1.0;
      for (Vertex v : g.edge(e))
        if (v != u) others *= state.p(v, c);
      bound -= std::pow(rate, k - 1) * others;
    } else if (st.live >= 2 && st.live <= k - 1 && st.mono == c) {
      double others = 1.0;
      for (Vertex v : g.edge(e))
        if (v != u && state.color[v] < 0) others *= state.p(v, c);
      bound -= std::pow(rate, st.live - 1) * others;
    }
  }
  return bound;
}

TelemetrySnapshot run_round(ColoringState& state, RoundScratch* scratch) {
  const Hypergraph& g = *state.graph;
  const int n = g.vertex_count();
  const int k = g.uniformity();
  const int q = state.params.palette;
  const double rate = state.params.activation_rate;
  const double cap = state.params.prob_cap;
  const std::uint64_t seed = state.params.seed;
  const std::uint64_t t = static_cast<std::uint64_t>(state.round);

  // Tentative activations.
  std::vector<std::vector<int>> activated(n);
  for (Vertex u = 0; u < n; ++u) {
    if (state.color[u] >= 0) continue;
    for (int c = 0; c < q; ++c) {
      const double pv = state.p(u, c);
      if (pv > 0.0 &&
          rng::draw_unit(seed, {kTagActivate, t, static_cast<std::uint64_t>(u),
                                static_cast<std::uint64_t>(c)}) < rate * pv)
        activated[u].push_back(c);
    }
  }

  // Loss sets: a color is lost at u when all other members of a live edge
  // activated it, or all other live members of a matching restriction edge
  // activated its edge color.
  std::vector<std::vector<int>> lost_round(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& st = state.estate[e];
    if (st.live == k) {
      const auto& verts = g.edge(e);
      for (Vertex u : verts) {
        const std::vector<int>* smallest = nullptr;
        for (Vertex v : verts)
          if (v != u && (!smallest || activated[v].size() < smallest->size()))
            smallest = &activated[v];
        for (int c : *smallest) {
          bool everywhere = true;
          for (Vertex v : verts) {
            if (v == u || &activated[v] == smallest) continue;
            if (!std::binary_search(activated[v].begin(), activated[v].end(), c)) {
              everywhere = false;
              break;
            }
          }
          if (everywhere) lost_round[u].push_back(c);
        }
      }
    } else if (st.live >= 2 && st.live <= k - 1 && st.mono >= 0) {
      const int c = st.mono;
      std::vector<Vertex> live;
      for (Vertex v : g.edge(e))
        if (state.color[v] < 0) live.push_back(v);
      for (Vertex u : live) {
        bool everywhere = true;
        for (Vertex v : live) {
          if (v == u) continue;
          if (!std::binary_search(activated[v].begin(), activated[v].end(), c)) {
            everywhere = false;
            break;
          }
        }
        if (everywhere) lost_round[u].push_back(c);
      }
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    auto& l = lost_round[u];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }

  // Survivors and commits: the smallest activated color that is neither
  // retired, lost this round, nor pinned at the cap.
  std::vector<int> chosen(n, -1);
  std::vector<std::vector<int>> survivors(n);
  for (Vertex u = 0; u < n; ++u) {
    if (state.color[u] >= 0) continue;
    for (int c : activated[u]) {
      if (state.is_lost(u, c)) continue;
      if (std::binary_search(lost_round[u].begin(), lost_round[u].end(), c))
        continue;
      if (state.p(u, c) == cap) continue;
      survivors[u].push_back(c);
    }
    if (!survivors[u].empty()) chosen[u] = survivors[u].front();
  }

  // Probability update, computed entirely from the pre-round state.
  std::vector<double> next_prob = state.prob;
  std::vector<std::vector<std::pair<int, char>>> retention(n);
  for (Vertex u = 0; u < n; ++u) {
    if (state.color[u] >= 0) continue;
    for (int c = 0; c < q; ++c) {
      const double pv = state.p(u, c);
      if (pv == 0.0) continue;
      const double surv = survival_prob(state, u, c);
      const double ratio = pv / surv;
      double updated;
      if (ratio < cap) {
        updated = std::binary_search(lost_round[u].begin(), lost_round[u].end(), c)
                      ? 0.0
                      : ratio;
      } else {
        const bool keep =
            rng::draw_unit(seed, {kTagKeep, t, static_cast<std::uint64_t>(u),
                                  static_cast<std::uint64_t>(c)}) < pv / cap;
        retention[u].push_back({c, keep ? 1 : 0});
        updated = keep ? cap : 0.0;
      }
      next_prob[static_cast<std::size_t>(u) * q + c] = updated;
    }
  }

  // The experiment values become the stored rows only for vertices that
  // stay uncolored; a vertex colored this round keeps its entering vector
  // (nothing reads it again, but dumps and replay see the frozen row).
  if (scratch) scratch->next_prob = next_prob;
  for (Vertex u = 0; u < n; ++u) {
    if (chosen[u] < 0) continue;
    const std::size_t base = static_cast<std::size_t>(u) * q;
    std::copy_n(state.prob.begin() + base, q, next_prob.begin() + base);
  }

  // Colors lost this round retire once their probability reaches zero;
  // colors parked at the cap stay excluded through the cap itself.
  for (Vertex u = 0; u < n; ++u) {
    if (state.color[u] >= 0 || chosen[u] >= 0) continue;
    for (int c : lost_round[u])
      if (next_prob[static_cast<std::size_t>(u) * q + c] == 0.0)
        state.lost_mask[static_cast<std::size_t>(u) * q + c] = 1;
  }

  state.prob.swap(next_prob);
  for (Vertex u = 0; u < n; ++u)
    if (chosen[u] >= 0) state.color[u] = chosen[u];
  ++state.round;
  state.rebuild_derived();

  if (scratch) {
    scratch->activated = std::move(activated);
    scratch->lost = std::move(lost_round);
    scratch->survivors = std::move(survivors);
    scratch->chosen = std::move(chosen);
    scratch->retention = std::move(retention);
  }
  return compute_snapshot(state);
}

TelemetrySnapshot compute_snapshot(const ColoringState& state) {
  const Hypergraph& g = *state.graph;
  const int n = g.vertex_count();
  const int k = g.uniformity();
  const int q = state.params.palette;
  const int levels = std::max(0, k - 2);  // restriction sizes 2..k-1

  TelemetrySnapshot snap;
  snap.round = state.round;
  snap.uncolored = state.uncolored_count;
  snap.max_restriction_weight.assign(levels, 0.0);
  snap.max_restriction_color_weight.assign(levels, 0.0);
  snap.max_restriction_degree_color.assign(levels, 0);
  snap.max_restriction_degree.assign(levels, 0);

  std::vector<double> vertex_weight(n, 0.0);
  std::vector<double> vertex_color_weight(static_cast<std::size_t>(n) * q, 0.0);
  std::vector<double> restr_weight(static_cast<std::size_t>(n) * levels, 0.0);
  std::vector<double> restr_color_weight(
      static_cast<std::size_t>(n) * levels * q, 0.0);
  std::vector<int> restr_degree(static_cast<std::size_t>(n) * levels, 0);
  std::vector<int> restr_degree_color(static_cast<std::size_t>(n) * levels * q, 0);
  std::vector<int> live_degree(n, 0);

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& st = state.estate[e];
    const auto& verts = g.edge(e);
    if (st.live == k) {
      double edge_weight = 0.0;
      for (int c = 0; c < q; ++c) {
        double full = 1.0;
        for (Vertex v : verts) full *= state.p(v, c);
        edge_weight += full;
        for (Vertex u : verts) {
          double others = 1.0;
          for (Vertex v : verts)
            if (v != u) others *= state.p(v, c);
          vertex_color_weight[static_cast<std::size_t>(u) * q + c] += others;
        }
      }
      snap.max_edge_weight = std::max(snap.max_edge_weight, edge_weight);
      for (Vertex u : verts) {
        vertex_weight[u] += edge_weight;
        ++live_degree[u];
      }
    } else if (st.live >= 2 && st.live <= k - 1 && st.mono >= 0) {
      const int level = st.live - 2;
      const int c = st.mono;
      std::vector<Vertex> live;
      for (Vertex v : verts)
        if (state.color[v] < 0) live.push_back(v);
      for (Vertex u : live) {
        double others = 1.0;
        for (Vertex v : live)
          if (v != u) others *= state.p(v, c);
        const std::size_t base =
            (static_cast<std::size_t>(u) * levels + level);
        restr_color_weight[base * q + c] += others;
        restr_weight[base] += state.p(u, c) * others;
        ++restr_degree[base];
        ++restr_degree_color[base * q + c];
      }
    }
  }

  double min_entropy = 0.0;
  bool first = true;
  for (Vertex u = 0; u < n; ++u) {
    if (state.color[u] >= 0) continue;
    snap.max_vertex_weight = std::max(snap.max_vertex_weight, vertex_weight[u]);
    double mass = 0.0, capped = 0.0, entropy = 0.0;
    for (int c = 0; c < q; ++c) {
      const double pv = state.p(u, c);
      mass += pv;
      if (pv == state.params.prob_cap) capped += pv;
      if (pv > 0.0) entropy -= pv * std::log(pv);
      snap.max_vertex_color_weight =
          std::max(snap.max_vertex_color_weight,
                   vertex_color_weight[static_cast<std::size_t>(u) * q + c]);
    }
    if (first || entropy < min_entropy) {
      min_entropy = entropy;
      first = false;
    }
    snap.max_capped_mass = std::max(snap.max_capped_mass, capped);
    snap.max_mass_deviation =
        std::max(snap.max_mass_deviation, std::abs(1.0 - mass));

    int total = live_degree[u];
    for (int level = 0; level < levels; ++level) {
      const std::size_t base = static_cast<std::size_t>(u) * levels + level;
      snap.max_restriction_weight[level] =
          std::max(snap.max_restriction_weight[level], restr_weight[base]);
      snap.max_restriction_degree[level] =
          std::max(snap.max_restriction_degree[level], restr_degree[base]);
      for (int c = 0; c < q; ++c) {
        snap.max_restriction_color_weight[level] =
            std::max(snap.max_restriction_color_weight[level],
                     restr_color_weight[base * q + c]);
        snap.max_restriction_degree_color[level] =
            std::max(snap.max_restriction_degree_color[level],
                     restr_degree_color[base * q + c]);
      }
      total += restr_degree[base];
    }
    snap.max_live_degree = std::max(snap.max_live_degree, live_degree[u]);
    snap.max_total_degree = std::max(snap.max_total_degree, total);
  }
  snap.min_entropy = first ? 0.0 : min_entropy;
  return snap;
}

namespace {

constexpr std::uint64_t kTagRedraw = 0x72647277;

bool any_monitor_tripped(const ColoringState& state) {
  for (const TelemetryFlag& flag : telemetry_check(state).flags)
    if (!flag.pass) return true;
  return false;
}

}  // namespace

RunResult run(ColoringState& state) {
  RunResult result;
  result.series.push_back(compute_snapshot(state));
  const double threshold = std::pow(static_cast<double>(state.params.max_degree),
                                    state.params.handoff_exponent);
  while (true) {
    if (state.uncolored_count == 0) {
      result.stop = StopReason::all_colored;
      break;
    }
    // The gauge is the degree of the residual the finisher would receive:
    // edges still fully uncolored.  Once that drops to the threshold --
    // including all the way to zero -- the finisher takes over; partially
    // colored edges are safe under any fresh-offset completion.  An instance
    // with no edges at all has nothing to hand off and is colored here.
    const int live_degree = result.series.back().max_live_degree;
    if (state.graph->edge_count() > 0 && live_degree <= threshold) {
      result.stop = StopReason::handoff;
      break;
    }
    if (state.round >= state.params.max_rounds) {
      result.stop = StopReason::round_limit;
      break;
    }
    if (state.params.round_retries > 0) {
      // Experimental: redraw the round with fresh randomness while a drift
      // monitor trips.  Each redraw reseeds the remaining trajectory, so
      // the whole run stays a pure function of the original seed.
      const ColoringState before = state;
      TelemetrySnapshot snap = run_round(state);
      for (int attempt = 1;
           attempt <= state.params.round_retries && any_monitor_tripped(state);
           ++attempt) {
        state = before;
        state.params.seed = rng::draw_u64(
            before.params.seed,
            {kTagRedraw, static_cast<std::uint64_t>(before.round),
             static_cast<std::uint64_t>(attempt)});
        snap = run_round(state);
      }
      result.series.push_back(snap);
    } else {
      result.series.push_back(run_round(state));
    }
    ++result.rounds;
  }
  return result;
}

TelemetryCheck telemetry_check(const ColoringState& state) {
  const Hypergraph& g = *state.graph;
  const int n = g.vertex_count();
  const int k = g.uniformity();
  const int q = state.params.palette;
  const int levels = std::max(0, k - 2);

  TelemetryCheck check;
  TelemetrySnapshot& snap = check.recomputed;
  snap.round = state.round;
  snap.max_restriction_weight.assign(levels, 0.0);
  snap.max_restriction_color_weight.assign(levels, 0.0);
  snap.max_restriction_degree_color.assign(levels, 0);
  snap.max_restriction_degree.assign(levels, 0);

  // Classification straight from the colors; no engine caches involved.
  auto classify = [&](EdgeId e, int& live, int& mono,
                      std::vector<Vertex>& live_verts) {
    live = 0;
    mono = -1;
    live_verts.clear();
    for (Vertex v : g.edge(e)) {
      if (state.color[v] < 0) {
        ++live;
        live_verts.push_back(v);
      } else if (mono == -1) {
        mono = state.color[v];
      } else if (mono >= 0 && mono != state.color[v]) {
        mono = -2;
      }
    }
  };

  int uncolored = 0;
  bool first = true;
  std::vector<Vertex> live_verts;
  for (Vertex u = 0; u < n; ++u) {
    if (state.color[u] >= 0) continue;
    ++uncolored;

    double vertex_weight = 0.0;
    std::vector<double> vertex_color_weight(q, 0.0);
    std::vector<double> restr_weight(levels, 0.0);
    std::vector<std::vector<double>> restr_color_weight(
        levels, std::vector<double>(q, 0.0));
    std::vector<int> restr_degree(levels, 0);
    std::vector<std::vector<int>> restr_degree_color(levels,
                                                     std::vector<int>(q, 0));
    int live_degree = 0;

    for (EdgeId e : g.incident_edges(u)) {
      int live, mono;
      classify(e, live, mono, live_verts);
      if (live == k) {
        ++live_degree;
        for (int c = 0; c < q; ++c) {
          double others = 1.0;
          for (Vertex v : g.edge(e))
            if (v != u) others *= state.p(v, c);
          vertex_color_weight[c] += others;
          vertex_weight += state.p(u, c) * others;
        }
      } else if (live >= 2 && live <= k - 1 && mono >= 0) {
        const int level = live - 2;
        double others = 1.0;
        for (Vertex v : live_verts)
          if (v != u) others *= state.p(v, mono);
        restr_color_weight[level][mono] += others;
        restr_weight[level] += state.p(u, mono) * others;
        ++restr_degree[level];
        ++restr_degree_color[level][mono];
      }
    }

    double mass = 0.0, capped = 0.0, entropy = 0.0;
    for (int c = 0; c < q; ++c) {
      const double pv = state.p(u, c);
      mass += pv;
      if (pv == state.params.prob_cap) capped += pv;
      if (pv > 0.0) entropy -= pv * std::log(pv);
    }

    snap.max_vertex_weight = std::max(snap.max_vertex_weight, vertex_weight);
    for (int c = 0; c < q; ++c)
      snap.max_vertex_color_weight =
          std::max(snap.max_vertex_color_weight, vertex_color_weight[c]);
    int total = live_degree;
    for (int level = 0; level < levels; ++level) {
      snap.max_restriction_weight[level] =
          std::max(snap.max_restriction_weight[level], restr_weight[level]);
      snap.max_restriction_degree[level] =
          std::max(snap.max_restriction_degree[level], restr_degree[level]);
      for (int c = 0; c < q; ++c) {
        snap.max_restriction_color_weight[level] =
            std::max(snap.max_restriction_color_weight[level],
                     restr_color_weight[level][c]);
        snap.max_restriction_degree_color[level] =
            std::max(snap.max_restriction_degree_color[level],
                     restr_degree_color[level][c]);
      }
      total += restr_degree[level];
    }
    snap.max_live_degree = std::max(snap.max_live_degree, live_degree);
    snap.max_total_degree = std::max(snap.max_total_degree, total);
    snap.max_capped_mass = std::max(snap.max_capped_mass, capped);
    snap.max_mass_deviation =
        std::max(snap.max_mass_deviation, std::abs(1.0 - mass));
    if (first || entropy < snap.min_entropy) {
      snap.min_entropy = entropy;
      first = false;
    }
  }
  snap.uncolored = uncolored;
  if (first) snap.min_entropy = 0.0;

  // Edge weights need one independent pass over the edges themselves.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int live, mono;
    classify(e, live, mono, live_verts);
    if (live != k) continue;
    double edge_weight = 0.0;
    for (int c = 0; c < q; ++c) {
      double full = 1.0;
      for (Vertex v : g.edge(e)) full *= state.p(v, c);
      edge_weight += full;
    }
    snap.max_edge_weight = std::max(snap.max_edge_weight, edge_weight);
  }

  // Drift monitors: warn-only bounds implied by the parameters.
  const double t = static_cast<double>(state.round);
  const double dd = static_cast<double>(state.params.max_degree);
  const double eps = state.params.eps;
  const double omega = state.params.collision_budget;
  const double rate = state.params.activation_rate;
  const double cap = state.params.prob_cap;
  const double decay = std::max(0.0, 1.0 - rate / (3.0 * k));
  const double shrink = std::max(0.0, 1.0 - rate / (2.0 * k));

  auto add_flag = [&](const std::string& name, double value, double bound,
                      bool at_most) {
    TelemetryFlag flag;
    flag.name = name;
    flag.value = value;
    flag.bound = bound;
    flag.pass = snap.uncolored == 0 || (at_most ? value <= bound : value >= bound);
    check.flags.push_back(flag);
  };

  add_flag("mass_conservation", snap.max_mass_deviation,
           t * std::pow(dd, -eps), true);
  add_flag("edge_weight", snap.max_edge_weight,
           omega / dd + t / std::pow(dd, 1.0 + eps), true);
  for (int level = 0; level < levels; ++level) {
    const int i = level + 2;
    add_flag("restriction_weight_" + std::to_string(i),
             snap.max_restriction_weight[level],
             std::pow(k, 2 * k - 2 * i) * omega * std::pow(decay, t), true);
  }
  add_flag("entropy", snap.min_entropy,
           std::log(static_cast<double>(state.support_size)) -
               std::pow(k, 2 * k) * eps *
                   geometric_sum(decay, state.round + 1),
           false);
  add_flag("total_degree", snap.max_total_degree, std::pow(shrink, t) * dd,
           true);
  for (int level = 0; level < levels; ++level) {
    const int i = level + 2;
    add_flag("restriction_degree_" + std::to_string(i),
             snap.max_restriction_degree_color[level],
             std::pow(1.0 + 2.0 * k * rate, t) * dd * std::pow(cap, k - i),
             true);
  }
  add_flag("capped_mass", snap.max_capped_mass, eps / 10.0, true);

  // Residual live degree: the per-round decay target with the handoff
  // threshold as a floor, so the flag reads "on track for (or already at)
  // the degree the next phase needs".
  add_flag("residual_degree", snap.max_live_degree,
           std::max(std::pow(dd, state.params.handoff_exponent),
                    std::pow(shrink, t) * dd),
           true);
  return check;
}

void write_telemetry_csv(const std::vector<TelemetrySnapshot>& series, int k,
                         std::ostream& out) {
  out << "t,uncolored,max_edge_weight";
  for (int i = 2; i <= k - 1; ++i) out << ",max_restriction_weight_" << i;
  out << ",min_entropy,max_total_degree,max_mass_deviation,max_capped_mass\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const TelemetrySnapshot& s : series) {
    out << s.round << ',' << s.uncolored;
    std::snprintf(buf, sizeof buf, "%.17g", s.max_edge_weight);
    out << ',' << buf;
    for (int level = 0; level < k - 2; ++level)
      num(level < static_cast<int>(s.max_restriction_weight.size())
              ? s.max_restriction_weight[level]
              : 0.0);
    num(s.min_entropy);
    out << ',' << s.max_total_degree;
    num(s.max_mass_deviation);
    num(s.max_capped_mass);
    out << '\n';
  }
}

void write_state_jsonl(const ColoringState& state, std::ostream& out) {
  const int n = state.graph->vertex_count();
  const int q = state.params.palette;
  for (Vertex v = 0; v < n; ++v) {
    nlohmann::json record;
    record["vertex"] = v;
    record["colored"] = state.color[v] >= 0;
    if (state.color[v] >= 0)
      record["color"] = state.external_color(state.color[v]);
    else
      record["color"] = nullptr;
    double mass = 0.0;
    int lost = 0, capped = 0;
    for (int c = 0; c < q; ++c) {
      mass += state.p(v, c);
      if (state.is_lost(v, c)) ++lost;
      if (state.is_capped(v, c)) ++capped;
    }
    record["prob_mass"] = mass;
    record["lost_colors"] = lost;
    record["capped_colors"] = capped;
    out << record.dump() << '\n';
  }
}

}  // namespace hgcolor

#include "hgcolor/probes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/rational.hpp>

#include "hgcolor/rng.hpp"

namespace hgcolor {

namespace {

constexpr std::uint64_t kTagTail = 0x7461696c;

template <typename T>
void validate(const PolySystem<T>& sys) {
  if (sys.ground_size < 0) throw std::invalid_argument("negative ground size");
  if (static_cast<int>(sys.prob.size()) != sys.ground_size)
    throw std::invalid_argument("probability vector size mismatch");
  for (const auto& f : sys.family) {
    if (static_cast<int>(f.size()) > sys.rank)
      throw std::invalid_argument("family set larger than declared rank");
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f[j] < 0 || f[j] >= sys.ground_size)
        throw std::invalid_argument("family element out of range");
      if (j > 0 && f[j] <= f[j - 1])
        throw std::invalid_argument("family sets must be sorted and distinct");
    }
  }
}

}  // namespace

template <typename T>
KimVuStats<T> kimvu_stats(const PolySystem<T>& sys) {
  validate(sys);
  KimVuStats<T> stats;
  stats.expectation = T(0);
  for (const auto& f : sys.family) {
    T full = T(1);
    for (int e : f) full = full * sys.prob[e];
    stats.expectation = stats.expectation + full;

    // Every nonempty subset A of f contributes prod over f \ A to M_A.
    const std::size_t s = f.size();
    for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
      std::vector<int> a;
      T rest = T(1);
      for (std::size_t j = 0; j < s; ++j) {
        if (mask & (1u << j))
          a.push_back(f[j]);
        else
          rest = rest * sys.prob[f[j]];
      }
      auto [it, fresh] = stats.partials.emplace(std::move(a), rest);
      if (!fresh) it->second = it->second + rest;
    }
  }
  stats.m1 = T(0);
  for (const auto& [a, value] : stats.partials) {
    (void)a;
    if (stats.m1 < value) stats.m1 = value;
  }
  stats.m0 = std::max(stats.expectation, stats.m1);
  return stats;
}

template <typename T>
T kimvu_partial(const PolySystem<T>& sys, std::vector<int> a) {
  validate(sys);
  std::sort(a.begin(), a.end());
  T total = T(0);
  for (const auto& f : sys.family) {
    if (!std::includes(f.begin(), f.end(), a.begin(), a.end())) continue;
    T rest = T(1);
    for (int e : f)
      if (!std::binary_search(a.begin(), a.end(), e)) rest = rest * sys.prob[e];
    total = total + rest;
  }
  return total;
}

template <typename T>
PolySystem<T> covered_pair_polysystem(const Hypergraph& graph, Vertex center,
                                      int parts) {
  if (parts < 1) throw std::invalid_argument("part count must be positive");
  const CoveredPairReport report = graph.covered_pairs(center);
  const int k = graph.uniformity();

  // Collect the support vertices first so element ids are dense.
  std::vector<Vertex> support;
  std::vector<std::vector<Vertex>> sets;
  for (const CoveredPair& cp : report.pairs) {
    std::vector<Vertex> s = graph.unique_completion(center, cp.x);
    const std::vector<Vertex> right = graph.unique_completion(center, cp.y);
    s.insert(s.end(), right.begin(), right.end());
    for (Vertex v : graph.edge(cp.witness))
      if (v != cp.x && v != cp.y) s.push_back(v);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (static_cast<int>(s.size()) != 3 * k - 4)
      throw std::logic_error("covered-pair support is not 3k-4 vertices");
    support.insert(support.end(), s.begin(), s.end());
    sets.push_back(std::move(s));
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  PolySystem<T> sys;
  sys.ground_size = static_cast<int>(support.size());
  sys.rank = 3 * k - 4;
  sys.prob.assign(support.size(), T(1) / T(parts));
  for (const auto& s : sets) {
    std::vector<int> f;
    for (Vertex v : s) {
      const auto it = std::lower_bound(support.begin(), support.end(), v);
      f.push_back(static_cast<int>(it - support.begin()));
    }
    sys.family.push_back(std::move(f));
  }
  return sys;
}

template KimVuStats<double> kimvu_stats(const PolySystem<double>&);
template KimVuStats<boost::rational<long long>> kimvu_stats(
    const PolySystem<boost::rational<long long>>&);
template double kimvu_partial(const PolySystem<double>&, std::vector<int>);
template boost::rational<long long> kimvu_partial(
    const PolySystem<boost::rational<long long>>&, std::vector<int>);
template PolySystem<double> covered_pair_polysystem(const Hypergraph&, Vertex,
                                                    int);
template PolySystem<boost::rational<long long>> covered_pair_polysystem(
    const Hypergraph&, Vertex, int);

TailReport empirical_tail(const PolySystem<double>& sys, std::uint64_t trials,
                          const std::vector<double>& lambda_grid,
                          std::uint64_t seed) {
  validate(sys);
  if (trials == 0) throw std::invalid_argument("trial count must be positive");
  const KimVuStats<double> stats = kimvu_stats(sys);
  const double scale = std::sqrt(stats.m0 * stats.m1);

  std::vector<double> samples;
  samples.reserve(trials);
  std::vector<char> hit(sys.ground_size, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (int e = 0; e < sys.ground_size; ++e)
      hit[e] = rng::draw_unit(seed, {kTagTail, t, static_cast<std::uint64_t>(e)}) <
               sys.prob[e];
    double z = 0;
    for (const auto& f : sys.family) {
      bool all = true;
      for (int e : f)
        if (!hit[e]) {
          all = false;
          break;
        }
      if (all) z += 1.0;
    }
    samples.push_back(z);
  }

  TailReport report;
  double sum = 0, sq = 0;
  for (double z : samples) {
    sum += z;
    sq += z * z;
  }
  report.sample_mean = sum / static_cast<double>(trials);
  const double var =
      std::max(0.0, sq / static_cast<double>(trials) -
                        report.sample_mean * report.sample_mean);
  report.sample_stddev = std::sqrt(var);

  for (double lambda : lambda_grid) {
    TailRow row;
    row.lambda = lambda;
    row.threshold = std::pow(lambda, sys.rank) * scale;
    std::uint64_t count = 0;
    for (double z : samples)
      if (std::abs(z - stats.expectation) >= row.threshold) ++count;
    row.empirical = static_cast<double>(count) / static_cast<double>(trials);
    row.trials = trials;
    report.rows.push_back(row);
  }
  return report;
}

double hoeffding_bound(double t, const std::vector<double>& ranges) {
  if (t < 0) throw std::invalid_argument("deviation must be nonnegative");
  double denom = 0;
  for (double a : ranges) {
    if (a <= 0) throw std::invalid_argument("term ranges must be positive");
    denom += a * a;
  }
  if (denom == 0) throw std::invalid_argument("at least one term required");
  return std::exp(-2.0 * t * t / denom);
}

double hoeffding_mult(double big_l, double alpha) {
  if (alpha <= 0 || alpha > 3)
    throw std::invalid_argument("alpha must lie in (0, 3]");
  if (big_l < 0) throw std::invalid_argument("L must be nonnegative");
  return std::pow(3.0 / alpha, big_l);
}

double chernoff_half(double n, double p) {
  if (n < 0 || p < 0 || p > 1)
    throw std::invalid_argument("need n >= 0 and p in [0, 1]");
  return std::exp(-n * p / 3.0);
}

ChromaticResult exact_chromatic(const Hypergraph& graph, int max_colors,
                                std::uint64_t node_budget) {
  if (max_colors < 1) throw std::invalid_argument("max_colors must be positive");
  const int n = graph.vertex_count();
  ChromaticResult result;
  std::vector<int> color(n, -1);
  // True when every vertex of e except one is colored c; the last vertex
  // then cannot take c, and a fully colored edge must not be monochromatic.
  auto feasible = [&](Vertex v, int c) {
    for (EdgeId e : graph.incident_edges(v)) {
      bool all_c = true;
      for (Vertex u : graph.edge(e)) {
        if (u == v) continue;
        if (color[u] != c) {
          all_c = false;
          break;
        }
      }
      if (all_c) return false;
    }
    return true;
  };

  for (int palette = 1; palette <= max_colors; ++palette) {
    std::fill(color.begin(), color.end(), -1);
    bool exhausted = false;
    // Canonical order: vertex v may use colors 0..min(max_used+1, palette-1).
    auto dfs = [&](auto&& self, Vertex v, int used) -> bool {
      if (v == n) return true;
      if (++result.nodes > node_budget) {
        exhausted = true;
        return false;
      }
      const int top = std::min(used, palette - 1);
      for (int c = 0; c <= top; ++c) {
        if (!feasible(v, c)) continue;
        color[v] = c;
        if (self(self, v + 1, std::max(used, c + 1))) return true;
        color[v] = -1;
        if (exhausted) return false;
      }
      return false;
    };
    if (dfs(dfs, 0, 0)) {
      result.status = ChromaticResult::Status::exact;
      result.value = palette;
      return result;
    }
    if (exhausted) {
      result.status = ChromaticResult::Status::budget_exceeded;
      result.value = palette - 1;  // largest size fully refuted
      return result;
    }
  }
  result.status = ChromaticResult::Status::above_max;
  result.value = max_colors;
  return result;
}

}  // namespace hgcolor

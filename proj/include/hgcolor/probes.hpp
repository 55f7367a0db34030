#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hgcolor/hypergraph.hpp"

namespace hgcolor {

// Polynomial system: a family of subsets of a ground set [0, ground_size),
// each of size at most rank, with an independent success probability per
// ground element.  Z = sum over family sets of the product of their
// element indicators.  T is double in production and an exact rational in
// tests.
template <typename T>
struct PolySystem {
  int ground_size = 0;
  int rank = 0;  // max family set size (s)
  std::vector<std::vector<int>> family;
  std::vector<T> prob;
};

// expectation = E(Z).  partials maps each nonempty A contained in some
// family set to M_A = sum over family sets f containing A of the product of
// probabilities over f \ A (the expectation of the A-derivative with the
// worst-case substitution deferred to the caller).  m1 = max of partials,
// m0 = max(E(Z), m1).
template <typename T>
struct KimVuStats {
  T expectation{};
  std::map<std::vector<int>, T> partials;
  T m0{};
  T m1{};
};

template <typename T>
KimVuStats<T> kimvu_stats(const PolySystem<T>& sys);

// M_A for one query set (0 when A is contained in no family set).
template <typename T>
T kimvu_partial(const PolySystem<T>& sys, std::vector<int> a);

// Ground set remap of the covered-pair structure at a center vertex: one
// family set per covered pair, holding the completions of both pair
// members plus the witness remainder (3k-4 distinct vertices), with uniform
// element probability 1/parts.  Models every involved vertex independently
// landing in one fixed part out of `parts`.
template <typename T>
PolySystem<T> covered_pair_polysystem(const Hypergraph& graph, Vertex center,
                                      int parts);

struct TailRow {
  double lambda = 0;
  double threshold = 0;  // lambda^rank * sqrt(m0*m1)
  double empirical = 0;  // fraction of trials with |Z - E(Z)| >= threshold
  std::uint64_t trials = 0;
};

// Monte-Carlo tail of |Z - E(Z)| at thresholds lambda^rank*sqrt(M0*M1).
// Also usable to check E(Z) via the returned sample mean.
struct TailReport {
  double sample_mean = 0;
  double sample_stddev = 0;
  std::vector<TailRow> rows;
};
TailReport empirical_tail(const PolySystem<double>& sys, std::uint64_t trials,
                          const std::vector<double>& lambda_grid,
                          std::uint64_t seed);

// exp(-2 t^2 / sum a_i^2) for a sum of independent terms with ranges a_i.
double hoeffding_bound(double t, const std::vector<double>& ranges);

// (3/alpha)^L, valid for L >= alpha * E(X); alpha in (0, 3].
double hoeffding_mult(double big_l, double alpha);

// exp(-n p / 3): chance a Bin(n, p) reaches twice its mean.
double chernoff_half(double n, double p);

struct ChromaticResult {
  enum class Status { exact, above_max, budget_exceeded };
  Status status = Status::exact;
  int value = 0;              // chromatic number when exact
  std::uint64_t nodes = 0;    // search nodes visited
};

// Smallest palette size in [1, max_colors] admitting a coloring with no
// monochromatic edge, by backtracking with canonical color order (a vertex
// may only open one color beyond those already used).  Gives up once the
// node budget is exhausted: status budget_exceeded means unknown above the
// last fully refuted palette size (stored in value).
ChromaticResult exact_chromatic(const Hypergraph& graph, int max_colors,
                                std::uint64_t node_budget = 50'000'000);

}  // namespace hgcolor

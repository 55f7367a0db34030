#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hgcolor/hypergraph.hpp"

namespace hgcolor {

enum class ParamMode { theory, practical };

// Round parameters for the semi-random coloring engine.
struct EngineParams {
  int k = 3;
  int max_degree = 2;          // degree bound the parameters are tuned for
  double eps = 0.5;            // slack exponent in (0, 1)
  double collision_budget = 0; // scales the palette and the telemetry bounds
  double activation_rate = 0;  // tentative activation chance = rate * p_u(c)
  double prob_cap = 0;         // hard upper bound on any color probability
  int palette = 0;             // first-phase palette size
  int max_rounds = 0;
  double handoff_exponent = 0.5;  // stop once max live degree
                                  // <= max_degree^exponent
  int round_retries = 0;  // opt-in: redraw a round (fresh randomness) up to
                          // this many times when a drift monitor trips
  ParamMode mode = ParamMode::practical;
  bool degenerate = false;     // theory formulas below their usable range
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when the parameters cannot drive a run
  // (activation_rate * prob_cap must stay below 1, the uniform initial
  // probability 1/palette must not exceed prob_cap, ...).
  void validate() const;
};

// Theory mode: the asymptotic formulas evaluated literally, with
// `degenerate` set when they leave the usable range at this scale (always
// at desk scale); such parameters are reported, not run.  Requires
// max_degree >= 2 and eps in (0, 1).
EngineParams params_from(int k, int max_degree, double eps, ParamMode mode);

// Practical mode: explicit constants, validated.  collision_budget <= 0
// defaults to eps / activation_rate.
EngineParams practical_params(int k, int max_degree, double eps, int palette,
                              double activation_rate, double prob_cap,
                              int max_rounds, double collision_budget = 0,
                              std::uint64_t seed = 0);

// Per-round aggregate statistics over the uncolored vertices (zeros when
// none remain).
struct TelemetrySnapshot {
  int round = 0;
  int uncolored = 0;
  double max_edge_weight = 0;          // per live edge: sum_c prod_v p_v(c)
  double max_vertex_weight = 0;        // per vertex: sum over live edges
  double max_vertex_color_weight = 0;  // same with the color fixed, own factor dropped
  std::vector<double> max_restriction_weight;        // index i-2, i = 2..k-1
  std::vector<double> max_restriction_color_weight;  // index i-2
  double min_entropy = 0;              // -sum_c p log p
  std::vector<int> max_restriction_degree_color;     // index i-2: max d_i(u,c)
  std::vector<int> max_restriction_degree;           // index i-2: max d_i(u)
  int max_live_degree = 0;             // live edges through a vertex
  int max_total_degree = 0;            // live + all restriction degrees
  double max_capped_mass = 0;          // prob mass sitting at the cap
  double max_mass_deviation = 0;       // |1 - sum_c p_u(c)|
};

// Everything one round produced, for replay and tests.
struct RoundScratch {
  std::vector<std::vector<int>> activated;     // tentative palette per vertex
  std::vector<std::vector<int>> lost;          // colors lost this round
  std::vector<std::vector<int>> survivors;     // activated minus lost/retired
  std::vector<int> chosen;                     // color committed or -1
  std::vector<std::vector<std::pair<int, char>>> retention;  // (color, kept)
  // Update-experiment values for every vertex entering the round uncolored,
  // vertex-major with palette stride.  The stored state adopts these rows
  // only for vertices that stay uncolored; a vertex colored this round
  // keeps its entering vector.
  std::vector<double> next_prob;
};

struct ColoringState {
  std::shared_ptr<const Hypergraph> graph;
  EngineParams params;
  int round = 0;
  int support_size = 0;           // colors initially available per vertex
  std::vector<int> color_ids;     // palette index -> external color id
  std::vector<int> color;         // committed color index; -1 uncolored
  std::vector<double> prob;       // vertex-major palette-size stride
  std::vector<char> lost_mask;    // colors retired at zero probability
  int uncolored_count = 0;

  // Per-edge view of the residual structure: live counts uncolored
  // vertices; mono is -1 (none colored), a color index (all colored agree),
  // or -2 (mixed, the edge can never become monochromatic).
  struct EdgeState {
    int live = 0;
    int mono = -1;
  };
  std::vector<EdgeState> estate;

  double p(Vertex u, int c) const {
    return prob[static_cast<std::size_t>(u) * params.palette + c];
  }
  bool is_lost(Vertex u, int c) const {
    return lost_mask[static_cast<std::size_t>(u) * params.palette + c] != 0;
  }
  bool is_capped(Vertex u, int c) const { return p(u, c) == params.prob_cap; }
  bool vertex_uncolored(Vertex u) const { return color[u] < 0; }
  int external_color(int index) const {
    return color_ids.empty() ? index : color_ids[index];
  }

  // Recomputes edge states and the uncolored count from the colors, checks
  // soundness (no fully colored edge is monochromatic) and the restriction
  // well-definedness assertions; throws std::logic_error on breach.
  void rebuild_derived();

  // Cross-checks every stored invariant; throws std::logic_error.
  void validate_invariants() const;
};

// Uniform initial probabilities 1/palette.  Requires a simple,
// triangle-free hypergraph and 1/palette <= prob_cap.
ColoringState init_state(std::shared_ptr<const Hypergraph> graph,
                         const EngineParams& params);

// List mode: every vertex brings its own 2q-color list; the engine keeps
// the first q (sorted) as the active support.  Colors across vertices are
// shared through their external ids.
ColoringState init_state_list(std::shared_ptr<const Hypergraph> graph,
                              const EngineParams& params,
                              const std::vector<std::vector<int>>& lists);

// Test/experiment entry: explicit partial coloring and probability matrix
// (vertex-major, palette stride).  Lost-color masks start empty.
ColoringState state_from_partial(std::shared_ptr<const Hypergraph> graph,
                                 const EngineParams& params,
                                 std::vector<int> colors,
                                 std::vector<double> prob);

// Chance that color c survives the coming round at vertex u: the product
// over live edges and matching restriction edges of one minus the joint
// activation probability of the other members.
double survival_prob(const ColoringState& state, Vertex u, int c);

// Linearized lower bound for the same quantity.
double survival_lower_bound(const ColoringState& state, Vertex u, int c);

// One synchronous round: tentative activations, loss sets, commits, and the
// probability update (drop below the cap, zero on loss; at the cap a
// retention draw keeps the full cap value or zeroes the color, preserving
// the conditional expectation).  Returns the snapshot of the new state.
TelemetrySnapshot run_round(ColoringState& state, RoundScratch* scratch = nullptr);

// Snapshot of the current state (engine bookkeeping path).
TelemetrySnapshot compute_snapshot(const ColoringState& state);

enum class StopReason { all_colored, handoff, round_limit };

struct RunResult {
  std::vector<TelemetrySnapshot> series;  // index = round number
  StopReason stop = StopReason::round_limit;
  int rounds = 0;
};

// Rounds until max_rounds, everything colored, or the live degree (the
// degree of the subinstance induced by the uncolored vertices) falls to the
// handoff threshold max_degree^handoff_exponent.  An instance without edges
// is colored to completion instead of handed off.
RunResult run(ColoringState& state);

struct TelemetryFlag {
  std::string name;
  bool pass = false;
  double value = 0;
  double bound = 0;
};

struct TelemetryCheck {
  TelemetrySnapshot recomputed;  // naive recount straight from colors+probs
  std::vector<TelemetryFlag> flags;
};

// Independent naive recomputation of the snapshot plus pass/warn monitors
// against the drift bounds implied by the parameters.  Monitors never
// abort; the caller decides what a warn means.
TelemetryCheck telemetry_check(const ColoringState& state);

// Fixed-order CSV: t, uncolored, max_edge_weight, max_restriction_weight_i
// (i = 2..k-1), min_entropy, max_total_degree, max_mass_deviation,
// max_capped_mass.
void write_telemetry_csv(const std::vector<TelemetrySnapshot>& series, int k,
                         std::ostream& out);

// One JSON record per vertex: id, colored flag, external color (null while
// uncolored), probability mass, lost and capped color counts.
void write_state_jsonl(const ColoringState& state, std::ostream& out);

}  // namespace hgcolor

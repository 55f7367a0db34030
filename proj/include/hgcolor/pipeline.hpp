#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "hgcolor/engine.hpp"
#include "hgcolor/hypergraph.hpp"
#include "hgcolor/lll.hpp"
#include "hgcolor/partition.hpp"

namespace hgcolor {

// Desk-scale pipeline settings.  Zeros mean "derive from the instance":
// palette from the degree, prob_cap from the palette, finisher palette from
// the residual.  One master seed drives every stage deterministically.
struct PipelineOptions {
  double eps = 0.5;
  int palette = 0;              // 0: max(2, ceil((D / ln D)^(1/(k-1))))
  double activation_rate = 0.2;
  double prob_cap = 0;          // 0: min(1, 2 / palette)
  int max_rounds = 0;           // 0: max(1, ceil(ln(D) * ln(ln(D)) / eps))
  double collision_budget = 0;  // 0: eps / activation_rate
  double handoff_exponent = 0.5;
  int round_retries = 0;
  int finisher_palette = 0;     // 0: min(palette, residual formula)
  long long resample_cap = 0;   // 0: finisher default
  Lemma1Config lemma1;          // part counts/factors honored; seeds derived
  Lemma2Config lemma2;
  std::uint64_t seed = 0;
};

// Practical engine parameters for an instance of the given uniformity and
// maximum degree (floored at 2 for the derivations).
EngineParams pipeline_params(int k, int max_degree, const PipelineOptions& opt);

// One nibble+finish pass over one vertex class.
struct StageResult {
  std::vector<Vertex> vertices;  // global ids this stage colored
  EngineParams params;
  RunResult nibble;
  int residual_vertices = 0;
  int residual_edges = 0;
  long long resamples = 0;
  bool finisher_ok = false;
  int palette_offset = 0;  // global color ids [offset, offset + span)
  int palette_span = 0;
};

struct PipelineResult {
  Coloring coloring;  // over the full instance
  VerifyReport report;
  int colors_used = 0;    // distinct color ids appearing
  int palette_total = 0;  // sum of per-stage palettes
  bool success = false;   // proper and every finisher succeeded
  std::vector<StageResult> stages;
  // full mode only:
  PartitionResult coarse;
  std::vector<PartitionResult> fine;     // one per coarse part
  std::vector<RefineResult> refines;     // one per fine part, flattened
};

// Nibble + finisher on a simple, triangle-free instance.
PipelineResult color_direct(std::shared_ptr<const Hypergraph> graph,
                            const PipelineOptions& opt);

// Coarse split, per-part fine split, triangle-free refinement, then one
// direct stage per class with stacked palettes.  Requires a simple instance;
// triangles are allowed (the refinement removes them).
PipelineResult color_full(std::shared_ptr<const Hypergraph> graph,
                          const PipelineOptions& opt);

// One JSON record per vertex: {"vertex": id, "color": id}.
void write_coloring_jsonl(const Coloring& coloring, std::ostream& out);

// Reads the format written above; palette_size = max color + 1.  Throws
// std::invalid_argument on malformed records or missing vertices.
Coloring read_coloring_jsonl(std::istream& in, int vertex_count);

}  // namespace hgcolor

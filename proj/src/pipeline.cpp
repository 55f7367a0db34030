#include "hgcolor/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "hgcolor/rng.hpp"

namespace hgcolor {

namespace {

constexpr std::uint64_t kTagStage = 0x73746167;
constexpr std::uint64_t kTagFinish = 0x66696e69;
constexpr std::uint64_t kTagLemma1 = 0x6c656d31;
constexpr std::uint64_t kTagLemma2 = 0x6c656d32;

// Colors the induced subinstance on `global_ids` and writes the result,
// shifted by `offset`, into `color_out`.
StageResult run_stage(const Hypergraph& base,
                      const std::vector<Vertex>& global_ids,
                      const PipelineOptions& opt, int index, int offset,
                      std::vector<int>& color_out) {
  Hypergraph::Induced induced = base.induced(global_ids);
  auto view = std::make_shared<const Hypergraph>(std::move(induced.graph));

  StageResult stage;
  stage.vertices = global_ids;
  stage.palette_offset = offset;
  stage.params = pipeline_params(base.uniformity(), view->max_degree(), opt);
  stage.params.seed =
      rng::draw_u64(opt.seed, {kTagStage, static_cast<std::uint64_t>(index)});

  ColoringState state = init_state(view, stage.params);
  stage.nibble = run(state);

  std::vector<Vertex> residual;
  for (Vertex v = 0; v < view->vertex_count(); ++v)
    if (state.color[v] < 0) residual.push_back(v);
  Hypergraph::Induced res = view->induced(residual);
  stage.residual_vertices = res.graph.vertex_count();
  stage.residual_edges = res.graph.edge_count();

  FinisherConfig cfg;
  cfg.palette =
      opt.finisher_palette > 0
          ? opt.finisher_palette
          : std::max(1, std::min(stage.params.palette,
                                 finisher_palette(view->uniformity(),
                                                  res.graph.max_degree())));
  cfg.resample_cap = opt.resample_cap;
  cfg.seed =
      rng::draw_u64(opt.seed, {kTagFinish, static_cast<std::uint64_t>(index)});
  FinisherResult fin = moser_tardos_color(res.graph, cfg);
  stage.resamples = fin.resamples;
  stage.finisher_ok = fin.success;
  stage.palette_span = stage.params.palette + cfg.palette;

  for (Vertex v = 0; v < view->vertex_count(); ++v) {
    const Vertex global = induced.new_to_old[v];
    if (state.color[v] >= 0)
      color_out[global] = offset + state.color[v];
    else
      color_out[global] =
          offset + stage.params.palette + fin.coloring.color[res.old_to_new[v]];
  }
  return stage;
}

void finalize(const Hypergraph& graph, PipelineResult& result) {
  result.report = graph.verify_coloring(result.coloring);
  std::set<int> used(result.coloring.color.begin(),
                     result.coloring.color.end());
  result.colors_used = static_cast<int>(used.size());
  result.success = result.report.proper;
  for (const StageResult& stage : result.stages)
    result.success = result.success && stage.finisher_ok;
}

}  // namespace

EngineParams pipeline_params(int k, int max_degree, const PipelineOptions& opt) {
  const int d = std::max(max_degree, 2);
  int palette = opt.palette;
  if (palette <= 0) {
    const double scale =
        std::pow(d / std::log(static_cast<double>(d)), 1.0 / (k - 1));
    palette = std::max(2, static_cast<int>(std::ceil(scale)));
  }
  const double cap =
      opt.prob_cap > 0 ? opt.prob_cap : std::min(1.0, 2.0 / palette);
  int rounds = opt.max_rounds;
  if (rounds <= 0) {
    // Round budget shaped like the degree: more rounds for denser instances,
    // but never the long stalled tail a flat cap would allow.
    const double ld = std::log(static_cast<double>(d));
    const double budget = ld > 1.0 ? ld * std::log(ld) / opt.eps : 0.0;
    rounds = std::max(1, static_cast<int>(std::ceil(budget)));
  }
  EngineParams params =
      practical_params(k, d, opt.eps, palette, opt.activation_rate, cap,
                       rounds, opt.collision_budget, opt.seed);
  params.handoff_exponent = opt.handoff_exponent;
  params.round_retries = opt.round_retries;
  params.validate();
  return params;
}

PipelineResult color_direct(std::shared_ptr<const Hypergraph> graph,
                            const PipelineOptions& opt) {
  if (!graph) throw std::invalid_argument("null hypergraph");
  const int n = graph->vertex_count();
  PipelineResult result;
  result.coloring.color.assign(n, -1);

  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  result.stages.push_back(
      run_stage(*graph, all, opt, 0, 0, result.coloring.color));
  result.palette_total = result.stages.back().palette_span;
  result.coloring.palette_size = result.palette_total;
  finalize(*graph, result);
  return result;
}

PipelineResult color_full(std::shared_ptr<const Hypergraph> graph,
                          const PipelineOptions& opt) {
  if (!graph) throw std::invalid_argument("null hypergraph");
  if (!graph->is_simple())
    throw std::invalid_argument("full pipeline requires a simple hypergraph");
  const int n = graph->vertex_count();
  PipelineResult result;
  result.coloring.color.assign(n, -1);

  Lemma1Config l1 = opt.lemma1;
  l1.seed = rng::draw_u64(opt.seed, {kTagLemma1});
  result.coarse = lemma1_partition(*graph, l1);
  const int coarse_parts = static_cast<int>(result.coarse.parts.size());

  int stage_index = 0;
  int offset = 0;
  for (int p = 0; p < coarse_parts; ++p) {
    std::vector<Vertex> part_vertices;
    for (Vertex v = 0; v < n; ++v)
      if (result.coarse.assignment[v] == p) part_vertices.push_back(v);
    if (part_vertices.empty()) {
      result.fine.emplace_back();
      continue;
    }
    Hypergraph::Induced part = graph->induced(part_vertices);

    Lemma2Config l2 = opt.lemma2;
    l2.seed = rng::draw_u64(opt.seed,
                            {kTagLemma2, static_cast<std::uint64_t>(p)});
    PartitionResult fine = lemma2_partition(part.graph, l2);
    const int fine_parts = static_cast<int>(fine.parts.size());
    result.fine.push_back(fine);

    for (int s = 0; s < fine_parts; ++s) {
      std::vector<Vertex> sub_global;
      for (Vertex v = 0; v < part.graph.vertex_count(); ++v)
        if (fine.assignment[v] == s) sub_global.push_back(part.new_to_old[v]);
      if (sub_global.empty()) continue;
      Hypergraph::Induced sub = graph->induced(sub_global);

      RefineResult refine = triangle_free_refine(sub.graph);
      result.refines.push_back(refine);
      for (const std::vector<Vertex>& cls : refine.classes) {
        if (cls.empty()) continue;
        std::vector<Vertex> class_global;
        class_global.reserve(cls.size());
        for (Vertex v : cls) class_global.push_back(sub.new_to_old[v]);
        result.stages.push_back(run_stage(*graph, class_global, opt,
                                          stage_index, offset,
                                          result.coloring.color));
        offset += result.stages.back().palette_span;
        ++stage_index;
      }
    }
  }
  result.palette_total = offset;
  result.coloring.palette_size = offset;
  finalize(*graph, result);
  return result;
}

void write_coloring_jsonl(const Coloring& coloring, std::ostream& out) {
  for (std::size_t v = 0; v < coloring.color.size(); ++v) {
    nlohmann::json record;
    record["vertex"] = v;
    record["color"] = coloring.color[v];
    out << record.dump() << '\n';
  }
}

Coloring read_coloring_jsonl(std::istream& in, int vertex_count) {
  Coloring coloring;
  coloring.color.assign(vertex_count, -1);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
    if (!record.contains("vertex") || !record["vertex"].is_number_integer() ||
        !record.contains("color") || !record["color"].is_number_integer())
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected integer vertex and color");
    const int v = record["vertex"].get<int>();
    const int c = record["color"].get<int>();
    if (v < 0 || v >= vertex_count)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": vertex out of range");
    if (c < 0)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": negative color");
    if (coloring.color[v] != -1)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": duplicate vertex");
    coloring.color[v] = c;
    coloring.palette_size = std::max(coloring.palette_size, c + 1);
  }
  for (int v = 0; v < vertex_count; ++v)
    if (coloring.color[v] < 0)
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " missing from the coloring");
  return coloring;
}

}  // namespace hgcolor

// Batch front end: generate, color, verify, sweep, probe, and inspect
// hypergraph instances.  Every command prints a JSON summary on stdout.
// Exit codes: 0 ok, 1 contract failure (improper coloring, finisher cap,
// failed trend), 2 usage or IO error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hgcolor/engine.hpp"
#include "hgcolor/gen.hpp"
#include "hgcolor/hypergraph.hpp"
#include "hgcolor/io.hpp"
#include "hgcolor/lll.hpp"
#include "hgcolor/partition.hpp"
#include "hgcolor/pipeline.hpp"
#include "hgcolor/probes.hpp"
#include "hgcolor/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hgcolor;

namespace {

constexpr std::uint64_t kTagSweepGen = 0x73777067;
constexpr std::uint64_t kTagSweepRun = 0x73777072;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- config --

// Expands every `--config FILE` into explicit `--key=value` tokens inserted
// right after the subcommand, so flags the user typed win under the
// take-last policy regardless of their position.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  if (args.empty() || args[0].empty() || args[0][0] == '-') return args;
  std::vector<std::string> files;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      files.push_back(args[i + 1]);
    else if (args[i].rfind("--config=", 0) == 0)
      files.push_back(args[i].substr(9));
  }
  std::vector<std::string> expanded;
  for (const std::string& file : files) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open config " + file);
    json cfg;
    try {
      cfg = json::parse(in, nullptr, true, true);  // allow comments
    } catch (const json::exception& e) {
      throw std::invalid_argument("config " + file + ": " + e.what());
    }
    if (!cfg.is_object())
      throw std::invalid_argument("config " + file + ": expected an object");
    for (const auto& [key, value] : cfg.items()) {
      std::string token = "--" + key + "=";
      if (value.is_boolean()) {
        token += value.get<bool>() ? "true" : "false";
      } else if (value.is_string()) {
        token += value.get<std::string>();
      } else if (value.is_array()) {
        bool first = true;
        for (const auto& item : value) {
          if (!first) token += ',';
          first = false;
          token += item.is_string() ? item.get<std::string>() : item.dump();
        }
      } else {
        token += value.dump();
      }
      expanded.push_back(std::move(token));
    }
  }
  args.insert(args.begin() + 1, expanded.begin(), expanded.end());
  return args;
}

// ----------------------------------------------------------------- shared --

struct InstanceSource {
  std::string path;
  std::string fixture_name;
};

void add_instance_flags(CLI::App* cmd, InstanceSource& src) {
  auto* p = cmd->add_option("--instance", src.path, "instance file to load");
  auto* f = cmd->add_option("--fixture", src.fixture_name,
                            "named fixture (fano, single_edge(k), "
                            "loose_cycle(i,k), sunflower(d,k))");
  p->excludes(f);
  f->excludes(p);
}

Hypergraph load_instance(const InstanceSource& src) {
  if (!src.fixture_name.empty()) return fixture(src.fixture_name);
  if (src.path.empty())
    throw std::invalid_argument("one of --instance or --fixture is required");
  return read_instance_file(src.path);
}

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("--eps", o.eps, "slack exponent in (0,1)");
  cmd->add_option("--palette", o.palette, "first-phase palette (0: derive)");
  cmd->add_option("--activation-rate", o.activation_rate,
                  "tentative activation scale");
  cmd->add_option("--prob-cap", o.prob_cap,
                  "color probability ceiling (0: derive)");
  cmd->add_option("--rounds", o.max_rounds, "first-phase round limit");
  cmd->add_option("--collision-budget", o.collision_budget,
                  "edge-weight budget (0: derive)");
  cmd->add_option("--handoff-exponent", o.handoff_exponent,
                  "stop once max degree <= D^exponent");
  cmd->add_option("--round-retries", o.round_retries,
                  "redraw budget per round when a monitor trips");
  cmd->add_option("--finisher-palette", o.finisher_palette,
                  "second-phase palette (0: derive)");
  cmd->add_option("--resample-cap", o.resample_cap,
                  "finisher resample limit (0: derive)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--coarse-parts", o.lemma1.parts,
                  "first split part count (0: derive)");
  cmd->add_option("--coarse-eps", o.lemma1.eps, "first split exponent shave");
  cmd->add_option("--coarse-degree-factor", o.lemma1.degree_factor,
                  "first split degree slack");
  cmd->add_option("--coarse-covered-factor", o.lemma1.covered_factor,
                  "first split covered-pair slack (0: derive)");
  cmd->add_option("--coarse-resample-rounds", o.lemma1.max_resample_rounds,
                  "first split resample round cap");
  cmd->add_option("--fine-parts", o.lemma2.parts,
                  "second split part count (0: derive)");
  cmd->add_option("--fine-delta", o.lemma2.delta, "second split exponent shave");
  cmd->add_option("--fine-degree-factor", o.lemma2.degree_factor,
                  "second split degree slack");
  cmd->add_option("--fine-covered-cap", o.lemma2.covered_cap,
                  "covered pairs per vertex cap (0: derive)");
  cmd->add_option("--fine-resample-rounds", o.lemma2.max_resample_rounds,
                  "second split resample round cap");
}

json pipeline_options_json(const PipelineOptions& o) {
  json j;
  j["eps"] = o.eps;
  j["palette"] = o.palette;
  j["activation-rate"] = o.activation_rate;
  j["prob-cap"] = o.prob_cap;
  j["rounds"] = o.max_rounds;
  j["collision-budget"] = o.collision_budget;
  j["handoff-exponent"] = o.handoff_exponent;
  j["round-retries"] = o.round_retries;
  j["finisher-palette"] = o.finisher_palette;
  j["resample-cap"] = o.resample_cap;
  j["seed"] = o.seed;
  j["coarse-parts"] = o.lemma1.parts;
  j["coarse-eps"] = o.lemma1.eps;
  j["coarse-degree-factor"] = o.lemma1.degree_factor;
  j["coarse-covered-factor"] = o.lemma1.covered_factor;
  j["coarse-resample-rounds"] = o.lemma1.max_resample_rounds;
  j["fine-parts"] = o.lemma2.parts;
  j["fine-delta"] = o.lemma2.delta;
  j["fine-degree-factor"] = o.lemma2.degree_factor;
  j["fine-covered-cap"] = o.lemma2.covered_cap;
  j["fine-resample-rounds"] = o.lemma2.max_resample_rounds;
  return j;
}

const char* stop_name(StopReason stop) {
  switch (stop) {
    case StopReason::all_colored: return "all_colored";
    case StopReason::handoff: return "handoff";
    case StopReason::round_limit: return "round_limit";
  }
  return "unknown";
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  return out;
}

json stage_json(const StageResult& stage) {
  json s;
  s["vertices"] = stage.vertices.size();
  s["palette_offset"] = stage.palette_offset;
  s["palette_span"] = stage.palette_span;
  s["rounds"] = stage.nibble.rounds;
  s["stop"] = stop_name(stage.nibble.stop);
  s["uncolored_after_rounds"] = stage.nibble.series.back().uncolored;
  s["residual_vertices"] = stage.residual_vertices;
  s["residual_edges"] = stage.residual_edges;
  s["resamples"] = stage.resamples;
  s["finisher_ok"] = stage.finisher_ok;
  json p;
  p["palette"] = stage.params.palette;
  p["prob_cap"] = stage.params.prob_cap;
  p["activation_rate"] = stage.params.activation_rate;
  p["max_rounds"] = stage.params.max_rounds;
  p["max_degree"] = stage.params.max_degree;
  s["params"] = p;
  return s;
}

json partition_json(const PartitionResult& part) {
  json s;
  s["certified"] = part.certified;
  s["parts"] = part.parts.size();
  s["rounds_used"] = part.rounds_used;
  s["degree_bound"] = part.degree_bound;
  s["covered_bound"] = part.covered_bound;
  return s;
}

// ------------------------------------------------------------------- gen --

struct GenCli {
  GenSpec spec;
  std::string fixture_name;
  std::string out;
};

int run_gen(const GenCli& cli) {
  json summary;
  Hypergraph graph(3, 0, {});
  if (!cli.fixture_name.empty()) {
    graph = fixture(cli.fixture_name);
    summary["fixture"] = cli.fixture_name;
  } else {
    if (cli.spec.n <= 0)
      throw std::invalid_argument("--n is required without --fixture");
    GenResult res = cli.spec.triangle_free
                        ? gen_simple_triangle_free(cli.spec)
                        : gen_simple(cli.spec);
    summary["target_edges"] = res.target_edges;
    summary["shortfall"] = res.shortfall;
    summary["attempts_used"] = res.attempts_used;
    graph = std::move(res.graph);
  }
  if (!cli.out.empty()) {
    write_instance_file(graph, cli.out);
    summary["out"] = cli.out;
  }
  summary["k"] = graph.uniformity();
  summary["n"] = graph.vertex_count();
  summary["m"] = graph.edge_count();
  summary["max_degree"] = graph.max_degree();
  summary["simple"] = graph.is_simple();
  std::cout << summary.dump(2) << '\n';
  return 0;
}

// ----------------------------------------------------------------- color --

struct ColorCli {
  InstanceSource src;
  PipelineOptions opt;
  std::string mode = "auto";
  std::string out;
};

int run_color(const ColorCli& cli) {
  auto graph = std::make_shared<const Hypergraph>(load_instance(cli.src));
  if (!graph->is_simple())
    throw std::invalid_argument(
        "instance is not simple; the pipeline requires pairwise edge "
        "intersections of at most one vertex");

  std::string mode = cli.mode;
  if (mode == "auto")
    mode = graph->find_triangles(1).empty() ? "direct" : "full";
  if (mode != "direct" && mode != "full")
    throw std::invalid_argument("--mode must be auto, direct, or full");

  PipelineResult result = mode == "direct" ? color_direct(graph, cli.opt)
                                           : color_full(graph, cli.opt);

  json summary;
  summary["mode"] = mode;
  summary["k"] = graph->uniformity();
  summary["n"] = graph->vertex_count();
  summary["m"] = graph->edge_count();
  summary["max_degree"] = graph->max_degree();
  summary["palette_total"] = result.palette_total;
  summary["colors_used"] = result.colors_used;
  summary["proper"] = result.report.proper;
  summary["monochromatic_edges"] = result.report.monochromatic_edges;
  summary["success"] = result.success;
  json stages = json::array();
  for (const StageResult& stage : result.stages)
    stages.push_back(stage_json(stage));
  summary["stages"] = stages;
  if (mode == "full") {
    summary["coarse"] = partition_json(result.coarse);
    json fine = json::array();
    for (const PartitionResult& part : result.fine)
      fine.push_back(partition_json(part));
    summary["fine"] = fine;
    json refines = json::array();
    for (const RefineResult& refine : result.refines) {
      json r;
      r["classes"] = refine.classes.size();
      r["max_out_degree"] = refine.max_out_degree;
      r["class_bound"] = refine.class_bound;
      refines.push_back(r);
    }
    summary["refines"] = refines;
  }

  if (!cli.out.empty()) {
    const fs::path dir(cli.out);
    fs::create_directories(dir);

    json config;
    config["command"] = "color";
    config["mode"] = cli.mode;
    if (!cli.src.path.empty()) config["instance"] = cli.src.path;
    if (!cli.src.fixture_name.empty())
      config["fixture"] = cli.src.fixture_name;
    config["options"] = pipeline_options_json(cli.opt);
    open_out(dir / "config.json") << config.dump(2) << '\n';

    write_instance_file(*graph, (dir / "instance.hg").string());
    {
      auto out = open_out(dir / "coloring.jsonl");
      write_coloring_jsonl(result.coloring, out);
    }
    if (mode == "direct") {
      auto out = open_out(dir / "telemetry.csv");
      write_telemetry_csv(result.stages[0].nibble.series, graph->uniformity(),
                          out);
    } else {
      fs::create_directories(dir / "telemetry");
      char name[32];
      for (std::size_t i = 0; i < result.stages.size(); ++i) {
        std::snprintf(name, sizeof name, "class_%03zu.csv", i);
        auto out = open_out(dir / "telemetry" / name);
        write_telemetry_csv(result.stages[i].nibble.series,
                            graph->uniformity(), out);
      }
      {
        auto out = open_out(dir / "partition_coarse.jsonl");
        write_partition_jsonl(result.coarse, out);
      }
      for (std::size_t p = 0; p < result.fine.size(); ++p) {
        if (result.fine[p].parts.empty()) continue;
        std::snprintf(name, sizeof name, "partition_fine_%03zu.jsonl", p);
        auto out = open_out(dir / name);
        write_partition_jsonl(result.fine[p], out);
      }
    }
    open_out(dir / "summary.json") << summary.dump(2) << '\n';
    summary["out"] = cli.out;
  }

  std::cout << summary.dump(2) << '\n';
  return result.success ? 0 : 1;
}

// ---------------------------------------------------------------- verify --

struct VerifyCli {
  std::string instance;
  std::string coloring;
};

int run_verify(const VerifyCli& cli) {
  Hypergraph graph = read_instance_file(cli.instance);
  std::ifstream in(cli.coloring, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + cli.coloring);
  Coloring coloring = read_coloring_jsonl(in, graph.vertex_count());
  VerifyReport report = graph.verify_coloring(coloring);
  std::set<int> used(coloring.color.begin(), coloring.color.end());

  json summary;
  summary["proper"] = report.proper;
  summary["monochromatic_edges"] = report.monochromatic_edges;
  summary["colors_used"] = used.size();
  summary["palette_size"] = coloring.palette_size;
  std::cout << summary.dump(2) << '\n';
  return report.proper ? 0 : 1;
}

// ----------------------------------------------------------------- stats --

struct StatsCli {
  InstanceSource src;
  int girth_cap = 4;
  std::uint64_t triangle_limit = 1000000;
};

int run_stats(const StatsCli& cli) {
  Hypergraph graph = load_instance(cli.src);
  json summary;
  summary["k"] = graph.uniformity();
  summary["n"] = graph.vertex_count();
  summary["m"] = graph.edge_count();
  summary["max_degree"] = graph.max_degree();
  summary["simple"] = graph.is_simple();

  const int girth_value = graph.girth(cli.girth_cap);
  summary["girth_cap"] = cli.girth_cap;
  summary["girth"] = girth_value;
  summary["girth_exact"] = girth_value < cli.girth_cap;

  if (graph.is_simple()) {
    const auto triangles =
        graph.find_triangles(std::max<std::uint64_t>(cli.triangle_limit, 1));
    summary["triangles"] = triangles.size();
    summary["triangle_limit_hit"] = triangles.size() >= cli.triangle_limit;
  } else {
    summary["triangles"] = nullptr;
    summary["triangle_limit_hit"] = false;
  }

  std::map<int, int> histogram;
  for (Vertex v = 0; v < graph.vertex_count(); ++v)
    ++histogram[graph.degree(v)];
  json rows = json::array();
  for (const auto& [degree, count] : histogram)
    rows.push_back(json::array({degree, count}));
  summary["degree_histogram"] = rows;

  std::cout << summary.dump(2) << '\n';
  return 0;
}

// ----------------------------------------------------------------- sweep --

struct SweepCli {
  PipelineOptions opt;
  std::vector<int> grid{16, 32, 64, 128};
  int seeds = 10;
  int k = 3;
  int n = 600;
  double density = 1.0;
  int attempts = 200;
  std::string out;
};

int run_sweep(const SweepCli& cli) {
  if (cli.out.empty()) throw std::invalid_argument("--out is required");
  if (cli.seeds < 1) throw std::invalid_argument("--seeds must be positive");
  if (cli.grid.empty()) throw std::invalid_argument("--grid must be nonempty");
  const fs::path dir(cli.out);
  fs::create_directories(dir);

  auto csv = open_out(dir / "sweep.csv");
  csv << "delta,seed,n,m,max_degree,shortfall,colors_used,palette_total,"
         "ratio,proper,success,stop,rounds\n";

  bool all_ok = true;
  json medians = json::array();
  for (int delta : cli.grid) {
    std::vector<double> ratios;
    for (int s = 0; s < cli.seeds; ++s) {
      GenSpec spec;
      spec.k = cli.k;
      spec.n = cli.n;
      spec.max_degree = delta;
      spec.density = cli.density;
      spec.max_attempts_per_edge = cli.attempts;
      spec.seed = rng::draw_u64(cli.opt.seed,
                                {kTagSweepGen, static_cast<std::uint64_t>(delta),
                                 static_cast<std::uint64_t>(s)});
      GenResult gen = gen_simple_triangle_free(spec);
      auto graph = std::make_shared<const Hypergraph>(std::move(gen.graph));

      PipelineOptions opt = cli.opt;
      opt.seed = rng::draw_u64(cli.opt.seed,
                               {kTagSweepRun, static_cast<std::uint64_t>(delta),
                                static_cast<std::uint64_t>(s)});
      PipelineResult run = color_direct(graph, opt);

      const double scale =
          std::pow(delta / std::log(static_cast<double>(delta)),
                   1.0 / (cli.k - 1));
      const double ratio = run.colors_used / scale;
      ratios.push_back(ratio);
      all_ok = all_ok && run.success;

      csv << delta << ',' << s << ',' << graph->vertex_count() << ','
          << graph->edge_count() << ',' << graph->max_degree() << ','
          << (gen.shortfall ? 1 : 0) << ',' << run.colors_used << ','
          << run.palette_total << ',' << fmt(ratio) << ','
          << (run.report.proper ? 1 : 0) << ',' << (run.success ? 1 : 0) << ','
          << stop_name(run.stages[0].nibble.stop) << ','
          << run.stages[0].nibble.rounds << '\n';
    }
    std::sort(ratios.begin(), ratios.end());
    const std::size_t half = ratios.size() / 2;
    const double median = ratios.size() % 2 == 1
                              ? ratios[half]
                              : (ratios[half - 1] + ratios[half]) / 2.0;
    json row;
    row["delta"] = delta;
    row["median_ratio"] = median;
    row["runs"] = cli.seeds;
    medians.push_back(row);
  }

  json summary;
  summary["grid"] = cli.grid;
  summary["seeds"] = cli.seeds;
  summary["k"] = cli.k;
  summary["n"] = cli.n;
  summary["medians"] = medians;
  const double first = medians.front()["median_ratio"].get<double>();
  const double last = medians.back()["median_ratio"].get<double>();
  json trend;
  trend["first_delta"] = cli.grid.front();
  trend["last_delta"] = cli.grid.back();
  trend["first_median"] = first;
  trend["last_median"] = last;
  trend["nonincreasing"] = last <= first;
  summary["trend"] = trend;
  summary["all_runs_ok"] = all_ok;

  json config;
  config["command"] = "sweep";
  config["grid"] = cli.grid;
  config["seeds"] = cli.seeds;
  config["k"] = cli.k;
  config["n"] = cli.n;
  config["density"] = cli.density;
  config["attempts"] = cli.attempts;
  config["options"] = pipeline_options_json(cli.opt);
  open_out(dir / "config.json") << config.dump(2) << '\n';
  open_out(dir / "summary.json") << summary.dump(2) << '\n';

  std::cout << summary.dump(2) << '\n';
  return all_ok ? 0 : 1;
}

// ----------------------------------------------------------------- probe --

struct ProbeCli {
  InstanceSource src;
  int center = 0;
  int parts = 2;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0};
  std::string out;
};

int run_probe(const ProbeCli& cli) {
  Hypergraph graph = load_instance(cli.src);
  if (cli.center < 0 || cli.center >= graph.vertex_count())
    throw std::invalid_argument("--center out of range");
  if (cli.parts < 1) throw std::invalid_argument("--parts must be positive");

  PolySystem<double> sys =
      covered_pair_polysystem<double>(graph, cli.center, cli.parts);
  KimVuStats<double> stats = kimvu_stats(sys);

  json summary;
  summary["center"] = cli.center;
  summary["parts"] = cli.parts;
  summary["ground_size"] = sys.ground_size;
  summary["rank"] = sys.rank;
  summary["family_size"] = sys.family.size();
  summary["expectation"] = stats.expectation;
  summary["expectation_formula"] =
      sys.family.size() * std::pow(static_cast<double>(cli.parts),
                                   -(3.0 * graph.uniformity() - 4.0));
  summary["m0"] = stats.m0;
  summary["m1"] = stats.m1;

  if (cli.trials > 0) {
    TailReport tail = empirical_tail(sys, cli.trials, cli.lambdas, cli.seed);
    summary["trials"] = cli.trials;
    summary["sample_mean"] = tail.sample_mean;
    summary["sample_stddev"] = tail.sample_stddev;
    if (!cli.out.empty()) {
      auto csv = open_out(cli.out);
      csv << "lambda,threshold,empirical,trials\n";
      for (const TailRow& row : tail.rows)
        csv << fmt(row.lambda) << ',' << fmt(row.threshold) << ','
            << fmt(row.empirical) << ',' << row.trials << '\n';
      summary["out"] = cli.out;
    }
  }

  std::cout << summary.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-uniform hypergraph coloring toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::vector<std::string> config_sink;

  GenCli gen_cli;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--config", config_sink, "JSON file of option defaults");
  gen_cmd->add_option("--k", gen_cli.spec.k, "uniformity");
  gen_cmd->add_option("--n", gen_cli.spec.n, "vertex count");
  gen_cmd->add_option("--max-degree", gen_cli.spec.max_degree, "degree cap");
  gen_cmd->add_option("--density", gen_cli.spec.density,
                      "fraction of the edge budget n*max_degree/k");
  gen_cmd->add_flag("--triangle-free", gen_cli.spec.triangle_free,
                    "reject edges closing a triangle");
  gen_cmd->add_option("--seed", gen_cli.spec.seed, "generator seed");
  gen_cmd->add_option("--attempts", gen_cli.spec.max_attempts_per_edge,
                      "attempt budget per target edge");
  gen_cmd->add_option("--out-fixture", gen_cli.fixture_name,
                      "emit a named fixture instead of sampling");
  gen_cmd->add_option("--out", gen_cli.out, "instance file to write");

  ColorCli color_cli;
  CLI::App* color_cmd = app.add_subcommand("color", "color an instance");
  color_cmd->add_option("--config", config_sink, "JSON file of option defaults");
  add_instance_flags(color_cmd, color_cli.src);
  color_cmd->add_option("--mode", color_cli.mode, "auto | direct | full");
  color_cmd->add_option("--out", color_cli.out, "run output directory");
  add_pipeline_flags(color_cmd, color_cli.opt);

  VerifyCli verify_cli;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a coloring");
  verify_cmd->add_option("--config", config_sink, "JSON file of option defaults");
  verify_cmd->add_option("--instance", verify_cli.instance, "instance file")
      ->required();
  verify_cmd->add_option("--coloring", verify_cli.coloring, "coloring JSONL")
      ->required();

  SweepCli sweep_cli;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "degree grid of generate+color runs");
  sweep_cmd->add_option("--config", config_sink, "JSON file of option defaults");
  sweep_cmd->add_option("--grid", sweep_cli.grid, "degree caps to sweep")
      ->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep_cli.seeds, "runs per degree");
  sweep_cmd->add_option("--k", sweep_cli.k, "uniformity");
  sweep_cmd->add_option("--n", sweep_cli.n, "vertex count per instance");
  sweep_cmd->add_option("--density", sweep_cli.density, "edge budget fraction");
  sweep_cmd->add_option("--attempts", sweep_cli.attempts,
                        "generator attempt budget per edge");
  sweep_cmd->add_option("--out", sweep_cli.out, "output directory")->required();
  add_pipeline_flags(sweep_cmd, sweep_cli.opt);

  ProbeCli probe_cli;
  CLI::App* probe_cmd =
      app.add_subcommand("probe", "covered-pair polynomial statistics");
  probe_cmd->add_option("--config", config_sink, "JSON file of option defaults");
  add_instance_flags(probe_cmd, probe_cli.src);
  probe_cmd->add_option("--center", probe_cli.center, "center vertex");
  probe_cmd->add_option("--parts", probe_cli.parts, "partition size");
  probe_cmd->add_option("--trials", probe_cli.trials, "Monte-Carlo trials");
  probe_cmd->add_option("--seed", probe_cli.seed, "sampling seed");
  probe_cmd->add_option("--lambda", probe_cli.lambdas, "deviation grid")
      ->delimiter(',');
  probe_cmd->add_option("--out", probe_cli.out, "tail CSV file");

  StatsCli stats_cli;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "structural statistics of an instance");
  stats_cmd->add_option("--config", config_sink, "JSON file of option defaults");
  add_instance_flags(stats_cmd, stats_cli.src);
  stats_cmd->add_option("--girth-cap", stats_cli.girth_cap,
                        "search for cycles of size < cap");
  stats_cmd->add_option("--triangle-limit", stats_cli.triangle_limit,
                        "stop counting triangles at this many");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    // CLI11 consumes reversed argument vectors.
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen_cmd) return run_gen(gen_cli);
    if (*color_cmd) return run_color(color_cli);
    if (*verify_cmd) return run_verify(verify_cli);
    if (*sweep_cmd) return run_sweep(sweep_cli);
    if (*probe_cmd) return run_probe(probe_cli);
    if (*stats_cmd) return run_stats(stats_cli);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

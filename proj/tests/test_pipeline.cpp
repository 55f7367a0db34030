#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "hgcolor/gen.hpp"
#include "hgcolor/pipeline.hpp"

using namespace hgcolor;

namespace {

std::shared_ptr<const Hypergraph> shared_gen(int n, int max_degree,
                                             bool triangle_free,
                                             std::uint64_t seed) {
  GenSpec spec;
  spec.k = 3;
  spec.n = n;
  spec.max_degree = max_degree;
  spec.density = 1.0;
  spec.triangle_free = triangle_free;
  spec.seed = seed;
  auto res = triangle_free ? gen_simple_triangle_free(spec) : gen_simple(spec);
  return std::make_shared<const Hypergraph>(std::move(res.graph));
}

}  // namespace

TEST_CASE("derived parameters follow the degree") {
  PipelineOptions opt;
  const EngineParams p = pipeline_params(3, 100, opt);
  CHECK(p.k == 3);
  CHECK(p.max_degree == 100);
  CHECK(p.palette == 5);  // ceil(sqrt(100 / ln 100))
  CHECK(p.prob_cap == doctest::Approx(0.4));
  CHECK(p.eps == doctest::Approx(0.5));
  CHECK(p.activation_rate == doctest::Approx(0.2));
  CHECK(p.max_rounds == 15);  // ceil(ln(100) * ln(ln(100)) / 0.5)
  CHECK(p.collision_budget == doctest::Approx(2.5));
  CHECK(p.handoff_exponent == doctest::Approx(0.5));
  CHECK(p.round_retries == 0);

  // tiny degrees are floored so the derivations stay defined
  const EngineParams tiny = pipeline_params(3, 1, opt);
  CHECK(tiny.max_degree == 2);
  CHECK(tiny.palette == 2);
  CHECK(tiny.prob_cap == doctest::Approx(1.0));
  CHECK(tiny.max_rounds == 1);  // ln ln 2 < 0: the budget floors at one round

  PipelineOptions manual;
  manual.palette = 7;
  manual.round_retries = 3;
  manual.handoff_exponent = 0.25;
  const EngineParams m = pipeline_params(3, 64, manual);
  CHECK(m.palette == 7);
  CHECK(m.prob_cap == doctest::Approx(2.0 / 7));
  CHECK(m.round_retries == 3);
  CHECK(m.handoff_exponent == doctest::Approx(0.25));
}

TEST_CASE("direct mode colors a triangle-free instance properly") {
  auto g = shared_gen(150, 8, true, 600);
  PipelineOptions opt;
  opt.seed = 42;
  const auto res = color_direct(g, opt);
  REQUIRE(res.success);
  CHECK(res.report.proper);
  CHECK(res.report.monochromatic_edges.empty());
  CHECK(res.colors_used <= res.palette_total);
  CHECK(res.coloring.palette_size == res.palette_total);
  REQUIRE(res.stages.size() == 1);

  const StageResult& stage = res.stages[0];
  CHECK(stage.vertices.size() == static_cast<std::size_t>(g->vertex_count()));
  CHECK(stage.palette_offset == 0);
  CHECK(stage.palette_span == res.palette_total);
  CHECK(stage.finisher_ok);
  CHECK(stage.residual_vertices <= g->vertex_count());
  CHECK(stage.nibble.series.size() ==
        static_cast<std::size_t>(stage.nibble.rounds) + 1);
  for (int c : res.coloring.color) {
    CHECK(c >= 0);
    CHECK(c < res.palette_total);
  }
  CHECK(res.coarse.assignment.empty());
  CHECK(res.fine.empty());
  CHECK(res.refines.empty());
}

TEST_CASE("direct mode rejects instances with triangles") {
  auto fano = std::make_shared<const Hypergraph>(fixture("fano"));
  PipelineOptions opt;
  CHECK_THROWS_AS(color_direct(fano, opt), std::invalid_argument);
  CHECK_THROWS_AS(color_direct(nullptr, opt), std::invalid_argument);
}

TEST_CASE("full mode handles triangles via refinement") {
  auto fano = std::make_shared<const Hypergraph>(fixture("fano"));
  PipelineOptions opt;
  opt.seed = 7;
  const auto res = color_full(fano, opt);
  REQUIRE(res.success);
  CHECK(res.report.proper);
  CHECK(res.colors_used >= 3);  // the instance is not 2-colorable
  CHECK(res.colors_used <= res.palette_total);
  CHECK(res.coarse.assignment.size() == 7);
  CHECK(res.fine.size() == res.coarse.parts.size());
  CHECK(!res.stages.empty());
  CHECK(!res.refines.empty());

  // stage palettes tile [0, palette_total) without overlap
  int expected_offset = 0;
  std::vector<Vertex> covered;
  for (const StageResult& stage : res.stages) {
    CHECK(stage.palette_offset == expected_offset);
    expected_offset += stage.palette_span;
    for (Vertex v : stage.vertices) {
      covered.push_back(v);
      CHECK(res.coloring.color[v] >= stage.palette_offset);
      CHECK(res.coloring.color[v] <
            stage.palette_offset + stage.palette_span);
    }
  }
  CHECK(expected_offset == res.palette_total);
  std::sort(covered.begin(), covered.end());
  std::vector<Vertex> all{0, 1, 2, 3, 4, 5, 6};
  CHECK(covered == all);  // stages partition the vertex set
}

TEST_CASE("full mode on a larger generated instance") {
  auto g = shared_gen(200, 12, false, 601);
  PipelineOptions opt;
  opt.seed = 99;
  const auto res = color_full(g, opt);
  REQUIRE(res.success);
  CHECK(res.report.proper);
  // every refined class really is triangle-free
  for (const RefineResult& r : res.refines)
    CHECK(static_cast<int>(r.classes.size()) <= r.class_bound);
}

TEST_CASE("full mode requires a simple instance") {
  auto overlapping = std::make_shared<const Hypergraph>(
      Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}}));
  PipelineOptions opt;
  CHECK_THROWS_AS(color_full(overlapping, opt), std::invalid_argument);
}

TEST_CASE("coloring records round-trip") {
  auto g = shared_gen(40, 4, true, 602);
  PipelineOptions opt;
  opt.seed = 5;
  const auto res = color_direct(g, opt);
  REQUIRE(res.success);

  std::ostringstream out;
  write_coloring_jsonl(res.coloring, out);
  std::istringstream in(out.str());
  const Coloring back = read_coloring_jsonl(in, g->vertex_count());
  CHECK(back.color == res.coloring.color);
  CHECK(back.palette_size ==
        1 + *std::max_element(res.coloring.color.begin(),
                              res.coloring.color.end()));
}

TEST_CASE("coloring reader rejects malformed input") {
  auto expect_error = [](const std::string& text, int vertices,
                         const std::string& needle) {
    std::istringstream in(text);
    try {
      read_coloring_jsonl(in, vertices);
      FAIL(("expected a parse error for: " + text));
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("not json\n", 1, "line 1");
  expect_error("{\"vertex\": 0}\n", 1, "line 1");
  expect_error("{\"vertex\": 0, \"color\": 1.5}\n", 1, "line 1");
  expect_error("{\"vertex\": 5, \"color\": 0}\n", 2, "out of range");
  expect_error("{\"vertex\": 0, \"color\": -2}\n", 1, "negative");
  expect_error(
      "{\"vertex\": 0, \"color\": 1}\n{\"vertex\": 0, \"color\": 2}\n", 1,
      "duplicate");
  expect_error("{\"vertex\": 0, \"color\": 1}\n", 2, "missing");

  // blank lines are tolerated
  std::istringstream ok("\n{\"vertex\": 0, \"color\": 3}\n\n");
  const Coloring c = read_coloring_jsonl(ok, 1);
  CHECK(c.color[0] == 3);
  CHECK(c.palette_size == 4);
}

TEST_CASE("pipeline is deterministic in the seed") {
  auto g = shared_gen(150, 8, true, 603);
  PipelineOptions opt;
  opt.seed = 11;
  const auto a = color_direct(g, opt);
  const auto b = color_direct(g, opt);
  CHECK(a.coloring.color == b.coloring.color);
  CHECK(a.palette_total == b.palette_total);
  CHECK(a.colors_used == b.colors_used);
  opt.seed = 12;
  const auto c = color_direct(g, opt);
  CHECK(a.coloring.color != c.coloring.color);

  auto h = shared_gen(120, 8, false, 604);
  opt.seed = 13;
  const auto fa = color_full(h, opt);
  const auto fb = color_full(h, opt);
  CHECK(fa.coloring.color == fb.coloring.color);
  CHECK(fa.palette_total == fb.palette_total);
}

#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "hgcolor/gen.hpp"
#include "hgcolor/lll.hpp"

using namespace hgcolor;

TEST_CASE("default palette formula") {
  CHECK(finisher_palette(3, 16) == 17);  // ceil(4 * 16^(1/2)) + 1
  CHECK(finisher_palette(3, 1) == 5);
  CHECK(finisher_palette(4, 8) == 9);  // ceil(4 * 8^(1/3)) + 1
  CHECK(finisher_palette(3, 0) == 1);    // nothing to separate
}

TEST_CASE("resampling colors a generated residual within the cap") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    GenSpec spec;
    spec.k = 3;
    spec.n = 150;
    spec.max_degree = 12;
    spec.density = 1.0;
    spec.seed = 500 + seed;
    const Hypergraph g = gen_simple(spec).graph;

    FinisherConfig cfg;
    cfg.seed = seed;
    const auto res = moser_tardos_color(g, cfg);
    REQUIRE(res.success);
    CHECK(res.resamples <= 1000LL * g.edge_count());
    CHECK(res.coloring.palette_size == finisher_palette(3, g.max_degree()));
    const auto report = g.verify_coloring(res.coloring);
    CHECK(report.proper);
    CHECK(report.monochromatic_edges.empty());
  }
}

TEST_CASE("an infeasible palette exhausts the resample cap") {
  const Hypergraph g = fixture("fano");  // needs 3 colors
  FinisherConfig cfg;
  cfg.palette = 2;
  cfg.seed = 9;
  const auto res = moser_tardos_color(g, cfg);
  CHECK_FALSE(res.success);
  CHECK(res.resamples == 1000LL * g.edge_count());
}

TEST_CASE("single-color palette succeeds only on edgeless residuals") {
  FinisherConfig cfg;
  cfg.palette = 1;
  const auto empty = moser_tardos_color(Hypergraph(3, 6, {}), cfg);
  CHECK(empty.success);
  CHECK(empty.resamples == 0);
  for (int v = 0; v < 6; ++v) CHECK(empty.coloring.color[v] == 0);

  const auto edge = moser_tardos_color(fixture("single_edge(3)"), cfg);
  CHECK_FALSE(edge.success);
}

TEST_CASE("list variant draws only listed ids") {
  const Hypergraph g = fixture("loose_cycle(4,3)");
  std::vector<std::vector<int>> lists(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    lists[v] = {2 * v + 1, 2 * v + 2, 40 + v};
  FinisherConfig cfg;
  cfg.seed = 3;
  const auto res = moser_tardos_color(g, lists, cfg);
  REQUIRE(res.success);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int c = res.coloring.color[v];
    CHECK((c == 2 * v + 1 || c == 2 * v + 2 || c == 40 + v));
  }
  CHECK(res.coloring.palette_size == 40 + g.vertex_count());
  CHECK(g.verify_coloring(res.coloring).proper);

  std::vector<std::vector<int>> bad = lists;
  bad[2] = {5, 5, 6};  // repeated id
  CHECK_THROWS_AS(moser_tardos_color(g, bad, cfg), std::invalid_argument);
  bad[2] = {};
  CHECK_THROWS_AS(moser_tardos_color(g, bad, cfg), std::invalid_argument);
  bad[2] = {-1, 4};
  CHECK_THROWS_AS(moser_tardos_color(g, bad, cfg), std::invalid_argument);
}

TEST_CASE("residual finisher offsets its fresh palette") {
  GenSpec spec;
  spec.k = 3;
  spec.n = 90;
  spec.max_degree = 6;
  spec.density = 0.9;
  spec.seed = 77;
  const Hypergraph g = gen_simple(spec).graph;

  const int offset = 12;
  const int first_phase = 50;  // formula wins
  const auto res = finish(g, offset, first_phase, 21);
  REQUIRE(res.success);
  const int fresh = finisher_palette(3, g.max_degree());
  CHECK(res.coloring.palette_size == offset + fresh);
  std::set<int> used;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    CHECK(res.coloring.color[v] >= offset);
    CHECK(res.coloring.color[v] < offset + fresh);
    used.insert(res.coloring.color[v]);
  }
  CHECK(g.verify_coloring(res.coloring).proper);

  // a generous first phase caps the fresh palette instead
  const auto capped = finish(g, 4, 3, 21);
  REQUIRE(capped.success);
  CHECK(capped.coloring.palette_size == 4 + 3);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    CHECK(capped.coloring.color[v] >= 4);
    CHECK(capped.coloring.color[v] < 7);
  }

  // empty residual: nothing to color, yet the offset is preserved
  const auto none = finish(Hypergraph(3, 0, {}), 9, 5, 0);
  CHECK(none.success);
  CHECK(none.coloring.color.empty());
  CHECK(none.coloring.palette_size >= 9);
}

TEST_CASE("resampling is deterministic in the seed") {
  GenSpec spec;
  spec.k = 3;
  spec.n = 120;
  spec.max_degree = 10;
  spec.seed = 31;
  const Hypergraph g = gen_simple(spec).graph;
  FinisherConfig cfg;
  cfg.seed = 1234;
  const auto a = moser_tardos_color(g, cfg);
  const auto b = moser_tardos_color(g, cfg);
  CHECK(a.coloring.color == b.coloring.color);
  CHECK(a.resamples == b.resamples);
  cfg.seed = 1235;
  const auto c = moser_tardos_color(g, cfg);
  CHECK(a.coloring.color != c.coloring.color);
}

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "hgcolor/gen.hpp"
#include "hgcolor/hypergraph.hpp"
#include "hgcolor/rng.hpp"

using namespace hgcolor;

TEST_CASE("construction canonicalizes and validates") {
  Hypergraph g(3, 5, {{4, 2, 0}, {1, 2, 3}});
  CHECK(g.uniformity() == 3);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge(0) == std::vector<Vertex>{0, 2, 4});
  CHECK(g.edge(1) == std::vector<Vertex>{1, 2, 3});

  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 2}, {2, 1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("incidence, degrees, neighborhoods") {
  Hypergraph g = fixture("fano");
  CHECK(g.vertex_count() == 7);
  CHECK(g.edge_count() == 7);
  CHECK(g.max_degree() == 3);
  for (Vertex v = 0; v < 7; ++v) {
    CHECK(g.degree(v) == 3);
    CHECK(g.neighborhood(v).size() == 6);  // every other point
  }
  CHECK(g.is_simple());

  // each pair of points lies in exactly one line
  for (Vertex x = 0; x < 7; ++x)
    for (Vertex y = x + 1; y < 7; ++y)
      CHECK(g.edges_with_pair(x, y).size() == 1);
}

TEST_CASE("unique completion") {
  Hypergraph g = fixture("fano");
  for (Vertex v = 0; v < 7; ++v)
    for (Vertex x : g.neighborhood(v)) {
      const auto rest = g.unique_completion(v, x);
      CHECK(rest.size() == 2);
      CHECK(std::find(rest.begin(), rest.end(), x) != rest.end());
      CHECK(std::find(rest.begin(), rest.end(), v) == rest.end());
    }
  CHECK_THROWS_AS(fixture("sunflower(2,3)").unique_completion(1, 4),
                  std::invalid_argument);
}

TEST_CASE("cycles, girth, triangles on fixtures") {
  Hypergraph fano = fixture("fano");
  CHECK(fano.girth(4) == 3);
  CHECK(fano.find_triangles(1000).size() == 28);
  CHECK(oracle::triangles(fano).size() == 28);

  Hypergraph edge = fixture("single_edge(3)");
  CHECK(edge.girth(5) == 5);
  CHECK(edge.find_i_cycles(2, 100).empty());
  CHECK(edge.find_triangles(100).empty());

  Hypergraph loose = fixture("loose_cycle(3,3)");
  CHECK(loose.girth(4) == 3);
  CHECK(loose.find_triangles(100).size() == 1);

  Hypergraph loose4 = fixture("loose_cycle(4,3)");
  CHECK(loose4.girth(6) == 4);
  CHECK(loose4.find_triangles(100).empty());

  Hypergraph sun = fixture("sunflower(3,3)");
  CHECK(sun.find_triangles(100).empty());  // common core is nonempty
  CHECK(sun.girth(4) == 4);
}

TEST_CASE("structure oracle equivalence on random small instances") {
  // random 3-uniform instances with <= 9 vertices and <= 6 edges
  rng::Stream pick(20240817, {0x736d6c});
  int simple_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(pick.below(7));
    const int want = static_cast<int>(pick.below(7));
    std::set<std::vector<Vertex>> edges;
    for (int a = 0; a < 4 * want && static_cast<int>(edges.size()) < want;
         ++a) {
      std::set<Vertex> e;
      while (static_cast<int>(e.size()) < 3)
        e.insert(static_cast<Vertex>(pick.below(n)));
      edges.emplace(e.begin(), e.end());
    }
    Hypergraph g(3, n, {edges.begin(), edges.end()});

    for (int i = 2; i <= 4; ++i)
      CHECK(g.find_i_cycles(i, 100000) == oracle::cycles(g, i));
    CHECK(g.girth(5) == oracle::girth(g, 5));
    if (g.is_simple()) {
      ++simple_seen;
      const auto got = g.find_triangles(100000);
      const auto want_tris = oracle::triangles(g);
      REQUIRE(got.size() == want_tris.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i][0] == want_tris[i][0]);
        CHECK(got[i][1] == want_tris[i][1]);
        CHECK(got[i][2] == want_tris[i][2]);
      }
      for (Vertex v = 0; v < n; ++v) {
        const auto rep = g.covered_pairs(v);
        const auto brute = oracle::covered_pairs(g, v);
        REQUIRE(rep.pairs.size() == brute.size());
        for (std::size_t i = 0; i < brute.size(); ++i) {
          CHECK(rep.pairs[i].x == brute[i].x);
          CHECK(rep.pairs[i].y == brute[i].y);
          CHECK(rep.pairs[i].witness == brute[i].witness);
        }
      }
    }
  }
  CHECK(simple_seen > 20);  // the comparison exercised the simple-only paths
}

TEST_CASE("covered pairs on fano") {
  Hypergraph g = fixture("fano");
  for (Vertex v = 0; v < 7; ++v) {
    const auto rep = g.covered_pairs(v);
    CHECK(rep.center == v);
    CHECK(rep.pairs.size() == 12);
    for (const auto& pr : rep.pairs) {
      const auto& witness = g.edge(pr.witness);
      CHECK(std::binary_search(witness.begin(), witness.end(), pr.x));
      CHECK(std::binary_search(witness.begin(), witness.end(), pr.y));
      CHECK(!std::binary_search(witness.begin(), witness.end(), v));
    }
  }
}

TEST_CASE("induced subhypergraph") {
  Hypergraph g = fixture("fano");
  const std::vector<Vertex> subset{0, 1, 2, 3, 5};
  const auto sub = g.induced(subset);
  CHECK(sub.graph.vertex_count() == 5);
  CHECK(sub.new_to_old == subset);
  for (Vertex v = 0; v < 7; ++v) {
    const bool inside =
        std::find(subset.begin(), subset.end(), v) != subset.end();
    CHECK((sub.old_to_new[v] >= 0) == inside);
  }
  // kept edges are exactly the original edges inside the subset
  std::set<std::vector<Vertex>> expected;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::vector<Vertex> mapped;
    bool ok = true;
    for (Vertex v : g.edge(e)) {
      if (sub.old_to_new[v] < 0) {
        ok = false;
        break;
      }
      mapped.push_back(sub.old_to_new[v]);
    }
    if (ok) {
      std::sort(mapped.begin(), mapped.end());
      expected.insert(mapped);
    }
  }
  std::set<std::vector<Vertex>> got(sub.graph.edges().begin(),
                                    sub.graph.edges().end());
  CHECK(got == expected);

  // composing two restrictions equals restricting once
  const auto inner = sub.graph.induced({0, 1, 2, 3});
  const auto direct = g.induced({0, 1, 2, 3});
  CHECK(inner.graph.edges() == direct.graph.edges());
}

TEST_CASE("verify_coloring") {
  Hypergraph g = fixture("single_edge(3)");
  Coloring good{{0, 0, 1}, 2};
  CHECK(g.verify_coloring(good).proper);
  Coloring mono{{1, 1, 1}, 2};
  const auto rep = g.verify_coloring(mono);
  CHECK(!rep.proper);
  CHECK(rep.monochromatic_edges == std::vector<EdgeId>{0});
  CHECK_THROWS_AS(g.verify_coloring(Coloring{{0, -1, 0}, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(g.verify_coloring(Coloring{{0, 2, 0}, 2}),
                  std::invalid_argument);
}

TEST_CASE("fano admits no proper 2-coloring") {
  Hypergraph g = fixture("fano");
  for (int mask = 0; mask < 128; ++mask) {
    Coloring c;
    c.palette_size = 2;
    for (int v = 0; v < 7; ++v) c.color.push_back((mask >> v) & 1);
    CHECK(!g.verify_coloring(c).proper);
  }
}

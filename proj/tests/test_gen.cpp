#include <set>
#include <stdexcept>

#include "doctest.h"

#include "hgcolor/gen.hpp"
#include "hgcolor/rng.hpp"

using namespace hgcolor;

TEST_CASE("generated instances satisfy every promised property") {
  rng::Stream pick(77, {0x67656e74});
  for (int trial = 0; trial < 120; ++trial) {
    GenSpec spec;
    spec.k = 3 + static_cast<int>(pick.below(2));
    spec.n = spec.k + static_cast<int>(pick.below(28));
    spec.max_degree = 1 + static_cast<int>(pick.below(6));
    spec.density = (trial % 2) ? 1.0 : 0.4;
    spec.triangle_free = (trial % 3) != 0;
    spec.seed = pick.next_u64();
    const GenResult res = spec.triangle_free ? gen_simple_triangle_free(spec)
                                             : gen_simple(spec);
    const Hypergraph& g = res.graph;
    CHECK(g.uniformity() == spec.k);
    CHECK(g.vertex_count() == spec.n);
    CHECK(g.is_simple());
    CHECK(g.max_degree() <= spec.max_degree);
    if (spec.triangle_free) CHECK(g.find_triangles(1).empty());
    CHECK(res.shortfall == (g.edge_count() < res.target_edges));
    CHECK(g.edge_count() <= res.target_edges);
  }
}

TEST_CASE("generation is a pure function of the GenSpec") {
  GenSpec spec;
  spec.k = 3;
  spec.n = 40;
  spec.max_degree = 5;
  spec.triangle_free = true;
  spec.seed = 123456;
  const GenResult a = gen_simple_triangle_free(spec);
  const GenResult b = gen_simple_triangle_free(spec);
  CHECK(a.graph.edges() == b.graph.edges());
  CHECK(a.attempts_used == b.attempts_used);

  spec.seed = 123457;
  const GenResult c = gen_simple_triangle_free(spec);
  CHECK(a.graph.edges() != c.graph.edges());
}

TEST_CASE("fixtures") {
  Hypergraph fano = fixture("fano");
  CHECK(fano.vertex_count() == 7);
  CHECK(fano.edge_count() == 7);
  CHECK(fano.max_degree() == 3);
  CHECK(fano.is_simple());

  Hypergraph edge = fixture("single_edge(4)");
  CHECK(edge.uniformity() == 4);
  CHECK(edge.vertex_count() == 4);
  CHECK(edge.edge_count() == 1);

  Hypergraph loose = fixture("loose_cycle(5,3)");
  CHECK(loose.edge_count() == 5);
  CHECK(loose.vertex_count() == 10);
  CHECK(loose.max_degree() == 2);
  CHECK(loose.is_simple());

  Hypergraph sun = fixture("sunflower(4,3)");
  CHECK(sun.edge_count() == 4);
  CHECK(sun.vertex_count() == 9);
  CHECK(sun.degree(0) == 4);
  for (Vertex v = 1; v < 9; ++v) CHECK(sun.degree(v) == 1);

  CHECK_THROWS_AS(fixture("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(fixture("loose_cycle(1,3)"), std::invalid_argument);
}

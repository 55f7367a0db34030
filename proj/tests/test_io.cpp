#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "hgcolor/gen.hpp"
#include "hgcolor/io.hpp"

using namespace hgcolor;

TEST_CASE("round trip is identity") {
  Hypergraph g = fixture("fano");
  std::ostringstream out;
  write_instance(g, out);
  std::istringstream in(out.str());
  Hypergraph back = read_instance(in);
  CHECK(back.uniformity() == g.uniformity());
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edges() == g.edges());
}

TEST_CASE("writer is canonical and byte-stable") {
  Hypergraph a(3, 6, {{5, 3, 1}, {0, 2, 4}});
  Hypergraph b(3, 6, {{4, 2, 0}, {1, 3, 5}});
  std::ostringstream oa, ob, oa2;
  write_instance(a, oa);
  write_instance(b, ob);
  write_instance(a, oa2);
  CHECK(oa.str() == ob.str());  // same edge set, same bytes
  CHECK(oa.str() == oa2.str());
  CHECK(oa.str() == "3 6 2\n0 2 4\n1 3 5\n");
}

TEST_CASE("reader accepts comments and blank lines") {
  std::istringstream in(
      "# a comment\n"
      "\n"
      "3 4 2\n"
      "  2 1 0\n"
      "\n"
      "# another\n"
      "1 2 3\n");
  Hypergraph g = read_instance(in);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge(0) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("reader reports malformed input with a line number") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      read_instance(in);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("", "header");
  expect_error("3 x 2\n", "line 1");
  expect_error("3 4 1\n", "line 2");        // missing edge line
  expect_error("3 4 1\n0 1\n", "line 2");   // short edge
  expect_error("3 4 1\n0 1 9\n", "line 2"); // vertex out of range
  expect_error("3 4 1\n0 1 1\n", "invalid");      // repeated vertex
  expect_error("3 4 2\n0 1 2\n0 1 2\n", "invalid");  // duplicate edge
}

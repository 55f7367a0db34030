#include "hgcolor/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hgcolor {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

// Next significant line, stripped of comments; false at end of input.
bool next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::vector<long long> parse_ints(const std::string& line, int line_no,
                                  std::size_t expect) {
  std::istringstream ss(line);
  std::vector<long long> out;
  long long v = 0;
  while (ss >> v) out.push_back(v);
  std::string trailing;
  if (!ss.eof() && ss.fail()) {
    ss.clear();
    ss >> trailing;
    fail(line_no, "unexpected token '" + trailing + "'");
  }
  if (out.size() != expect)
    fail(line_no, "expected " + std::to_string(expect) + " integers, got " +
                      std::to_string(out.size()));
  return out;
}

}  // namespace

Hypergraph read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no))
    throw std::invalid_argument("empty instance: missing header line");
  const auto header = parse_ints(line, line_no, 3);
  const long long k = header[0], n = header[1], m = header[2];
  if (k < 2) fail(line_no, "uniformity must be at least 2");
  if (n < 0) fail(line_no, "negative vertex count");
  if (m < 0) fail(line_no, "negative edge count");

  std::vector<std::vector<Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line, line_no))
      fail(line_no + 1, "unexpected end of input: expected " +
                            std::to_string(m) + " edges, got " +
                            std::to_string(i));
    const auto ids = parse_ints(line, line_no, static_cast<std::size_t>(k));
    std::vector<Vertex> e;
    for (long long v : ids) {
      if (v < 0 || v >= n) fail(line_no, "vertex id out of range");
      e.push_back(static_cast<Vertex>(v));
    }
    edges.push_back(std::move(e));
  }
  if (next_line(in, line, line_no)) fail(line_no, "trailing content after edges");
  try {
    return Hypergraph(static_cast<int>(k), static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw std::invalid_argument(std::string("instance invalid: ") + ex.what());
  }
}

Hypergraph read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  return read_instance(in);
}

void write_instance(const Hypergraph& graph, std::ostream& out) {
  out << graph.uniformity() << ' ' << graph.vertex_count() << ' '
      << graph.edge_count() << '\n';
  for (const auto& e : graph.edges()) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j) out << ' ';
      out << e[j];
    }
    out << '\n';
  }
}

void write_instance_file(const Hypergraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_instance(graph, out);
}

}  // namespace hgcolor

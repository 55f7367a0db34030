#pragma once

#include <iosfwd>
#include <string>

#include "hgcolor/hypergraph.hpp"

namespace hgcolor {

// Text instance format.  Line 1: "k n m".  Then m lines of k space-separated
// 0-based vertex ids.  Lines starting with '#' and blank lines are ignored.
// The writer is canonical and byte-stable: edges in lexicographic order,
// vertices sorted within an edge, single spaces, trailing newline, and no
// comments.

// Throws std::invalid_argument with a 1-based line number on malformed input.
Hypergraph read_instance(std::istream& in);
Hypergraph read_instance_file(const std::string& path);

void write_instance(const Hypergraph& graph, std::ostream& out);
void write_instance_file(const Hypergraph& graph, const std::string& path);

}  // namespace hgcolor

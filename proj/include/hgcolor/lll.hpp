#pragma once

#include <cstdint>
#include <vector>

#include "hgcolor/hypergraph.hpp"

namespace hgcolor {

// Resampling colorer for the low-degree leftover: random initial colors,
// then repeatedly redraw the lexicographically least monochromatic edge.
struct FinisherConfig {
  int palette = 0;             // 0: ceil(4 * max_degree^(1/(k-1))) + 1
  long long resample_cap = 0;  // 0: 1000 * max(|E|, 1)
  std::uint64_t seed = 0;
};

struct FinisherResult {
  Coloring coloring;       // last draw; meaningful only when success
  long long resamples = 0;
  bool success = false;
};

// The default palette size for a residual of the given maximum degree.
int finisher_palette(int k, int max_degree);

// Every vertex draws uniformly from [0, palette).  Returns success=false
// with the resample count when the cap is exceeded.
FinisherResult moser_tardos_color(const Hypergraph& graph, FinisherConfig cfg);

// List variant: vertex v draws uniformly from lists[v] (nonempty, distinct
// nonnegative ids); the monochromatic test compares the drawn ids.
FinisherResult moser_tardos_color(const Hypergraph& graph,
                                  const std::vector<std::vector<int>>& lists,
                                  FinisherConfig cfg);

// Colors a residual with a fresh palette of size min(first_phase_palette,
// default formula), at least 1, every color shifted by `offset` so the two
// phases never share a color id.  The returned palette_size is offset +
// the fresh palette size.
FinisherResult finish(const Hypergraph& residual, int offset,
                      int first_phase_palette, std::uint64_t seed);

}  // namespace hgcolor

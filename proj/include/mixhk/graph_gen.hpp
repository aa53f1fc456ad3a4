#pragma once

#include "mixhk/graph.hpp"
#include "mixhk/rng.hpp"

namespace mixhk {

/// Random connected graph: a random recursive tree plus each remaining pair
/// independently with probability extra_edge_prob.
SimpleGraph random_connected_graph(int n, double extra_edge_prob, Rng& rng);

/// Erdos-Renyi G(n, p).
SimpleGraph random_graph(int n, double p, Rng& rng);

/// Path 0-1-...-n-1.
SimpleGraph path_graph(int n);

/// Cycle on n >= 3 vertices.
SimpleGraph cycle_graph(int n);

}  // namespace mixhk

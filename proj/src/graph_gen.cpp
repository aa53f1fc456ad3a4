#include "mixhk/graph_gen.hpp"

#include "mixhk/errors.hpp"

namespace mixhk {

SimpleGraph random_connected_graph(int n, double extra_edge_prob, Rng& rng) {
    SimpleGraph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng.index(v)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j) && rng.bernoulli(extra_edge_prob)) g.add_edge(i, j);
    return g;
}

SimpleGraph random_graph(int n, double p, Rng& rng) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) g.edges.emplace_back(i, j);
    return g;
}

SimpleGraph path_graph(int n) {
    SimpleGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

SimpleGraph cycle_graph(int n) {
    if (n < 3) throw DomainError("cycle_graph: need at least 3 vertices");
    SimpleGraph g = path_graph(n);
    g.add_edge(0, n - 1);
    return g;
}

}  // namespace mixhk

#include "mixhk/graph.hpp"

#include <algorithm>
#include <string>

namespace mixhk {

SimpleGraph SimpleGraph::complete(int n) {
    SimpleGraph g(n);
    g.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    return g;
}

SimpleGraph SimpleGraph::from_edges(int n, const std::vector<Edge>& raw) {
    SimpleGraph g(n);
    for (auto [i, j] : raw) g.add_edge(i, j);
    return g;
}

void SimpleGraph::add_edge(int i, int j) {
    if (i == j) throw DomainError("add_edge: loops are not allowed");
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw DomainError("add_edge: endpoint out of range [0," + std::to_string(n) + ")");
    Edge e{std::min(i, j), std::max(i, j)};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) edges.insert(it, e);
}

bool SimpleGraph::has_edge(int i, int j) const {
    Edge e{std::min(i, j), std::max(i, j)};
    return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<int> SimpleGraph::degrees() const {
    std::vector<int> deg(n, 0);
    for (auto [i, j] : edges) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

int SimpleGraph::max_degree() const {
    int best = 0;
    for (int d : degrees()) best = std::max(best, d);
    return best;
}

std::vector<std::vector<int>> SimpleGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

SimpleGraph build_opinion_graph(const OpinionState& state, double epsilon) {
    if (epsilon <= 0.0) throw DomainError("build_opinion_graph: epsilon must be positive");
    SimpleGraph g(state.n);
    const double eps2 = epsilon * epsilon;
    for (int i = 0; i < state.n; ++i)
        for (int j = i + 1; j < state.n; ++j)
            if (squared_distance(state.row(i), state.row(j)) <= eps2) g.edges.emplace_back(i, j);
    return g;
}

SimpleGraph build_update_graph(const SimpleGraph& social, const ScheduleDraw& draw,
                               InteractionMode mode) {
    if (draw.mode != mode)
        throw InvalidScheduleError("build_update_graph: draw mode does not match configured mode");
    if (mode == InteractionMode::group) return social;

    if (!is_matching(draw.matching, SimpleGraph::complete(social.n)))
        throw InvalidScheduleError("build_update_graph: pair-mode draw is not a matching");
    SimpleGraph g(social.n);
    for (auto [i, j] : draw.matching)
        if (social.has_edge(i, j)) g.edges.emplace_back(std::min(i, j), std::max(i, j));
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

SimpleGraph profile(const SimpleGraph& update_graph, const SimpleGraph& opinion_graph) {
    if (update_graph.n != opinion_graph.n)
        throw ShapeError("profile: vertex counts differ");
    SimpleGraph g(update_graph.n);
    std::set_intersection(update_graph.edges.begin(), update_graph.edges.end(),
                          opinion_graph.edges.begin(), opinion_graph.edges.end(),
                          std::back_inserter(g.edges));
    return g;
}

ComponentPartition connected_components(const SimpleGraph& g) {
    ComponentPartition part;
    part.assignment.assign(g.n, -1);
    const auto adj = g.adjacency();
    std::vector<int> stack;
    for (int start = 0; start < g.n; ++start) {
        if (part.assignment[start] != -1) continue;
        const int label = static_cast<int>(part.components.size());
        part.components.emplace_back();
        stack.push_back(start);
        part.assignment[start] = label;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            part.components[label].push_back(v);
            for (int w : adj[v]) {
                if (part.assignment[w] == -1) {
                    part.assignment[w] = label;
                    stack.push_back(w);
                }
            }
        }
        std::sort(part.components[label].begin(), part.components[label].end());
    }
    return part;
}

bool is_delta_trivial(const std::vector<int>& component, const OpinionState& state, double delta) {
    if (delta <= 0.0) throw DomainError("is_delta_trivial: delta must be positive");
    const double delta2 = delta * delta;
    for (std::size_t a = 0; a < component.size(); ++a)
        for (std::size_t b = a + 1; b < component.size(); ++b)
            if (squared_distance(state.row(component[a]), state.row(component[b])) > delta2)
                return false;
    return true;
}

double component_diameter(const std::vector<int>& component, const OpinionState& state) {
    double worst = 0.0;
    for (std::size_t a = 0; a < component.size(); ++a)
        for (std::size_t b = a + 1; b < component.size(); ++b)
            worst = std::max(worst,
                             squared_distance(state.row(component[a]), state.row(component[b])));
    return std::sqrt(worst);
}

bool is_matching(const std::vector<Edge>& edge_set, const SimpleGraph& host) {
    std::vector<char> used(host.n, 0);
    for (auto [i, j] : edge_set) {
        if (i == j) return false;
        if (i < 0 || j < 0 || i >= host.n || j >= host.n) return false;
        if (!host.has_edge(i, j)) return false;
        if (used[i] || used[j]) return false;
        used[i] = used[j] = 1;
    }
    return true;
}

}  // namespace mixhk

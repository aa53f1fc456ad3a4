#pragma once

#include <utility>
#include <vector>

#include "mixhk/state.hpp"

namespace mixhk {

using Edge = std::pair<int, int>;  // canonical: first < second

/// Undirected loop-free graph on vertices 0..n-1. Edges are kept sorted in
/// canonical (min, max) form; equality is edge-set equality. Vertices are
/// 0-based internally and 1-based in every external format.
struct SimpleGraph {
    int n = 0;
    std::vector<Edge> edges;  // sorted, unique

    SimpleGraph() = default;
    explicit SimpleGraph(int n_) : n(n_) {}

    static SimpleGraph complete(int n);
    /// Builds from possibly unordered/duplicated pairs; validates ranges.
    static SimpleGraph from_edges(int n, const std::vector<Edge>& raw);

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
    std::size_t edge_count() const { return edges.size(); }

    std::vector<int> degrees() const;
    int max_degree() const;
    std::vector<std::vector<int>> adjacency() const;  // sorted neighbor lists

    bool operator==(const SimpleGraph&) const = default;
};

/// Partition of [n] into connected components. Two vertices share a label iff
/// they are connected; labels are assigned by smallest contained vertex, so
/// the partition is a pure function of the graph.
struct ComponentPartition {
    std::vector<int> assignment;             // vertex -> component label
    std::vector<std::vector<int>> components;  // label -> sorted vertex list
};

enum class InteractionMode { group, pair };

/// Pair-mode schedule payload shared with the stochastic module: either an
/// agent set (group interaction) or a matching (pair interaction).
struct ScheduleDraw {
    InteractionMode mode = InteractionMode::group;
    std::vector<int> agents;   // group mode, sorted
    std::vector<Edge> matching;  // pair mode, canonical sorted edges
};

/// Opinion graph at a state: edge {i,j} iff the Euclidean distance between
/// the two opinions is <= epsilon (closed inequality, exact comparison).
SimpleGraph build_opinion_graph(const OpinionState& state, double epsilon);

/// Social graph for update: all of `social` in group mode; in pair mode the
/// drawn matching restricted to edges present in `social`.
SimpleGraph build_update_graph(const SimpleGraph& social, const ScheduleDraw& draw,
                               InteractionMode mode);

/// Edge-set intersection of the update graph and the opinion graph.
SimpleGraph profile(const SimpleGraph& update_graph, const SimpleGraph& opinion_graph);

ComponentPartition connected_components(const SimpleGraph& g);

/// True iff every pair of opinions of vertices in the component is at
/// Euclidean distance <= delta.
bool is_delta_trivial(const std::vector<int>& component, const OpinionState& state, double delta);

/// Largest pairwise opinion distance within the component (0 for singletons).
double component_diameter(const std::vector<int>& component, const OpinionState& state);

/// True iff all edges belong to host, no vertex repeats, no loops.
bool is_matching(const std::vector<Edge>& edge_set, const SimpleGraph& host);

}  // namespace mixhk

#pragma once

#include <iosfwd>
#include <vector>

#include "mixhk/state.hpp"

namespace mixhk {

/// Per-step diagnostics snapshot. `components` is the partition of the agent
/// set induced by the profile at step t; the triviality flag refers to the
/// run's configured delta.
struct TraceRecord {
    OpinionState opinions;
    double energy = 0.0;
    std::vector<std::vector<int>> components;
    double max_component_diameter = 0.0;
    bool all_delta_trivial = false;

    long t() const { return opinions.t; }

    bool operator==(const TraceRecord&) const = default;
};

using Trace = std::vector<TraceRecord>;

/// JSON Lines, one record per line. Doubles are printed with 17 significant
/// digits so parsing a written trace reproduces the records exactly.
/// Vertices are 1-based on disk.
void write_trace(std::ostream& os, const Trace& trace);
Trace read_trace(std::istream& is);

std::string format_double(double v);

}  // namespace mixhk

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "mixhk/errors.hpp"

namespace mixhk {

/// Opinions of all agents at one time step: an n x d row-major array plus the
/// step index. Value type, freely copyable, immutable by convention once built.
struct OpinionState {
    long t = 0;
    int n = 0;
    int d = 0;
    std::vector<double> values;  // row-major, agent-major

    OpinionState() = default;
    OpinionState(int n_, int d_, long t_ = 0)
        : t(t_), n(n_), d(d_), values(static_cast<std::size_t>(n_) * d_, 0.0) {}

    double& at(int agent, int coord) { return values[static_cast<std::size_t>(agent) * d + coord]; }
    double at(int agent, int coord) const {
        return values[static_cast<std::size_t>(agent) * d + coord];
    }

    std::span<const double> row(int agent) const {
        return {values.data() + static_cast<std::size_t>(agent) * d, static_cast<std::size_t>(d)};
    }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    bool operator==(const OpinionState&) const = default;
};

/// Per-step stubbornness vector alpha(t), each entry in [0, 1]. An entry of
/// exactly 1 marks an absolutely stubborn agent for that step.
struct StubbornnessDraw {
    std::vector<double> alphas;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

/// True iff every coordinate of state_t lies inside the closed per-coordinate
/// min/max envelope of state0, within tolerance 1e-12. The envelope is the
/// convex-combination closure of the update rule: no run may ever leave it.
bool envelope_check(const OpinionState& state0, const OpinionState& state_t);

}  // namespace mixhk

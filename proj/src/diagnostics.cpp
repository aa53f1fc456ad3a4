#include "mixhk/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "mixhk/errors.hpp"

namespace mixhk {

double energy(const OpinionState& state, double epsilon) {
    if (epsilon <= 0.0) throw DomainError("energy: epsilon must be positive");
    const double cap = epsilon * epsilon;
    double z = 0.0;
    for (int i = 0; i < state.n; ++i)
        for (int j = i + 1; j < state.n; ++j)
            z += 2.0 * std::min(squared_distance(state.row(i), state.row(j)), cap);
    return z;
}

double consensus_diameter(const OpinionState& state) {
    double worst = 0.0;
    for (int i = 0; i < state.n; ++i)
        for (int j = i + 1; j < state.n; ++j)
            worst = std::max(worst, squared_distance(state.row(i), state.row(j)));
    return std::sqrt(worst);
}

DecrementReport check_decrement(const OpinionState& before, const OpinionState& after,
                                const Neighborhood& nbhd, const StubbornnessDraw& alpha,
                                double epsilon) {
    DecrementReport rep;
    rep.lhs = energy(before, epsilon) - energy(after, epsilon);
    double rhs = 0.0;
    for (int i = 0; i < before.n; ++i) {
        const double a = alpha.alphas[i];
        double weight = 1.0;
        if (a < 1.0) weight += nbhd.degree(i) * a / (1.0 - a);
        rhs += weight * squared_distance(before.row(i), after.row(i));
    }
    rep.rhs = 4.0 * rhs;
    rep.margin = rep.lhs - rep.rhs;
    rep.pass = rep.margin >= -1e-9;
    return rep;
}

DisplacementReport check_displacement_bound(const OpinionState& before, const OpinionState& after,
                                            const SimpleGraph& prof,
                                            const StubbornnessDraw& alpha, double delta) {
    DisplacementReport rep;
    const ComponentPartition parts = connected_components(prof);
    for (const auto& comp : parts.components) {
        ComponentDisplacement entry;
        entry.vertices = comp;

        if (is_delta_trivial(comp, before, delta)) {
            entry.status = "skipped: delta-trivial";
            ++rep.skipped;
            rep.components.push_back(std::move(entry));
            continue;
        }
        double max_alpha = 0.0;
        bool stubborn = false;
        for (int v : comp) {
            stubborn = stubborn || alpha.alphas[v] >= 1.0;
            max_alpha = std::max(max_alpha, alpha.alphas[v]);
        }
        if (stubborn) {
            entry.status = "skipped: stubborn agent";
            ++rep.skipped;
            rep.components.push_back(std::move(entry));
            continue;
        }

        for (int v : comp) entry.lhs += squared_distance(before.row(v), after.row(v));
        const double m = static_cast<double>(comp.size());
        const double spread = 1.0 - max_alpha;
        entry.rhs = 2.0 * delta * delta * spread * spread / std::pow(m, 8);
        const bool ok = entry.lhs - entry.rhs > 1e-12;
        entry.status = ok ? "pass" : "fail";
        ++rep.checked;
        rep.pass = rep.pass && ok;
        rep.components.push_back(std::move(entry));
    }
    return rep;
}

StoppingRecord tau_delta(const Trace& trace, double delta) {
    if (trace.empty()) throw DomainError("tau_delta: trace must be non-empty");
    StoppingRecord rec;
    rec.delta = delta;
    rec.horizon = trace.back().t();
    for (const TraceRecord& r : trace) {
        bool trivial = true;
        for (const auto& comp : r.components)
            trivial = trivial && is_delta_trivial(comp, r.opinions, delta);
        if (trivial) {
            rec.tau_delta = r.t();
            break;
        }
    }
    return rec;
}

PreservationReport triviality_preservation_probe(const Trace& trace,
                                                 const RunSettings& settings) {
    PreservationReport rep;
    std::vector<double> grid = settings.delta_grid;
    if (grid.empty()) grid = {settings.delta};

    std::vector<double> diameters(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k)
        diameters[k] = consensus_diameter(trace[k].opinions);

    for (double delta : grid) {
        for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
            if (diameters[k] > delta) continue;
            ++rep.checked;
            if (diameters[k + 1] > delta) {
                rep.pass = false;
                rep.counterexamples.push_back(
                    {delta, trace[k].t(), diameters[k], diameters[k + 1]});
            }
        }
    }
    return rep;
}

MonotonicityReport check_energy_monotonic(const Trace& trace) {
    MonotonicityReport rep;
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
        ++rep.checked;
        const double increase = trace[k + 1].energy - trace[k].energy;
        rep.worst_increase = std::max(rep.worst_increase, increase);
        if (increase > 1e-9 && !rep.first_violation) {
            rep.first_violation = trace[k].t();
            rep.pass = false;
        }
    }
    return rep;
}

}  // namespace mixhk

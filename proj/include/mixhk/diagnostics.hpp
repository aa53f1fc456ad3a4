#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixhk/config.hpp"
#include "mixhk/dynamics.hpp"
#include "mixhk/graph.hpp"
#include "mixhk/state.hpp"
#include "mixhk/trace.hpp"

namespace mixhk {

/// Z(t) = sum over ordered agent pairs of ||x_i - x_j||^2 capped at eps^2.
/// The model's Lyapunov function: nonincreasing along every run.
double energy(const OpinionState& state, double epsilon);

/// Maximum pairwise opinion distance.
double consensus_diameter(const OpinionState& state);

/// Per-step energy decrement against its lower bound
///   Z(t) - Z(t+1) >= 4 sum_i (1 + |N_i| alpha_i/(1-alpha_i) 1{alpha_i<1}) ||x_i(t)-x_i(t+1)||^2
/// with 1e-9 slack. Absolutely stubborn agents carry weight factor 1 (their
/// displacement vanishes anyway).
struct DecrementReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
};

DecrementReport check_decrement(const OpinionState& before, const OpinionState& after,
                                const Neighborhood& nbhd, const StubbornnessDraw& alpha,
                                double epsilon);

/// Strict displacement lower bound per profile component:
///   sum_{i in V(G)} ||x_i(t) - x_i(t+1)||^2 > 2 delta^2 (1 - max alpha)^2 / |V(G)|^8
/// for every connected delta-nontrivial component whose agents all have
/// alpha_i < 1. Components failing the hypothesis are skipped with a reason.
struct ComponentDisplacement {
    std::vector<int> vertices;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string status;  // "pass", "fail", "skipped: delta-trivial", "skipped: stubborn agent"
};

struct DisplacementReport {
    std::vector<ComponentDisplacement> components;
    long checked = 0;
    long skipped = 0;
    bool pass = true;  // no checked component failed
};

DisplacementReport check_displacement_bound(const OpinionState& before, const OpinionState& after,
                                            const SimpleGraph& prof,
                                            const StubbornnessDraw& alpha, double delta);

/// First step whose profile components are all delta-trivial.
struct StoppingRecord {
    std::optional<long> tau_delta;  // empty = not reached within the trace
    double delta = 0.0;
    long horizon = 0;
};

StoppingRecord tau_delta(const Trace& trace, double delta);

/// For each delta in the grid: whenever the whole opinion set is
/// delta-trivial at step t it must stay delta-trivial at t+1. Reports the
/// first counterexample verbatim if one exists.
struct PreservationReport {
    struct Counterexample {
        double delta = 0.0;
        long t = 0;
        double diameter_before = 0.0;
        double diameter_after = 0.0;
    };
    long checked = 0;
    std::vector<Counterexample> counterexamples;
    bool pass = true;
};

PreservationReport triviality_preservation_probe(const Trace& trace, const RunSettings& settings);

/// Z(t+1) <= Z(t) + 1e-9 across all consecutive records.
struct MonotonicityReport {
    long checked = 0;
    double worst_increase = 0.0;
    std::optional<long> first_violation;
    bool pass = true;
};

MonotonicityReport check_energy_monotonic(const Trace& trace);

}  // namespace mixhk

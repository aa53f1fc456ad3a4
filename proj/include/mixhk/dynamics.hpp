#pragma once

#include <functional>
#include <string>

#include "mixhk/config.hpp"
#include "mixhk/graph.hpp"
#include "mixhk/state.hpp"
#include "mixhk/stochastic.hpp"
#include "mixhk/trace.hpp"

namespace mixhk {

/// Update neighborhoods read off the profile: N_i never contains i, the
/// effective averaging set is N_i plus i itself.
struct Neighborhood {
    std::vector<std::vector<int>> neighbors;  // sorted, excludes self

    int degree(int i) const { return static_cast<int>(neighbors[i].size()); }
    int size() const { return static_cast<int>(neighbors.size()); }
};

/// Averaging weights A (uniform 1/(1+deg) over the effective set) and the
/// full update matrix B = diag(alpha) + (I - diag(alpha)) A. Both rows sum
/// to 1 by construction.
struct MixingMatrix {
    int n = 0;
    std::vector<double> A;  // row-major
    std::vector<double> B;

    double a(int i, int j) const { return A[static_cast<std::size_t>(i) * n + j]; }
    double b(int i, int j) const { return B[static_cast<std::size_t>(i) * n + j]; }
};

Neighborhood neighborhoods(const SimpleGraph& prof);

MixingMatrix mixing_matrix(const Neighborhood& nbhd, const StubbornnessDraw& alpha);

/// One synchronous update against a prepared neighborhood. Agents with
/// alpha_i = 1 or an empty neighborhood are copied bit-for-bit.
OpinionState advance(const OpinionState& state, const StubbornnessDraw& alpha,
                     const Neighborhood& nbhd);

/// One full model step: opinion graph, update graph, profile, neighborhoods,
/// then the synchronous average.
OpinionState step(const OpinionState& state, const StubbornnessDraw& alpha,
                  const ScheduleDraw& draw, const SimpleGraph& social, const ModelConfig& cfg);

/// Everything one executed step produced, handed to run observers (the
/// verification layer and the reduction checks feed on this).
struct StepArtifacts {
    long t = 0;
    const SimpleGraph* social = nullptr;
    const SimpleGraph* opinion = nullptr;
    const SimpleGraph* update = nullptr;
    const SimpleGraph* prof = nullptr;
    const ScheduleDraw* draw = nullptr;
    const StubbornnessDraw* alpha = nullptr;
    const Neighborhood* nbhd = nullptr;
    const OpinionState* before = nullptr;
    const OpinionState* after = nullptr;
};

using StepObserver = std::function<void(const StepArtifacts&)>;

struct RunResult {
    Trace trace;
    std::string stop_reason;  // "horizon", "delta_trivial" or "diameter"
    long steps_executed = 0;
};

/// Full run loop: samples alpha(t), U_t and E(t) from the per-lane streams of
/// cfg.seed, records one TraceRecord per step (including t = 0), and honors
/// the configured stop rule, which is evaluated on the profile of the current
/// step before advancing. Fully reproducible from cfg.seed.
RunResult run(const ModelConfig& cfg, const RunSettings& settings,
              const StepObserver& observer = {});

/// Step-0 opinions per the init spec, drawn from the init stream.
OpinionState initial_state(const ModelConfig& cfg, Rng& rng);

}  // namespace mixhk

#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

#include "mixhk/config.hpp"

namespace mixhk::verify {

/// Aggregate over one kind of check. worst_margin is the smallest distance to
/// failure observed (negative means a failure happened).
struct CheckStats {
    long checked = 0;
    long failed = 0;
    long skipped = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    nlohmann::json counterexample;

    bool pass() const { return failed == 0; }
    void record(bool ok, double margin, const nlohmann::json& detail);
    nlohmann::json to_json() const;
};

struct DynamicsSweepSettings {
    int instances = 100;
    long steps = 30;
    std::uint64_t seed = 2026;
    int max_n = 8;
    int max_d = 3;
    double gamma_max = 0.9;
    /// Fraction of instances drawn outside the monotone-energy domain (free
    /// social graphs and multi-pair matchings); the rest are in-domain.
    double general_fraction = 0.5;
    std::string inject_fault;  // "" or "mixing-row-sum" (negative control)
};

/// True iff every non-stubborn agent is guaranteed to average over its full
/// confidence ball: group interaction on complete social graphs, or pair
/// interaction with at most two agents. On this domain the capped energy is a
/// Lyapunov function and the decrement inequality is certified. Outside it a
/// mover can retreat from a nearby agent missing from its averaging set and
/// push the capped energy up, so there the energy checks are observational.
bool monotone_energy_domain(const ModelConfig& cfg);

/// Random-instance sweep over both interaction modes, asserting the run-level
/// inequalities on every executed step. Energy monotonicity and the decrement
/// bound gate the verdict only on monotone_energy_domain instances; outside
/// that domain they are recorded in the *_outside counters for inspection.
struct DynamicsSweepReport {
    CheckStats monotonic;
    CheckStats decrement;
    CheckStats displacement;
    CheckStats row_stochastic;
    CheckStats envelope;
    CheckStats preservation;
    CheckStats monotonic_outside;  // observational, never gates pass()
    CheckStats decrement_outside;  // observational, never gates pass()

    bool pass() const;
    nlohmann::json to_json() const;
};

DynamicsSweepReport run_dynamics_sweep(const DynamicsSweepSettings& settings);

/// Runs one configuration and folds every per-step and per-trace check into
/// the report. delta parameterizes the displacement bound; tag identifies the
/// instance inside counterexample payloads. inject_fault ("" normally) flips
/// the named mutation inside the checker's copy of the data, as a negative
/// control proving the checker can fail. enforce_energy routes the energy
/// checks into the gating counters (callers pass monotone_energy_domain(cfg)
/// unless they know better).
void verify_run(const ModelConfig& cfg, const RunSettings& settings, double delta,
                const std::string& inject_fault, bool enforce_energy,
                DynamicsSweepReport& report, const nlohmann::json& tag);

struct ReductionSettings {
    int seeds = 5;
    long deffuant_steps = 200;
    long sync_steps = 100;
    long async_steps = 1000;
    std::uint64_t seed = 1;
    double tolerance = 1e-12;
};

/// Engine-vs-reference trajectory comparison for the three named reductions,
/// under a shared draw sequence.
struct ReductionReport {
    double worst_deffuant = 0.0;
    double worst_sync = 0.0;
    double worst_async = 0.0;
    double tolerance = 1e-12;

    bool pass() const {
        return worst_deffuant <= tolerance && worst_sync <= tolerance && worst_async <= tolerance;
    }
    nlohmann::json to_json() const;
};

ReductionReport run_reduction_checks(const ReductionSettings& settings);

/// Worst per-coordinate absolute gap between the engine under the matching
/// preset and the independently coded reference trajectory, over all steps.
double reduction_gap_deffuant(const SimpleGraph& host, double mu, double epsilon, long steps,
                              std::uint64_t seed);
double reduction_gap_sync(int n, int d, double epsilon, long steps, std::uint64_t seed);
double reduction_gap_async(int n, double epsilon, long steps, std::uint64_t seed);

struct SpectralSweepSettings {
    int graphs = 100;
    int max_n = 6;
    int perturbations = 5;  // generalized-Laplacian diagonal perturbations per graph
    std::uint64_t seed = 5;
};

/// Cheeger sandwich, Perron-Frobenius and lambda2(Q'Q) certificates over the
/// named small graphs plus random connected ones.
struct SpectralSweepReport {
    CheckStats sandwich;
    CheckStats perron;
    CheckStats lambda2qq;

    bool pass() const { return sandwich.pass() && perron.pass() && lambda2qq.pass(); }
    nlohmann::json to_json() const;
};

SpectralSweepReport run_spectral_sweep(const SpectralSweepSettings& settings);

}  // namespace mixhk::verify

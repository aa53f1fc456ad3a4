#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixhk/graph.hpp"
#include "mixhk/rng.hpp"
#include "mixhk/state.hpp"

namespace mixhk {

/// Distribution of the per-step stubbornness values. gamma_max, when set, is a
/// uniform upper bound (< 1) enforced on every sampled non-stubborn entry; it
/// is the hypothesis under which the finite-stopping-time results apply.
struct StubbornnessSpec {
    enum class Kind { constant, uniform_interval, two_point, per_agent_table };
    Kind kind = Kind::constant;
    double value = 0.0;              // constant
    double lo = 0.0, hi = 0.0;       // uniform_interval
    double a = 0.0, b = 0.0;         // two_point values
    double prob_a = 0.5;             // two_point: P(a)
    std::vector<double> table;       // per_agent_table, length n
    std::optional<double> gamma_max;
};

/// One support element of the schedule distribution with its probability:
/// an agent subset in group mode, a matching in pair mode.
struct ScheduleAtom {
    std::vector<int> agents;          // group mode, sorted 0-based
    std::vector<Edge> matching;       // pair mode, canonical edges
    double probability = 0.0;
};

struct ScheduleSpec {
    InteractionMode mode = InteractionMode::group;
    std::vector<ScheduleAtom> support;
};

/// Evolution of the social graph E(t): fixed, cycled from a list, or
/// Erdos-Renyi resampled each step (an extension beyond the named presets).
struct SocialSpec {
    enum class Kind { static_graph, sequence, random_er };
    Kind kind = Kind::static_graph;
    std::vector<SimpleGraph> graphs;  // static: [0]; sequence: cycled by t
    double er_p = 0.0;                // random_er edge probability
    int n = 0;
};

/// Group mode: agents in the draw get a sampled alpha (capped at gamma_max
/// when set), everyone else is absolutely stubborn for the step. Pair mode:
/// same, keyed on matched agents.
StubbornnessDraw sample_alpha(const StubbornnessSpec& spec, const ScheduleDraw& draw, int n,
                              Rng& rng);

ScheduleDraw sample_schedule(const ScheduleSpec& spec, Rng& rng);

SimpleGraph sample_social(const SocialSpec& spec, long t, Rng& rng);

/// The three specializations the model reduces to.
struct PresetBundle {
    InteractionMode mode = InteractionMode::group;
    StubbornnessSpec stubbornness;
    ScheduleSpec schedule;
    SocialSpec social;
};

PresetBundle preset_sync_hk(int n);
PresetBundle preset_async_hk(int n);
/// Deffuant on a host graph: per-edge singleton matchings drawn uniformly,
/// both endpoints at stubbornness 1 - 2*mu. mu must lie in [0, 1/2].
PresetBundle preset_deffuant(const SimpleGraph& host, double mu);

std::string to_string(StubbornnessSpec::Kind k);
std::string to_string(SocialSpec::Kind k);
std::string to_string(InteractionMode m);

}  // namespace mixhk

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixhk/stochastic.hpp"

namespace mixhk {

/// Where the step-0 opinions come from. Explicit values consume no
/// randomness; the box and ball kinds draw from the init stream.
struct InitSpec {
    enum class Kind { explicit_values, uniform_box, uniform_ball };
    Kind kind = Kind::uniform_box;
    std::vector<std::vector<double>> values;  // explicit: n rows of d coords
    std::vector<double> lo, hi;               // uniform_box, length d
    std::vector<double> center;               // uniform_ball, length d
    double radius = 0.0;
};

/// Full run configuration. Dense n x n matrices appear downstream, so n is
/// capped (4096 by default, adjustable per config).
struct ModelConfig {
    double epsilon = 0.0;
    InteractionMode mode = InteractionMode::group;
    int n = 0;
    int d = 1;
    long horizon = 1;
    std::uint64_t seed = 0;
    int max_n = 4096;

    StubbornnessSpec stubbornness;
    ScheduleSpec schedule;
    SocialSpec social;
    InitSpec init;
};

enum class StopRule { none, delta_trivial, diameter };

/// Diagnostics-layer knobs carried next to the model config.
struct RunSettings {
    double delta = 1e-3;                 // triviality threshold for flags and tau
    StopRule stop = StopRule::none;
    double diameter_tol = 1e-6;          // for StopRule::diameter
    std::vector<double> delta_grid;      // triviality-preservation probe grid
};

std::string to_string(StopRule r);

/// Every violated invariant as human-readable strings; an empty list means
/// the configuration is valid. Violations are data, not failures.
std::vector<std::string> validate_config(const ModelConfig& cfg);

}  // namespace mixhk

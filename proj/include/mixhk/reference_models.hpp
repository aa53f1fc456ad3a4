#pragma once

#include <vector>

#include "mixhk/graph.hpp"
#include "mixhk/state.hpp"

namespace mixhk {

// Directly coded textbook dynamics, kept deliberately independent of the
// engine's matrix path. The engine must reproduce these trajectories under
// the matching preset and a shared draw sequence.

/// Classic pairwise exchange: the drawn pair moves toward each other at rate
/// mu iff within the confidence threshold. Everyone else is untouched.
OpinionState deffuant_reference_step(const OpinionState& state, Edge drawn_pair, double mu,
                                     double epsilon);

/// Synchronous bounded-confidence averaging: every agent moves to the mean of
/// all opinions within epsilon of its own (itself included).
OpinionState sync_hk_reference_step(const OpinionState& state, double epsilon);

/// One uniformly selected agent moves to the mean of its epsilon-ball;
/// everyone else is untouched.
OpinionState async_hk_reference_step(const OpinionState& state, int selected, double epsilon);

}  // namespace mixhk

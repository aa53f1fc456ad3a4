#include "mixhk/state.hpp"

#include <algorithm>
#include <limits>

namespace mixhk {

bool envelope_check(const OpinionState& state0, const OpinionState& state_t) {
    if (state0.n != state_t.n || state0.d != state_t.d)
        throw ShapeError("envelope_check: states disagree in n or d");

    constexpr double tol = 1e-12;
    for (int k = 0; k < state0.d; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int i = 0; i < state0.n; ++i) {
            lo = std::min(lo, state0.at(i, k));
            hi = std::max(hi, state0.at(i, k));
        }
        for (int i = 0; i < state_t.n; ++i) {
            const double v = state_t.at(i, k);
            if (v < lo - tol || v > hi + tol) return false;
        }
    }
    return true;
}

}  // namespace mixhk

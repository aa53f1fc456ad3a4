#include "mixhk/reference_models.hpp"

namespace mixhk {

OpinionState deffuant_reference_step(const OpinionState& state, Edge drawn_pair, double mu,
                                     double epsilon) {
    OpinionState next = state;
    next.t = state.t + 1;
    const auto [i, j] = drawn_pair;
    if (euclidean_distance(state.row(i), state.row(j)) <= epsilon) {
        for (int k = 0; k < state.d; ++k) {
            next.at(i, k) = state.at(i, k) + mu * (state.at(j, k) - state.at(i, k));
            next.at(j, k) = state.at(j, k) + mu * (state.at(i, k) - state.at(j, k));
        }
    }
    return next;
}

OpinionState sync_hk_reference_step(const OpinionState& state, double epsilon) {
    OpinionState next = state;
    next.t = state.t + 1;
    for (int i = 0; i < state.n; ++i) {
        for (int k = 0; k < state.d; ++k) next.at(i, k) = 0.0;
        int count = 0;
        for (int j = 0; j < state.n; ++j) {
            if (euclidean_distance(state.row(i), state.row(j)) <= epsilon) {
                ++count;
                for (int k = 0; k < state.d; ++k) next.at(i, k) += state.at(j, k);
            }
        }
        for (int k = 0; k < state.d; ++k) next.at(i, k) /= count;
    }
    return next;
}

OpinionState async_hk_reference_step(const OpinionState& state, int selected, double epsilon) {
    OpinionState next = state;
    next.t = state.t + 1;
    int count = 0;
    std::vector<double> mean(state.d, 0.0);
    for (int j = 0; j < state.n; ++j) {
        if (euclidean_distance(state.row(selected), state.row(j)) <= epsilon) {
            ++count;
            for (int k = 0; k < state.d; ++k) mean[k] += state.at(j, k);
        }
    }
    for (int k = 0; k < state.d; ++k) next.at(selected, k) = mean[k] / count;
    return next;
}

}  // namespace mixhk

#include "mixhk/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "mixhk/diagnostics.hpp"
#include "mixhk/errors.hpp"

namespace mixhk {

Neighborhood neighborhoods(const SimpleGraph& prof) {
    Neighborhood nbhd;
    nbhd.neighbors = prof.adjacency();
    return nbhd;
}

MixingMatrix mixing_matrix(const Neighborhood& nbhd, const StubbornnessDraw& alpha) {
    const int n = nbhd.size();
    if (static_cast<int>(alpha.alphas.size()) != n)
        throw ShapeError("mixing_matrix: alpha length mismatch");

    MixingMatrix m;
    m.n = n;
    m.A.assign(static_cast<std::size_t>(n) * n, 0.0);
    m.B.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double w = 1.0 / (1.0 + nbhd.degree(i));
        auto* arow = m.A.data() + static_cast<std::size_t>(i) * n;
        arow[i] = w;
        for (int j : nbhd.neighbors[i]) arow[j] = w;

        const double a = alpha.alphas[i];
        auto* brow = m.B.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) brow[j] = (1.0 - a) * arow[j];
        brow[i] += a;
    }
    return m;
}

OpinionState advance(const OpinionState& state, const StubbornnessDraw& alpha,
                     const Neighborhood& nbhd) {
    if (static_cast<int>(alpha.alphas.size()) != state.n || nbhd.size() != state.n)
        throw ShapeError("advance: inconsistent sizes");

    OpinionState next = state;
    next.t = state.t + 1;
    for (int i = 0; i < state.n; ++i) {
        const double a = alpha.alphas[i];
        const int deg = nbhd.degree(i);
        // Absolutely stubborn and isolated agents keep their bits untouched.
        if (a == 1.0 || deg == 0) continue;
        const double coef = (1.0 - a) / (1.0 + deg);
        for (int k = 0; k < state.d; ++k) {
            // Ascending sum over the effective averaging set N_i + {i}.
            double sum = 0.0;
            bool self_added = false;
            for (int j : nbhd.neighbors[i]) {
                if (!self_added && i < j) {
                    sum += state.at(i, k);
                    self_added = true;
                }
                sum += state.at(j, k);
            }
            if (!self_added) sum += state.at(i, k);
            next.at(i, k) = a * state.at(i, k) + coef * sum;
        }
    }
    return next;
}

OpinionState step(const OpinionState& state, const StubbornnessDraw& alpha,
                  const ScheduleDraw& draw, const SimpleGraph& social, const ModelConfig& cfg) {
    const SimpleGraph opinion = build_opinion_graph(state, cfg.epsilon);
    const SimpleGraph update = build_update_graph(social, draw, cfg.mode);
    const SimpleGraph prof = profile(update, opinion);
    return advance(state, alpha, neighborhoods(prof));
}

OpinionState initial_state(const ModelConfig& cfg, Rng& rng) {
    OpinionState state(cfg.n, cfg.d, 0);
    switch (cfg.init.kind) {
        case InitSpec::Kind::explicit_values:
            for (int i = 0; i < cfg.n; ++i)
                for (int k = 0; k < cfg.d; ++k) state.at(i, k) = cfg.init.values[i][k];
            break;
        case InitSpec::Kind::uniform_box:
            for (int i = 0; i < cfg.n; ++i)
                for (int k = 0; k < cfg.d; ++k)
                    state.at(i, k) = rng.uniform(cfg.init.lo[k], cfg.init.hi[k]);
            break;
        case InitSpec::Kind::uniform_ball: {
            const double r = cfg.init.radius;
            for (int i = 0; i < cfg.n; ++i) {
                // Rejection sampling from the bounding box.
                for (;;) {
                    double norm2 = 0.0;
                    for (int k = 0; k < cfg.d; ++k) {
                        const double off = rng.uniform(-r, r);
                        state.at(i, k) = cfg.init.center[k] + off;
                        norm2 += off * off;
                    }
                    if (norm2 <= r * r) break;
                }
            }
            break;
        }
    }
    return state;
}

RunResult run(const ModelConfig& cfg, const RunSettings& settings, const StepObserver& observer) {
    RngLanes lanes(cfg.seed);
    OpinionState state = initial_state(cfg, lanes.init);

    RunResult result;
    for (long t = 0;; ++t) {
        state.t = t;
        const SimpleGraph social = sample_social(cfg.social, t, lanes.social);
        const ScheduleDraw draw = sample_schedule(cfg.schedule, lanes.schedule);
        const StubbornnessDraw alpha = sample_alpha(cfg.stubbornness, draw, cfg.n, lanes.alpha);

        const SimpleGraph opinion = build_opinion_graph(state, cfg.epsilon);
        const SimpleGraph update = build_update_graph(social, draw, cfg.mode);
        const SimpleGraph prof = profile(update, opinion);
        const ComponentPartition parts = connected_components(prof);

        TraceRecord rec;
        rec.opinions = state;
        rec.energy = energy(state, cfg.epsilon);
        rec.components = parts.components;
        bool trivial = true;
        double worst = 0.0;
        for (const auto& comp : parts.components) {
            trivial = trivial && is_delta_trivial(comp, state, settings.delta);
            worst = std::max(worst, component_diameter(comp, state));
        }
        rec.max_component_diameter = worst;
        rec.all_delta_trivial = trivial;
        result.trace.push_back(std::move(rec));

        // Stop rules look at the profile of the current step before advancing.
        if (settings.stop == StopRule::delta_trivial && trivial) {
            result.stop_reason = "delta_trivial";
            break;
        }
        if (settings.stop == StopRule::diameter &&
            consensus_diameter(state) < settings.diameter_tol) {
            result.stop_reason = "diameter";
            break;
        }
        if (t >= cfg.horizon) {
            result.stop_reason = "horizon";
            break;
        }

        const Neighborhood nbhd = neighborhoods(prof);
        OpinionState next = advance(state, alpha, nbhd);
        if (observer) {
            StepArtifacts art;
            art.t = t;
            art.social = &social;
            art.opinion = &opinion;
            art.update = &update;
            art.prof = &prof;
            art.draw = &draw;
            art.alpha = &alpha;
            art.nbhd = &nbhd;
            art.before = &state;
            art.after = &next;
            observer(art);
        }
        state = std::move(next);
        ++result.steps_executed;
    }
    return result;
}

}  // namespace mixhk

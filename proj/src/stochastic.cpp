#include "mixhk/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "mixhk/errors.hpp"

namespace mixhk {

namespace {

double sample_one(const StubbornnessSpec& spec, int agent, Rng& rng) {
    switch (spec.kind) {
        case StubbornnessSpec::Kind::constant:
            return spec.value;
        case StubbornnessSpec::Kind::uniform_interval:
            return rng.uniform(spec.lo, spec.hi);
        case StubbornnessSpec::Kind::two_point:
            return rng.uniform() < spec.prob_a ? spec.a : spec.b;
        case StubbornnessSpec::Kind::per_agent_table:
            return spec.table[agent];
    }
    return 0.0;
}

}  // namespace

StubbornnessDraw sample_alpha(const StubbornnessSpec& spec, const ScheduleDraw& draw, int n,
                              Rng& rng) {
    StubbornnessDraw out;
    out.alphas.assign(n, 1.0);

    std::vector<int> active;
    if (draw.mode == InteractionMode::group) {
        active = draw.agents;
    } else {
        for (auto [i, j] : draw.matching) {
            active.push_back(i);
            active.push_back(j);
        }
        std::sort(active.begin(), active.end());
    }

    for (int agent : active) {
        double a = sample_one(spec, agent, rng);
        if (spec.gamma_max && a != 1.0) a = std::min(a, *spec.gamma_max);
        out.alphas[agent] = a;
    }
    return out;
}

ScheduleDraw sample_schedule(const ScheduleSpec& spec, Rng& rng) {
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t pick = spec.support.size() - 1;
    for (std::size_t k = 0; k < spec.support.size(); ++k) {
        cum += spec.support[k].probability;
        if (u < cum) {
            pick = k;
            break;
        }
    }
    ScheduleDraw draw;
    draw.mode = spec.mode;
    draw.agents = spec.support[pick].agents;
    draw.matching = spec.support[pick].matching;
    return draw;
}

SimpleGraph sample_social(const SocialSpec& spec, long t, Rng& rng) {
    switch (spec.kind) {
        case SocialSpec::Kind::static_graph:
            return spec.graphs.front();
        case SocialSpec::Kind::sequence:
            return spec.graphs[static_cast<std::size_t>(t) % spec.graphs.size()];
        case SocialSpec::Kind::random_er: {
            SimpleGraph g(spec.n);
            for (int i = 0; i < spec.n; ++i)
                for (int j = i + 1; j < spec.n; ++j)
                    if (rng.bernoulli(spec.er_p)) g.edges.emplace_back(i, j);
            return g;
        }
    }
    return SimpleGraph(spec.n);
}

PresetBundle preset_sync_hk(int n) {
    if (n < 1) throw DomainError("preset_sync_hk: n must be at least 1");
    PresetBundle b;
    b.mode = InteractionMode::group;
    b.stubbornness.kind = StubbornnessSpec::Kind::constant;
    b.stubbornness.value = 0.0;
    b.schedule.mode = InteractionMode::group;
    ScheduleAtom all;
    all.agents.resize(n);
    for (int i = 0; i < n; ++i) all.agents[i] = i;
    all.probability = 1.0;
    b.schedule.support.push_back(std::move(all));
    b.social.kind = SocialSpec::Kind::static_graph;
    b.social.n = n;
    b.social.graphs.push_back(SimpleGraph::complete(n));
    return b;
}

PresetBundle preset_async_hk(int n) {
    if (n < 1) throw DomainError("preset_async_hk: n must be at least 1");
    PresetBundle b;
    b.mode = InteractionMode::group;
    b.stubbornness.kind = StubbornnessSpec::Kind::constant;
    b.stubbornness.value = 0.0;
    b.schedule.mode = InteractionMode::group;
    for (int i = 0; i < n; ++i) {
        ScheduleAtom atom;
        atom.agents = {i};
        atom.probability = 1.0 / n;
        b.schedule.support.push_back(std::move(atom));
    }
    b.social.kind = SocialSpec::Kind::static_graph;
    b.social.n = n;
    b.social.graphs.push_back(SimpleGraph::complete(n));
    return b;
}

PresetBundle preset_deffuant(const SimpleGraph& host, double mu) {
    if (mu < 0.0 || mu > 0.5)
        throw DomainError("preset_deffuant: mu must lie in [0, 1/2]");
    if (host.edges.empty())
        throw DomainError("preset_deffuant: host graph has no edges");
    PresetBundle b;
    b.mode = InteractionMode::pair;
    b.stubbornness.kind = StubbornnessSpec::Kind::constant;
    b.stubbornness.value = 1.0 - 2.0 * mu;
    b.schedule.mode = InteractionMode::pair;
    for (auto e : host.edges) {
        ScheduleAtom atom;
        atom.matching = {e};
        atom.probability = 1.0 / static_cast<double>(host.edges.size());
        b.schedule.support.push_back(std::move(atom));
    }
    b.social.kind = SocialSpec::Kind::static_graph;
    b.social.n = host.n;
    b.social.graphs.push_back(host);
    return b;
}

std::string to_string(StubbornnessSpec::Kind k) {
    switch (k) {
        case StubbornnessSpec::Kind::constant: return "constant";
        case StubbornnessSpec::Kind::uniform_interval: return "uniform_interval";
        case StubbornnessSpec::Kind::two_point: return "two_point";
        case StubbornnessSpec::Kind::per_agent_table: return "per_agent_table";
    }
    return "?";
}

std::string to_string(SocialSpec::Kind k) {
    switch (k) {
        case SocialSpec::Kind::static_graph: return "static";
        case SocialSpec::Kind::sequence: return "sequence";
        case SocialSpec::Kind::random_er: return "random_er";
    }
    return "?";
}

std::string to_string(InteractionMode m) {
    return m == InteractionMode::group ? "group" : "pair";
}

}  // namespace mixhk

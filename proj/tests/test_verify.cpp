#include <doctest.h>

#include "mixhk/diagnostics.hpp"
#include "mixhk/dynamics.hpp"
#include "mixhk/graph_gen.hpp"
#include "mixhk/verify.hpp"

using namespace mixhk;

namespace {

ModelConfig group_config(SimpleGraph social) {
    ModelConfig cfg;
    cfg.n = social.n;
    cfg.d = 1;
    cfg.epsilon = 0.5;
    cfg.horizon = 10;
    cfg.mode = InteractionMode::group;
    ScheduleAtom all;
    for (int i = 0; i < cfg.n; ++i) all.agents.push_back(i);
    all.probability = 1.0;
    cfg.schedule.mode = InteractionMode::group;
    cfg.schedule.support = {all};
    cfg.social.kind = SocialSpec::Kind::static_graph;
    cfg.social.n = cfg.n;
    cfg.social.graphs = {std::move(social)};
    return cfg;
}

ModelConfig pair_config(SimpleGraph social) {
    ModelConfig cfg = group_config(std::move(social));
    cfg.mode = InteractionMode::pair;
    cfg.schedule.mode = InteractionMode::pair;
    const SimpleGraph& g0 = cfg.social.graphs[0];
    cfg.schedule.support.clear();
    for (const Edge& e : g0.edges) {
        ScheduleAtom atom;
        atom.matching = {e};
        atom.probability = 1.0 / static_cast<double>(g0.edge_count());
        cfg.schedule.support.push_back(atom);
    }
    return cfg;
}

}  // namespace

TEST_CASE("monotone energy domain covers exactly the safe configurations") {
    CHECK(verify::monotone_energy_domain(group_config(SimpleGraph::complete(5))));
    CHECK(verify::monotone_energy_domain(group_config(SimpleGraph::complete(2))));
    CHECK_FALSE(verify::monotone_energy_domain(group_config(path_graph(4))));

    CHECK(verify::monotone_energy_domain(pair_config(SimpleGraph::complete(2))));
    CHECK_FALSE(verify::monotone_energy_domain(pair_config(SimpleGraph::complete(3))));

    ModelConfig er = group_config(SimpleGraph::complete(4));
    er.social.kind = SocialSpec::Kind::random_er;
    er.social.graphs.clear();
    er.social.er_p = 0.99;
    CHECK_FALSE(verify::monotone_energy_domain(er));
}

TEST_CASE("capped energy can increase outside the monotone domain") {
    // Opinions (0, 0.5, 1.2), eps = 1, social graph only {0,1}: agent 1 is
    // drawn alone with alpha = 0.1 and moves toward agent 0, retreating from
    // agent 2, which sits within eps but outside the social graph. The capped
    // pair {0,2} is already saturated, the pair {1,2} grows faster than {0,1}
    // shrinks, and Z rises from 3.48 to 3.8625.
    OpinionState x(3, 1);
    x.at(0, 0) = 0.0;
    x.at(1, 0) = 0.5;
    x.at(2, 0) = 1.2;

    ModelConfig cfg = group_config(SimpleGraph::from_edges(3, {{0, 1}}));
    cfg.epsilon = 1.0;

    ScheduleDraw draw;
    draw.mode = InteractionMode::group;
    draw.agents = {1};
    StubbornnessDraw alpha;
    alpha.alphas = {1.0, 0.1, 1.0};

    const OpinionState y = step(x, alpha, draw, cfg.social.graphs[0], cfg);
    CHECK(y.at(1, 0) == doctest::Approx(0.275).epsilon(1e-14));  // 0.1*0.5 + 0.9*0.25
    CHECK(y.at(0, 0) == 0.0);
    CHECK(y.at(2, 0) == 1.2);

    const double z0 = energy(x, cfg.epsilon);
    const double z1 = energy(y, cfg.epsilon);
    CHECK(z0 == doctest::Approx(3.48).epsilon(1e-12));
    CHECK(z1 == doctest::Approx(3.8625).epsilon(1e-12));
    CHECK(z1 - z0 == doctest::Approx(0.3825).epsilon(1e-10));
}

TEST_CASE("in-domain dynamics sweep certifies every inequality") {
    verify::DynamicsSweepSettings settings;
    settings.instances = 40;
    settings.steps = 15;
    settings.seed = 7;
    settings.max_n = 6;
    settings.max_d = 2;
    settings.general_fraction = 0.0;
    const verify::DynamicsSweepReport rep = verify::run_dynamics_sweep(settings);
    CHECK(rep.pass());
    CHECK(rep.monotonic.failed == 0);
    CHECK(rep.monotonic.checked > 0);
    CHECK(rep.decrement.failed == 0);
    CHECK(rep.decrement.checked > 0);
    CHECK(rep.displacement.failed == 0);
    CHECK(rep.row_stochastic.failed == 0);
    CHECK(rep.row_stochastic.checked > 0);
    CHECK(rep.envelope.failed == 0);
    CHECK(rep.envelope.checked > 0);
    CHECK(rep.preservation.failed == 0);
    // Nothing was routed to the observational counters.
    CHECK(rep.monotonic_outside.checked == 0);
    CHECK(rep.decrement_outside.checked == 0);
}

TEST_CASE("general sweep still passes with energy checks scoped to the domain") {
    verify::DynamicsSweepSettings settings;
    settings.instances = 40;
    settings.steps = 15;
    settings.seed = 8;
    settings.max_n = 6;
    settings.max_d = 2;
    settings.general_fraction = 0.5;
    const verify::DynamicsSweepReport rep = verify::run_dynamics_sweep(settings);
    CHECK(rep.pass());
    // The gated checks ran on the in-domain half and the observational
    // counters saw the free-graph half.
    CHECK(rep.monotonic.checked > 0);
    CHECK(rep.monotonic_outside.checked > 0);
    CHECK(rep.displacement.checked + rep.displacement.skipped > 0);

    const nlohmann::json j = rep.to_json();
    CHECK(j.contains("outside_energy_domain"));
    CHECK(j["outside_energy_domain"]["gating"] == false);
}

TEST_CASE("the injected row-sum fault is caught") {
    verify::DynamicsSweepSettings settings;
    settings.instances = 3;
    settings.steps = 5;
    settings.seed = 9;
    settings.general_fraction = 0.0;
    settings.inject_fault = "mixing-row-sum";
    const verify::DynamicsSweepReport rep = verify::run_dynamics_sweep(settings);
    CHECK_FALSE(rep.pass());
    CHECK(rep.row_stochastic.failed > 0);
    CHECK(rep.row_stochastic.counterexample.contains("row"));
    CHECK(rep.row_stochastic.counterexample["reason"] == "row sum deviates from 1");
}

TEST_CASE("check stats keep the first counterexample and the worst margin") {
    verify::CheckStats stats;
    stats.record(true, 0.5, {{"id", 1}});
    stats.record(false, -0.25, {{"id", 2}});
    stats.record(false, -0.75, {{"id", 3}});
    CHECK(stats.checked == 3);
    CHECK(stats.failed == 2);
    CHECK_FALSE(stats.pass());
    CHECK(stats.worst_margin == -0.75);
    CHECK(stats.counterexample["id"] == 2);
}

TEST_CASE("reduction checks agree at a reduced scale") {
    verify::ReductionSettings settings;
    settings.seeds = 2;
    settings.deffuant_steps = 80;
    settings.sync_steps = 40;
    settings.async_steps = 300;
    const verify::ReductionReport rep = verify::run_reduction_checks(settings);
    CHECK(rep.pass());
    CHECK(rep.worst_deffuant <= 1e-12);
    CHECK(rep.worst_sync <= 1e-12);
    CHECK(rep.worst_async <= 1e-12);
}

TEST_CASE("spectral sweep passes at a reduced scale") {
    verify::SpectralSweepSettings settings;
    settings.graphs = 30;
    settings.max_n = 6;
    settings.perturbations = 3;
    const verify::SpectralSweepReport rep = verify::run_spectral_sweep(settings);
    CHECK(rep.pass());
    CHECK(rep.sandwich.checked > 0);
    CHECK(rep.perron.checked > 0);
    CHECK(rep.lambda2qq.checked > 0);
}

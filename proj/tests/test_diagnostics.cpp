#include <doctest.h>

#include <cmath>
#include <vector>

#include "mixhk/diagnostics.hpp"
#include "mixhk/dynamics.hpp"
#include "mixhk/graph.hpp"
#include "mixhk/rng.hpp"

using namespace mixhk;

namespace {

OpinionState state1d(const std::vector<double>& xs, long t = 0) {
    OpinionState s(static_cast<int>(xs.size()), 1, t);
    for (int i = 0; i < s.n; ++i) s.at(i, 0) = xs[i];
    return s;
}

StubbornnessDraw constant_alpha(int n, double a) {
    StubbornnessDraw d;
    d.alphas.assign(n, a);
    return d;
}

TraceRecord record(const std::vector<double>& xs, long t, double epsilon,
                   std::vector<std::vector<int>> components) {
    TraceRecord rec;
    rec.opinions = state1d(xs, t);
    rec.energy = energy(rec.opinions, epsilon);
    rec.components = std::move(components);
    return rec;
}

}  // namespace

TEST_CASE("energy of coincident opinions is zero") {
    CHECK(energy(state1d({0.7, 0.7, 0.7}), 1.0) == 0.0);
}

TEST_CASE("energy counts ordered pairs and caps at epsilon squared") {
    CHECK(energy(state1d({0.0, 0.5}), 1.0) == 0.5);  // 2 * 0.25, below the cap
    CHECK(energy(state1d({0.0, 2.0}), 1.0) == 2.0);  // 2 * min(4, 1)

    OpinionState plane(2, 2);
    plane.at(1, 0) = 3.0;
    plane.at(1, 1) = 4.0;
    CHECK(energy(plane, 6.0) == 50.0);  // squared distance 25 under cap 36
    CHECK(energy(plane, 4.0) == 32.0);  // capped at 16
}

TEST_CASE("energy rejects nonpositive epsilon") {
    CHECK_THROWS_AS(energy(state1d({0.0}), 0.0), DomainError);
}

TEST_CASE("energy never exceeds n(n-1) epsilon^2") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.bits() % 6);
        OpinionState s(n, 2);
        for (double& v : s.values) v = 20.0 * rng.uniform() - 10.0;
        const double eps = 0.1 + rng.uniform();
        const double z = energy(s, eps);
        CHECK(z >= 0.0);
        CHECK(z <= n * (n - 1) * eps * eps * (1.0 + 1e-12));
    }
}

TEST_CASE("consensus diameter is the largest pairwise distance") {
    CHECK(consensus_diameter(state1d({0.0, 1.2, 0.3})) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(consensus_diameter(state1d({0.42})) == 0.0);

    OpinionState plane(2, 2);
    plane.at(1, 0) = 3.0;
    plane.at(1, 1) = 4.0;
    CHECK(consensus_diameter(plane) == 5.0);
}

TEST_CASE("decrement bound on a confidence line") {
    // Opinions (0, 0.6, 1.2) with eps = 0.7: profile is the path, everyone
    // averages freely (alpha = 0), and the new state is (0.3, 0.6, 0.9).
    const OpinionState before = state1d({0.0, 0.6, 1.2});
    const SimpleGraph prof = SimpleGraph::from_edges(3, {{0, 1}, {1, 2}});
    const Neighborhood nbhd = neighborhoods(prof);
    const StubbornnessDraw alpha = constant_alpha(3, 0.0);
    const OpinionState after = advance(before, alpha, nbhd);

    CHECK(after.at(0, 0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(after.at(2, 0) == doctest::Approx(0.9).epsilon(1e-14));

    const DecrementReport rep = check_decrement(before, after, nbhd, alpha, 0.7);
    CHECK(rep.lhs == doctest::Approx(1.34).epsilon(1e-12));   // 2.42 - 1.08
    CHECK(rep.rhs == doctest::Approx(0.72).epsilon(1e-12));   // 4 * (0.09 + 0 + 0.09)
    CHECK(rep.margin == doctest::Approx(0.62).epsilon(1e-12));
    CHECK(rep.pass);
}

TEST_CASE("decrement weights grow with alpha") {
    // Two agents at 0 and 0.4, both alpha = 0.5: each weight is
    // 1 + deg * alpha/(1-alpha) = 2, displacements are 0.1 each.
    const OpinionState before = state1d({0.0, 0.4});
    const Neighborhood nbhd = neighborhoods(SimpleGraph::complete(2));
    const StubbornnessDraw alpha = constant_alpha(2, 0.5);
    const OpinionState after = advance(before, alpha, nbhd);

    CHECK(after.at(0, 0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(after.at(1, 0) == doctest::Approx(0.3).epsilon(1e-14));

    const DecrementReport rep = check_decrement(before, after, nbhd, alpha, 1.0);
    CHECK(rep.lhs == doctest::Approx(0.24).epsilon(1e-12));  // 0.32 - 0.08
    CHECK(rep.rhs == doctest::Approx(0.16).epsilon(1e-12));  // 4 * (2 + 2) * 0.01
    CHECK(rep.pass);
}

TEST_CASE("decrement is vacuous when everyone is absolutely stubborn") {
    const OpinionState before = state1d({0.0, 0.6, 1.2});
    const SimpleGraph prof = SimpleGraph::from_edges(3, {{0, 1}, {1, 2}});
    const Neighborhood nbhd = neighborhoods(prof);
    const StubbornnessDraw alpha = constant_alpha(3, 1.0);
    const OpinionState after = advance(before, alpha, nbhd);
    CHECK(after.values == before.values);

    const DecrementReport rep = check_decrement(before, after, nbhd, alpha, 0.7);
    CHECK(rep.lhs == 0.0);
    CHECK(rep.rhs == 0.0);
    CHECK(rep.pass);
}

TEST_CASE("displacement bound on a nontrivial component") {
    const OpinionState before = state1d({0.0, 0.6, 1.2});
    const SimpleGraph prof = SimpleGraph::from_edges(3, {{0, 1}, {1, 2}});
    const Neighborhood nbhd = neighborhoods(prof);
    const StubbornnessDraw alpha = constant_alpha(3, 0.0);
    const OpinionState after = advance(before, alpha, nbhd);

    // Component diameter 1.2 > delta = 1, so the bound applies:
    // lhs = 0.18, rhs = 2 * 1 * 1 / 3^8.
    const DisplacementReport rep = check_displacement_bound(before, after, prof, alpha, 1.0);
    CHECK(rep.checked == 1);
    CHECK(rep.skipped == 0);
    CHECK(rep.pass);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].status == "pass");
    CHECK(rep.components[0].vertices == std::vector<int>{0, 1, 2});
    CHECK(rep.components[0].lhs == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(rep.components[0].rhs == doctest::Approx(2.0 / 6561.0).epsilon(1e-12));
}

TEST_CASE("delta-trivial components are skipped") {
    const OpinionState before = state1d({0.0, 0.6, 1.2});
    const SimpleGraph prof = SimpleGraph::from_edges(3, {{0, 1}, {1, 2}});
    const Neighborhood nbhd = neighborhoods(prof);
    const StubbornnessDraw alpha = constant_alpha(3, 0.0);
    const OpinionState after = advance(before, alpha, nbhd);

    const DisplacementReport rep = check_displacement_bound(before, after, prof, alpha, 2.0);
    CHECK(rep.checked == 0);
    CHECK(rep.skipped == 1);
    CHECK(rep.pass);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].status == "skipped: delta-trivial");
}

TEST_CASE("components containing a stubborn agent are skipped") {
    const OpinionState before = state1d({0.0, 0.6, 1.2});
    const SimpleGraph prof = SimpleGraph::from_edges(3, {{0, 1}, {1, 2}});
    const Neighborhood nbhd = neighborhoods(prof);
    StubbornnessDraw alpha = constant_alpha(3, 0.0);
    alpha.alphas[1] = 1.0;
    const OpinionState after = advance(before, alpha, nbhd);
    CHECK(after.at(1, 0) == 0.6);

    const DisplacementReport rep = check_displacement_bound(before, after, prof, alpha, 1.0);
    CHECK(rep.checked == 0);
    CHECK(rep.skipped == 1);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].status == "skipped: stubborn agent");
}

TEST_CASE("triviality takes precedence over stubbornness in skip reasons") {
    const OpinionState before = state1d({0.0, 0.05});
    const SimpleGraph prof = SimpleGraph::from_edges(2, {{0, 1}});
    StubbornnessDraw alpha = constant_alpha(2, 0.0);
    alpha.alphas[0] = 1.0;
    const DisplacementReport rep = check_displacement_bound(before, before, prof, alpha, 0.5);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].status == "skipped: delta-trivial");
}

TEST_CASE("each profile component is judged independently") {
    // A spread path plus a coincident far-away pair.
    const OpinionState before = state1d({0.0, 0.6, 1.2, 5.0, 5.0});
    const SimpleGraph prof = SimpleGraph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
    const Neighborhood nbhd = neighborhoods(prof);
    const StubbornnessDraw alpha = constant_alpha(5, 0.0);
    const OpinionState after = advance(before, alpha, nbhd);

    const DisplacementReport rep = check_displacement_bound(before, after, prof, alpha, 1.0);
    CHECK(rep.checked == 1);
    CHECK(rep.skipped == 1);
    CHECK(rep.pass);
    REQUIRE(rep.components.size() == 2);
    CHECK(rep.components[0].status == "pass");
    CHECK(rep.components[1].status == "skipped: delta-trivial");
}

TEST_CASE("a motionless nontrivial component fails the strict bound") {
    // Fabricated input: the checker must flag zero displacement on a
    // delta-nontrivial fully-averaging component even though the real
    // dynamics never produce it.
    const OpinionState frozen = state1d({0.0, 2.0});
    const SimpleGraph prof = SimpleGraph::from_edges(2, {{0, 1}});
    const StubbornnessDraw alpha = constant_alpha(2, 0.0);
    const DisplacementReport rep = check_displacement_bound(frozen, frozen, prof, alpha, 1.0);
    CHECK(rep.checked == 1);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].status == "fail");
    CHECK(rep.components[0].lhs == 0.0);
    CHECK(rep.components[0].rhs == doctest::Approx(2.0 / 256.0));
}

TEST_CASE("tau_delta finds the first all-trivial step") {
    Trace trace;
    trace.push_back(record({0.0, 0.5}, 0, 1.0, {{0, 1}}));
    trace.push_back(record({0.25, 0.25}, 1, 1.0, {{0, 1}}));
    const StoppingRecord rec = tau_delta(trace, 0.1);
    REQUIRE(rec.tau_delta.has_value());
    CHECK(*rec.tau_delta == 1);
    CHECK(rec.delta == 0.1);
    CHECK(rec.horizon == 1);
}

TEST_CASE("tau_delta is zero when the start is already trivial") {
    Trace trace;
    trace.push_back(record({0.3, 0.32}, 0, 1.0, {{0, 1}}));
    const StoppingRecord rec = tau_delta(trace, 0.1);
    REQUIRE(rec.tau_delta.has_value());
    CHECK(*rec.tau_delta == 0);
}

TEST_CASE("tau_delta is component-wise, not global") {
    // Two coincident clusters far apart: every component is trivial at t = 0
    // even though the global diameter is 9.
    Trace trace;
    trace.push_back(record({0.0, 0.0, 9.0, 9.0}, 0, 1.0, {{0, 1}, {2, 3}}));
    const StoppingRecord rec = tau_delta(trace, 0.1);
    REQUIRE(rec.tau_delta.has_value());
    CHECK(*rec.tau_delta == 0);
}

TEST_CASE("tau_delta reports unreached as empty") {
    Trace trace;
    trace.push_back(record({0.0, 5.0}, 0, 1.0, {{0, 1}}));
    const StoppingRecord rec = tau_delta(trace, 0.1);
    CHECK_FALSE(rec.tau_delta.has_value());
    CHECK(rec.horizon == 0);
}

TEST_CASE("tau_delta rejects an empty trace") {
    CHECK_THROWS_AS(tau_delta(Trace{}, 0.1), DomainError);
}

TEST_CASE("triviality preservation probe accepts a shrinking run") {
    Trace trace;
    trace.push_back(record({0.0, 0.3}, 0, 1.0, {{0, 1}}));
    trace.push_back(record({0.1, 0.2}, 1, 1.0, {{0, 1}}));
    trace.push_back(record({0.15, 0.15}, 2, 1.0, {{0, 1}}));
    RunSettings settings;
    settings.delta_grid = {0.5, 0.35};
    const PreservationReport rep = triviality_preservation_probe(trace, settings);
    CHECK(rep.pass);
    CHECK(rep.checked == 4);  // both deltas, both transitions
    CHECK(rep.counterexamples.empty());
}

TEST_CASE("triviality preservation probe reports the first expansion") {
    Trace trace;
    trace.push_back(record({0.0, 0.3}, 0, 1.0, {{0, 1}}));
    trace.push_back(record({0.0, 0.7}, 1, 1.0, {{0, 1}}));
    RunSettings settings;
    settings.delta_grid = {0.5};
    const PreservationReport rep = triviality_preservation_probe(trace, settings);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.counterexamples.size() == 1);
    CHECK(rep.counterexamples[0].delta == 0.5);
    CHECK(rep.counterexamples[0].t == 0);
    CHECK(rep.counterexamples[0].diameter_before == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(rep.counterexamples[0].diameter_after == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("preservation probe falls back to the run delta when the grid is empty") {
    Trace trace;
    trace.push_back(record({0.0, 0.05}, 0, 1.0, {{0, 1}}));
    trace.push_back(record({0.0, 0.05}, 1, 1.0, {{0, 1}}));
    RunSettings settings;
    settings.delta = 0.1;
    const PreservationReport rep = triviality_preservation_probe(trace, settings);
    CHECK(rep.checked == 1);
    CHECK(rep.pass);
}

TEST_CASE("energy monotonicity tolerates sub-slack noise only") {
    Trace trace(3);
    trace[0].opinions.t = 0;
    trace[0].energy = 2.0;
    trace[1].opinions.t = 1;
    trace[1].energy = 1.5;
    trace[2].opinions.t = 2;
    trace[2].energy = 1.5 + 1e-12;  // within the 1e-9 slack
    const MonotonicityReport ok = check_energy_monotonic(trace);
    CHECK(ok.pass);
    CHECK(ok.checked == 2);
    CHECK_FALSE(ok.first_violation.has_value());

    trace[2].energy = 1.7;
    const MonotonicityReport bad = check_energy_monotonic(trace);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.first_violation.has_value());
    CHECK(*bad.first_violation == 1);
    CHECK(bad.worst_increase == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("a full synchronous run keeps energy nonincreasing") {
    ModelConfig cfg;
    cfg.n = 6;
    cfg.d = 1;
    cfg.epsilon = 0.4;
    cfg.horizon = 60;
    cfg.seed = 11;
    const PresetBundle bundle = preset_sync_hk(cfg.n);
    cfg.mode = bundle.mode;
    cfg.stubbornness = bundle.stubbornness;
    cfg.schedule = bundle.schedule;
    cfg.social = bundle.social;
    cfg.init.kind = InitSpec::Kind::explicit_values;
    cfg.init.values = {{0.0}, {0.3}, {0.6}, {0.9}, {1.2}, {1.5}};
    REQUIRE(validate_config(cfg).empty());

    const RunResult res = run(cfg, RunSettings{});
    const MonotonicityReport rep = check_energy_monotonic(res.trace);
    CHECK(rep.pass);
    CHECK(rep.checked == 60);
}

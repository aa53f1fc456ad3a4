#include "mixhk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mixhk/config_io.hpp"
#include "mixhk/diagnostics.hpp"
#include "mixhk/dynamics.hpp"
#include "mixhk/graph_gen.hpp"
#include "mixhk/reference_models.hpp"
#include "mixhk/spectral.hpp"

namespace mixhk::verify {

using nlohmann::json;

void CheckStats::record(bool ok, double margin, const json& detail) {
    ++checked;
    if (margin < worst_margin) worst_margin = margin;
    if (!ok) {
        if (failed == 0) counterexample = detail;
        ++failed;
    }
}

json CheckStats::to_json() const {
    json j{{"checked", checked}, {"failed", failed}, {"skipped", skipped}, {"pass", pass()}};
    if (checked > 0) j["worst_margin"] = worst_margin;
    if (!counterexample.is_null()) j["counterexample"] = counterexample;
    return j;
}

bool monotone_energy_domain(const ModelConfig& cfg) {
    if (cfg.mode == InteractionMode::pair) return cfg.n <= 2;
    if (cfg.social.kind == SocialSpec::Kind::random_er) return false;
    const SimpleGraph complete = SimpleGraph::complete(cfg.n);
    for (const auto& g : cfg.social.graphs)
        if (!(g == complete)) return false;
    return true;
}

bool DynamicsSweepReport::pass() const {
    return monotonic.pass() && decrement.pass() && displacement.pass() && row_stochastic.pass() &&
           envelope.pass() && preservation.pass();
}

json DynamicsSweepReport::to_json() const {
    return json{{"monotonic", monotonic.to_json()},
                {"decrement", decrement.to_json()},
                {"displacement", displacement.to_json()},
                {"row_stochastic", row_stochastic.to_json()},
                {"envelope", envelope.to_json()},
                {"preservation", preservation.to_json()},
                {"outside_energy_domain",
                 json{{"gating", false},
                      {"monotonic", monotonic_outside.to_json()},
                      {"decrement", decrement_outside.to_json()}}},
                {"pass", pass()}};
}

namespace {

// One row-stochasticity + support audit of the mixing matrix built for this
// step. The fault switch perturbs a copy, never the live dynamics: the point
// is to prove the checker would catch a broken matrix.
void check_mixing(const StepArtifacts& art, const std::string& inject_fault, CheckStats& stats,
                  const json& tag) {
    MixingMatrix mix = mixing_matrix(*art.nbhd, *art.alpha);
    if (inject_fault == "mixing-row-sum" && mix.n > 0) mix.B[0] += 1e-3;

    const int n = mix.n;
    double worst = 0.0;
    int worst_row = -1;
    bool ok = true;
    json detail;
    for (int i = 0; i < n && ok; ++i) {
        double arow = 0.0, brow = 0.0;
        for (int j = 0; j < n; ++j) {
            const double aij = mix.a(i, j);
            const double bij = mix.b(i, j);
            arow += aij;
            brow += bij;
            if (aij < 0.0 || bij < 0.0) {
                ok = false;
                detail = {{"instance", tag}, {"t", art.t}, {"row", i + 1},
                          {"reason", "negative entry"}, {"value", std::min(aij, bij)}};
            }
            // A must be supported on the effective averaging set only.
            if (j != i && aij != 0.0) {
                const auto& nb = art.nbhd->neighbors[i];
                if (!std::binary_search(nb.begin(), nb.end(), j)) {
                    ok = false;
                    detail = {{"instance", tag}, {"t", art.t}, {"row", i + 1},
                              {"reason", "A entry outside profile"}, {"col", j + 1}};
                }
            }
        }
        const double dev = std::max(std::abs(arow - 1.0), std::abs(brow - 1.0));
        if (dev > worst) {
            worst = dev;
            worst_row = i;
        }
    }
    if (ok && worst > 1e-12) {
        ok = false;
        detail = {{"instance", tag},
                  {"t", art.t},
                  {"row", worst_row + 1},
                  {"reason", "row sum deviates from 1"},
                  {"row_sum_deviation", worst}};
    }
    stats.record(ok, 1e-12 - worst, detail);
}

}  // namespace

void verify_run(const ModelConfig& cfg, const RunSettings& settings, double delta,
                const std::string& inject_fault, bool enforce_energy,
                DynamicsSweepReport& report, const json& tag) {
    CheckStats& decrement_stats = enforce_energy ? report.decrement : report.decrement_outside;
    CheckStats& monotonic_stats = enforce_energy ? report.monotonic : report.monotonic_outside;

    StepObserver observer = [&](const StepArtifacts& art) {
        check_mixing(art, inject_fault, report.row_stochastic, tag);

        DecrementReport dec = check_decrement(*art.before, *art.after, *art.nbhd, *art.alpha,
                                              cfg.epsilon);
        decrement_stats.record(dec.pass, dec.margin,
                               json{{"instance", tag}, {"t", art.t}, {"lhs", dec.lhs},
                                    {"rhs", dec.rhs}});

        DisplacementReport disp = check_displacement_bound(*art.before, *art.after, *art.prof,
                                                           *art.alpha, delta);
        report.displacement.skipped += disp.skipped;
        for (const auto& comp : disp.components) {
            if (comp.status == "pass" || comp.status == "fail") {
                report.displacement.record(comp.status == "pass", comp.lhs - comp.rhs,
                                           json{{"instance", tag}, {"t", art.t},
                                                {"component", comp.vertices}, {"lhs", comp.lhs},
                                                {"rhs", comp.rhs}});
            }
        }
    };

    RunResult result = run(cfg, settings, observer);

    MonotonicityReport mono = check_energy_monotonic(result.trace);
    json mono_detail;
    if (!mono.pass)
        mono_detail = {{"instance", tag}, {"first_violation_t", *mono.first_violation},
                       {"worst_increase", mono.worst_increase}};
    monotonic_stats.record(mono.pass, 1e-9 - mono.worst_increase, mono_detail);

    const OpinionState& x0 = result.trace.front().opinions;
    for (const TraceRecord& rec : result.trace) {
        const bool ok = envelope_check(x0, rec.opinions);
        report.envelope.record(ok, ok ? 0.0 : -1.0,
                               ok ? json{} : json{{"instance", tag}, {"t", rec.t()}});
    }

    RunSettings probe = settings;
    if (probe.delta_grid.empty()) probe.delta_grid = {delta, cfg.epsilon};
    PreservationReport pres = triviality_preservation_probe(result.trace, probe);
    json pres_detail;
    if (!pres.pass)
        pres_detail = {{"instance", tag},
                       {"delta", pres.counterexamples.front().delta},
                       {"t", pres.counterexamples.front().t},
                       {"diameter_after", pres.counterexamples.front().diameter_after}};
    report.preservation.checked += pres.checked;
    if (!pres.pass) {
        if (report.preservation.failed == 0) report.preservation.counterexample = pres_detail;
        report.preservation.failed += static_cast<long>(pres.counterexamples.size());
    }
}

namespace {

ScheduleSpec random_group_schedule(int n, Rng& rng) {
    ScheduleSpec spec;
    spec.mode = InteractionMode::group;
    const int atoms = 1 + static_cast<int>(rng.index(3));
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (int a = 0; a < atoms; ++a) {
        ScheduleAtom atom;
        for (int v = 0; v < n; ++v)
            if (rng.bernoulli(0.6)) atom.agents.push_back(v);
        if (atom.agents.empty()) atom.agents.push_back(static_cast<int>(rng.index(n)));
        for (int v : atom.agents) covered[static_cast<std::size_t>(v)] = true;
        spec.support.push_back(std::move(atom));
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
        ScheduleAtom full;
        full.agents.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) full.agents[static_cast<std::size_t>(v)] = v;
        spec.support.push_back(std::move(full));
    }
    const double p = 1.0 / static_cast<double>(spec.support.size());
    for (auto& atom : spec.support) atom.probability = p;
    return spec;
}

ScheduleSpec random_pair_schedule(const SimpleGraph& social, Rng& rng) {
    ScheduleSpec spec;
    spec.mode = InteractionMode::pair;
    for (const Edge& e : social.edges) {
        ScheduleAtom atom;
        atom.matching = {e};
        spec.support.push_back(std::move(atom));
    }
    // Occasionally add one greedy maximal matching as a heavier atom.
    if (rng.bernoulli(0.5)) {
        std::vector<bool> used(static_cast<std::size_t>(social.n), false);
        ScheduleAtom atom;
        for (const Edge& e : social.edges) {
            if (used[static_cast<std::size_t>(e.first)] || used[static_cast<std::size_t>(e.second)])
                continue;
            used[static_cast<std::size_t>(e.first)] = true;
            used[static_cast<std::size_t>(e.second)] = true;
            atom.matching.push_back(e);
        }
        spec.support.push_back(std::move(atom));
    }
    const double p = 1.0 / static_cast<double>(spec.support.size());
    for (auto& atom : spec.support) atom.probability = p;
    return spec;
}

StubbornnessSpec random_stubbornness(int n, double gamma_max, Rng& rng) {
    StubbornnessSpec spec;
    switch (rng.index(4)) {
        case 0:
            spec.kind = StubbornnessSpec::Kind::constant;
            spec.value = rng.uniform(0.0, gamma_max);
            break;
        case 1:
            spec.kind = StubbornnessSpec::Kind::uniform_interval;
            spec.lo = 0.0;
            spec.hi = gamma_max * rng.uniform(0.5, 1.0);
            break;
        case 2:
            spec.kind = StubbornnessSpec::Kind::two_point;
            spec.a = rng.uniform(0.0, 0.5);
            spec.b = 1.0;  // exercises the stubborn-agent skip path
            spec.prob_a = 0.7;
            break;
        default:
            spec.kind = StubbornnessSpec::Kind::per_agent_table;
            spec.table.resize(static_cast<std::size_t>(n));
            for (double& v : spec.table) v = rng.uniform(0.0, gamma_max);
            break;
    }
    spec.gamma_max = gamma_max;
    return spec;
}

/// in_domain = true restricts to the monotone-energy regime: group mode on a
/// complete social graph, or a two-agent pair instance.
ModelConfig random_instance(const DynamicsSweepSettings& s, std::uint64_t instance_seed, Rng& meta,
                            bool in_domain) {
    ModelConfig cfg;
    cfg.n = 2 + static_cast<int>(meta.index(static_cast<std::size_t>(s.max_n - 1)));
    cfg.d = 1 + static_cast<int>(meta.index(static_cast<std::size_t>(s.max_d)));
    cfg.epsilon = meta.uniform(0.2, 1.5);
    cfg.horizon = s.steps;
    cfg.seed = instance_seed;
    cfg.mode = meta.bernoulli(in_domain ? 0.25 : 0.5) ? InteractionMode::pair
                                                      : InteractionMode::group;

    cfg.social.kind = SocialSpec::Kind::static_graph;
    cfg.social.n = cfg.n;
    if (in_domain) {
        if (cfg.mode == InteractionMode::pair) {
            cfg.n = 2;
            cfg.social.n = 2;
            cfg.social.graphs = {SimpleGraph::complete(2)};
            ScheduleAtom atom;
            atom.matching = {{0, 1}};
            atom.probability = 1.0;
            cfg.schedule.mode = InteractionMode::pair;
            cfg.schedule.support = {atom};
        } else {
            cfg.social.graphs = {SimpleGraph::complete(cfg.n)};
            cfg.schedule = random_group_schedule(cfg.n, meta);
        }
    } else {
        SimpleGraph g0 = random_connected_graph(cfg.n, 0.3, meta);
        cfg.social.graphs = {g0};
        if (cfg.mode == InteractionMode::group && meta.bernoulli(0.3)) {
            cfg.social.kind = SocialSpec::Kind::sequence;
            cfg.social.graphs.push_back(random_connected_graph(cfg.n, 0.3, meta));
        }
        cfg.schedule = cfg.mode == InteractionMode::group ? random_group_schedule(cfg.n, meta)
                                                          : random_pair_schedule(g0, meta);
    }
    cfg.stubbornness = random_stubbornness(cfg.n, s.gamma_max, meta);

    cfg.init.kind = InitSpec::Kind::uniform_box;
    const double spread = meta.uniform(0.3, 1.5);
    cfg.init.lo.assign(static_cast<std::size_t>(cfg.d), -spread);
    cfg.init.hi.assign(static_cast<std::size_t>(cfg.d), spread);
    return cfg;
}

}  // namespace

DynamicsSweepReport run_dynamics_sweep(const DynamicsSweepSettings& settings) {
    DynamicsSweepReport report;
    Rng meta(mix64(settings.seed));
    const int general =
        static_cast<int>(settings.general_fraction * static_cast<double>(settings.instances));
    for (int k = 0; k < settings.instances; ++k) {
        const std::uint64_t instance_seed = settings.seed * 1000003ULL + static_cast<std::uint64_t>(k);
        const bool in_domain = k >= general;
        ModelConfig cfg = random_instance(settings, instance_seed, meta, in_domain);
        if (auto violations = validate_config(cfg); !violations.empty()) {
            // A generator bug, not a model property: surface it as a failure.
            report.row_stochastic.record(false, -1.0,
                                         json{{"instance", k}, {"reason", "invalid generated config"},
                                              {"violations", violations}});
            continue;
        }
        RunSettings rs;
        const double delta = meta.uniform(0.02, 0.3);
        verify_run(cfg, rs, delta, settings.inject_fault, monotone_energy_domain(cfg), report,
                   json{{"sweep_index", k},
                        {"seed", instance_seed},
                        {"delta", delta},
                        {"config", effective_config(cfg, rs)}});
    }
    return report;
}

json ReductionReport::to_json() const {
    return json{{"worst_deffuant", worst_deffuant}, {"worst_sync", worst_sync},
                {"worst_async", worst_async}, {"tolerance", tolerance}, {"pass", pass()}};
}

namespace {

ModelConfig preset_config(const PresetBundle& bundle, int n, int d, double epsilon, long horizon,
                          std::uint64_t seed) {
    ModelConfig cfg;
    cfg.epsilon = epsilon;
    cfg.mode = bundle.mode;
    cfg.n = n;
    cfg.d = d;
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.stubbornness = bundle.stubbornness;
    cfg.schedule = bundle.schedule;
    cfg.social = bundle.social;
    cfg.init.kind = InitSpec::Kind::uniform_box;
    cfg.init.lo.assign(static_cast<std::size_t>(d), 0.0);
    cfg.init.hi.assign(static_cast<std::size_t>(d), 1.0);
    return cfg;
}

double state_distance(const OpinionState& a, const OpinionState& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
    return worst;
}

}  // namespace

double reduction_gap_deffuant(const SimpleGraph& host, double mu, double epsilon, long steps,
                              std::uint64_t seed) {
    ModelConfig cfg = preset_config(preset_deffuant(host, mu), host.n, 1, epsilon, steps, seed);
    double worst = 0.0;
    OpinionState oracle;
    run(cfg, RunSettings{}, [&](const StepArtifacts& art) {
        if (art.t == 0) oracle = *art.before;
        oracle = deffuant_reference_step(oracle, art.draw->matching.at(0), mu, epsilon);
        worst = std::max(worst, state_distance(oracle, *art.after));
    });
    return worst;
}

double reduction_gap_sync(int n, int d, double epsilon, long steps, std::uint64_t seed) {
    ModelConfig cfg = preset_config(preset_sync_hk(n), n, d, epsilon, steps, seed);
    double worst = 0.0;
    OpinionState oracle;
    run(cfg, RunSettings{}, [&](const StepArtifacts& art) {
        if (art.t == 0) oracle = *art.before;
        oracle = sync_hk_reference_step(oracle, epsilon);
        worst = std::max(worst, state_distance(oracle, *art.after));
    });
    return worst;
}

double reduction_gap_async(int n, double epsilon, long steps, std::uint64_t seed) {
    ModelConfig cfg = preset_config(preset_async_hk(n), n, 1, epsilon, steps, seed);
    double worst = 0.0;
    OpinionState oracle;
    run(cfg, RunSettings{}, [&](const StepArtifacts& art) {
        if (art.t == 0) oracle = *art.before;
        oracle = async_hk_reference_step(oracle, art.draw->agents.at(0), epsilon);
        worst = std::max(worst, state_distance(oracle, *art.after));
    });
    return worst;
}

ReductionReport run_reduction_checks(const ReductionSettings& settings) {
    ReductionReport report;
    report.tolerance = settings.tolerance;
    for (int s = 0; s < settings.seeds; ++s) {
        const std::uint64_t seed = settings.seed + static_cast<std::uint64_t>(s);
        for (double mu : {0.1, 0.25, 0.5}) {
            report.worst_deffuant =
                std::max(report.worst_deffuant,
                         reduction_gap_deffuant(path_graph(10), mu, 0.4, settings.deffuant_steps, seed));
            report.worst_deffuant =
                std::max(report.worst_deffuant, reduction_gap_deffuant(SimpleGraph::complete(10), mu,
                                                                       0.4, settings.deffuant_steps, seed));
        }
        report.worst_sync = std::max(report.worst_sync,
                                     reduction_gap_sync(10, 1, 0.3, settings.sync_steps, seed));
        report.worst_sync = std::max(report.worst_sync,
                                     reduction_gap_sync(10, 2, 0.3, settings.sync_steps, seed));
        report.worst_async = std::max(report.worst_async,
                                      reduction_gap_async(10, 0.3, settings.async_steps, seed));
    }
    return report;
}

json SpectralSweepReport::to_json() const {
    return json{{"cheeger_sandwich", sandwich.to_json()}, {"perron_frobenius", perron.to_json()},
                {"lambda2_qq", lambda2qq.to_json()}, {"pass", pass()}};
}

SpectralSweepReport run_spectral_sweep(const SpectralSweepSettings& settings) {
    SpectralSweepReport report;
    Rng rng(mix64(settings.seed));

    std::vector<SimpleGraph> graphs = {path_graph(3), SimpleGraph::complete(2),
                                       SimpleGraph::complete(3), cycle_graph(4)};
    for (int k = 0; k < settings.graphs; ++k) {
        const int n = 2 + static_cast<int>(rng.index(static_cast<std::size_t>(settings.max_n - 1)));
        graphs.push_back(random_connected_graph(n, 0.4, rng));
    }

    for (std::size_t g = 0; g < graphs.size(); ++g) {
        const SimpleGraph& graph = graphs[g];
        const json tag{{"graph_index", g}, {"n", graph.n}};

        CheegerSandwichReport cs = check_cheeger_sandwich(graph);
        report.sandwich.record(cs.pass,
                               std::min(2.0 * cs.cheeger + 1e-9 - cs.lambda2,
                                        cs.lambda2 - cs.cheeger * cs.cheeger /
                                                         (2.0 * cs.max_degree) + 1e-9),
                               json{{"instance", tag}, {"cheeger", cs.cheeger},
                                    {"lambda2", cs.lambda2}});

        SymmetricMatrix lap = laplacian(graph);
        for (int p = 0; p <= settings.perturbations; ++p) {
            SymmetricMatrix m = lap;
            if (p > 0)
                for (int i = 0; i < m.n; ++i) m.set(i, i, m(i, i) + rng.uniform(-0.5, 0.5));
            PerronReport pr = check_perron_frobenius(m, graph);
            report.perron.record(pr.pass, std::min(pr.gap - 1e-9, pr.min_entry - 1e-12),
                                 json{{"instance", tag}, {"perturbation", p}, {"gap", pr.gap},
                                      {"min_entry", pr.min_entry}});
        }

        StubbornnessDraw alpha;
        alpha.alphas.resize(static_cast<std::size_t>(graph.n));
        for (double& a : alpha.alphas) a = rng.uniform(0.0, 0.9);
        Lambda2QQReport qq = check_lambda2_QQ(graph, alpha);
        report.lambda2qq.record(qq.pass, qq.lambda2_qq - qq.lower_bound + 1e-9,
                                json{{"instance", tag}, {"lambda2_qq", qq.lambda2_qq},
                                     {"lower_bound", qq.lower_bound}});
    }
    return report;
}

}  // namespace mixhk::verify

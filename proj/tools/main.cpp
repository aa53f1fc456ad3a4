// mixhk — simulation and verification CLI for the mixed bounded-confidence
// opinion model. Subcommands: run, batch, verify, spectra. Exit codes:
// 0 success, 1 configuration error, 2 numerical error, 3 verification failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixhk/config_io.hpp"
#include "mixhk/diagnostics.hpp"
#include "mixhk/dynamics.hpp"
#include "mixhk/errors.hpp"
#include "mixhk/graph_gen.hpp"
#include "mixhk/spectral.hpp"
#include "mixhk/trace.hpp"
#include "mixhk/verify.hpp"

namespace {

using nlohmann::json;
using namespace mixhk;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerify = 3;

struct CommonOpts {
    std::string config_path;
    std::string preset;      // sync_hk | async_hk | deffuant
    double mu = 0.25;        // deffuant preset parameter
    std::optional<std::uint64_t> seed;
    std::optional<long> steps;
    std::optional<double> delta;
    std::string out;
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON configuration document");
    cmd->add_option("--preset", o.preset, "sync_hk, async_hk or deffuant (overrides file sections)");
    cmd->add_option("--mu", o.mu, "deffuant preset rate, in [0, 1/2]");
    cmd->add_option("--seed", o.seed, "override the run seed");
    cmd->add_option("--steps", o.steps, "override the horizon");
    cmd->add_option("--delta", o.delta, "override the triviality threshold");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_flag("--timings", o.timings, "include wall-clock durations in summaries");
}

/// File + flag merge. Flags override file values; a flag preset replaces the
/// stochastic sections wholesale. `--steps 0` is allowed for run (single
/// record of the initial state), so that one violation is waived here and
/// handled by the run loop.
LoadedConfig assemble(const CommonOpts& o) {
    LoadedConfig lc;
    if (!o.config_path.empty()) {
        lc = load_config_file(o.config_path);
    } else if (!o.preset.empty()) {
        lc.cfg.n = 10;
        lc.cfg.d = 1;
        lc.cfg.epsilon = 0.3;
        lc.cfg.horizon = 100;
        lc.cfg.init.kind = InitSpec::Kind::uniform_box;
        lc.cfg.init.lo = {0.0};
        lc.cfg.init.hi = {1.0};
    } else {
        throw ConfigError({"need --config or --preset"});
    }

    if (!o.preset.empty()) {
        PresetBundle bundle;
        if (o.preset == "sync_hk")
            bundle = preset_sync_hk(lc.cfg.n);
        else if (o.preset == "async_hk")
            bundle = preset_async_hk(lc.cfg.n);
        else if (o.preset == "deffuant")
            bundle = preset_deffuant(SimpleGraph::complete(lc.cfg.n), o.mu);
        else
            throw ConfigError({"unknown preset \"" + o.preset + "\""});
        lc.cfg.mode = bundle.mode;
        lc.cfg.stubbornness = bundle.stubbornness;
        lc.cfg.schedule = bundle.schedule;
        lc.cfg.social = bundle.social;
    }

    if (o.seed) lc.cfg.seed = *o.seed;
    if (o.steps) lc.cfg.horizon = *o.steps;
    if (o.delta) lc.settings.delta = *o.delta;

    auto violations = validate_config(lc.cfg);
    if (o.steps && *o.steps == 0)
        std::erase(violations, std::string("horizon must be at least 1"));
    if (!violations.empty()) throw ConfigError(std::move(violations));
    return lc;
}

std::string hypothesis_flag(const ModelConfig& cfg) {
    if (cfg.stubbornness.gamma_max) return "gamma_max=" + format_double(*cfg.stubbornness.gamma_max);
    return "none";
}

json run_summary(const ModelConfig& cfg, const RunSettings& settings, const RunResult& result) {
    const StoppingRecord stopping = tau_delta(result.trace, settings.delta);
    json s;
    s["seed"] = cfg.seed;
    s["steps_executed"] = result.steps_executed;
    s["stop_reason"] = result.stop_reason;
    s["final_energy"] = result.trace.back().energy;
    s["final_diameter"] = consensus_diameter(result.trace.back().opinions);
    s["delta"] = settings.delta;
    s["tau_delta"] = stopping.tau_delta ? json(*stopping.tau_delta) : json();
    s["hypothesis"] = hypothesis_flag(cfg);
    s["effective_config"] = effective_config(cfg, settings);
    return s;
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError({"cannot open output file: " + path});
    out << doc.dump(2) << "\n";
}

std::string summary_path(const std::string& out) {
    std::filesystem::path p(out);
    p.replace_extension();
    return p.string() + ".summary.json";
}

int cmd_run(const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    LoadedConfig lc = assemble(o);
    if (o.steps && *o.steps == 0) lc.cfg.horizon = 0;

    RunResult result = run(lc.cfg, lc.settings);

    const std::string out = o.out.empty() ? "trace.jsonl" : o.out;
    {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw ConfigError({"cannot open output file: " + out});
        write_trace(os, result.trace);
    }
    json summary = run_summary(lc.cfg, lc.settings, result);
    if (o.timings)
        summary["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_json_file(summary_path(out), summary);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_batch(const CommonOpts& o, int replicates, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    LoadedConfig lc = assemble(o);
    if (replicates < 1) throw ConfigError({"replicates must be at least 1"});

    const int workers = std::max(1, std::min(replicates, threads));
    std::vector<json> summaries(static_cast<std::size_t>(replicates));
    std::vector<std::optional<long>> taus(static_cast<std::size_t>(replicates));

    auto body = [&](int first) {
        // Static partition: replicate r belongs to worker r mod workers, so
        // the result set is a pure function of the config, never of timing.
        for (int r = first; r < replicates; r += workers) {
            ModelConfig cfg = lc.cfg;
            cfg.seed = lc.cfg.seed + static_cast<std::uint64_t>(r);
            RunResult result = run(cfg, lc.settings);
            const StoppingRecord stopping = tau_delta(result.trace, lc.settings.delta);
            taus[static_cast<std::size_t>(r)] = stopping.tau_delta;
            summaries[static_cast<std::size_t>(r)] = run_summary(cfg, lc.settings, result);
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& th : pool) th.join();
    }

    std::vector<long> reached;
    for (const auto& tau : taus)
        if (tau) reached.push_back(*tau);
    std::sort(reached.begin(), reached.end());

    json histogram = json::array();
    for (std::size_t i = 0; i < reached.size();) {
        std::size_t j = i;
        while (j < reached.size() && reached[j] == reached[i]) ++j;
        histogram.push_back({{"tau", reached[i]}, {"count", j - i}});
        i = j;
    }

    json batch;
    batch["replicates"] = replicates;
    batch["base_seed"] = lc.cfg.seed;
    batch["tau_histogram"] = histogram;
    batch["not_reached"] = replicates - static_cast<int>(reached.size());
    batch["fraction_reached"] =
        static_cast<double>(reached.size()) / static_cast<double>(replicates);
    batch["hypothesis"] = hypothesis_flag(lc.cfg);
    batch["runs"] = summaries;
    batch["effective_config"] = effective_config(lc.cfg, lc.settings);
    if (o.timings)
        batch["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string out = o.out.empty() ? "batch.json" : o.out;
    write_json_file(out, batch);
    std::cout << "replicates " << replicates << ", fraction_reached "
              << batch["fraction_reached"].dump() << ", written to " << out << "\n";
    return kExitOk;
}

int cmd_verify(const CommonOpts& o, int instances, long sweep_steps, const std::string& fault) {
    LoadedConfig lc = assemble(o);

    verify::DynamicsSweepReport own;
    verify::verify_run(lc.cfg, lc.settings, lc.settings.delta, fault,
                       verify::monotone_energy_domain(lc.cfg), own, json{{"source", "config"}});

    verify::DynamicsSweepSettings sweep;
    sweep.instances = instances;
    sweep.steps = sweep_steps;
    sweep.seed = lc.cfg.seed + 1;
    sweep.inject_fault = fault;
    verify::DynamicsSweepReport random_sweep = verify::run_dynamics_sweep(sweep);

    verify::ReductionReport reductions = verify::run_reduction_checks(verify::ReductionSettings{});
    verify::SpectralSweepReport spectral = verify::run_spectral_sweep(verify::SpectralSweepSettings{});

    const bool pass =
        own.pass() && random_sweep.pass() && reductions.pass() && spectral.pass();
    json report{{"config_run", own.to_json()},
                {"random_sweep", random_sweep.to_json()},
                {"reductions", reductions.to_json()},
                {"spectral", spectral.to_json()},
                {"pass", pass}};
    if (!fault.empty()) report["injected_fault"] = fault;

    if (!o.out.empty()) write_json_file(o.out, report);
    std::cout << report.dump(2) << "\n";
    return pass ? kExitOk : kExitVerify;
}

SimpleGraph parse_graph_argument(const std::string& arg) {
    json doc;
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        doc = json::parse(arg);
    } else {
        std::ifstream in(arg);
        if (!in) throw ConfigError({"cannot open graph file: " + arg});
        doc = json::parse(in);
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
        throw ConfigError({"graph document must be {\"n\": ..., \"edges\": [[i,j], ...]}"});
    const int n = doc.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw ConfigError({"edges must be two-element arrays"});
        edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
    }
    return SimpleGraph::from_edges(n, edges);
}

int cmd_spectra(const std::string& graph_arg, const std::string& out) {
    const SimpleGraph g = parse_graph_argument(graph_arg);

    json doc;
    doc["n"] = g.n;
    doc["edges"] = graph_to_json(g);
    doc["max_degree"] = g.max_degree();

    const Spectrum spec = eigendecompose(laplacian(g));
    doc["eigenvalues"] = spec.eigenvalues;

    const CheegerResult ch = cheeger_constant(g);
    json witness = json::array();
    for (int v : ch.witness) witness.push_back(v + 1);
    doc["cheeger"] = {{"value", ch.value()},
                      {"numerator", ch.numerator},
                      {"denominator", ch.denominator},
                      {"witness", witness}};

    if (!is_connected(g)) {
        doc["sandwich"] = {{"verdict", "skipped: disconnected"}};
    } else {
        const CheegerSandwichReport sw = check_cheeger_sandwich(g);
        doc["sandwich"] = {{"verdict", sw.pass ? "pass" : "fail"},
                           {"lambda2", sw.lambda2},
                           {"upper", sw.upper},
                           {"lower", sw.lower}};
    }

    if (!out.empty()) write_json_file(out, doc);
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed bounded-confidence opinion dynamics: simulator and verifier"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "execute one trajectory, write trace + summary");
    add_common(run_cmd, run_opts);

    CommonOpts batch_opts;
    int replicates = 1;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    CLI::App* batch_cmd = app.add_subcommand("batch", "replicated runs with a tau_delta histogram");
    add_common(batch_cmd, batch_opts);
    batch_cmd->add_option("--replicates", replicates, "number of replicates (seeds seed+0..)");
    batch_cmd->add_option("--threads", threads, "worker threads (output is independent of this)");

    CommonOpts verify_opts;
    int instances = 100;
    long sweep_steps = 30;
    std::string fault;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the full inequality check suite");
    add_common(verify_cmd, verify_opts);
    verify_cmd->add_option("--instances", instances, "random sweep instances");
    verify_cmd->add_option("--sweep-steps", sweep_steps, "steps per sweep instance");
    verify_cmd->add_option("--inject-fault", fault,
                           "negative control: mutate checker input (mixing-row-sum)");

    std::string graph_arg, spectra_out;
    CLI::App* spectra_cmd = app.add_subcommand("spectra", "Laplacian spectrum + Cheeger data");
    spectra_cmd->add_option("graph", graph_arg, "graph JSON literal or file path")->required();
    spectra_cmd->add_option("--out", spectra_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_opts);
        if (batch_cmd->parsed()) return cmd_batch(batch_opts, replicates, threads);
        if (verify_cmd->parsed()) return cmd_verify(verify_opts, instances, sweep_steps, fault);
        if (spectra_cmd->parsed()) return cmd_spectra(graph_arg, spectra_out);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << " (residual " << e.residual << ")\n";
        return kExitNumerical;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ShapeError& e) {
        std::cerr << "shape error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidScheduleError& e) {
        std::cerr << "invalid schedule: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

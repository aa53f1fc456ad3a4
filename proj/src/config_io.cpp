#include "mixhk/config_io.hpp"

#include <fstream>
#include <set>

#include "mixhk/errors.hpp"
#include "mixhk/graph_gen.hpp"

namespace mixhk {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                std::vector<std::string>& errs) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) errs.push_back(where + ": unknown key \"" + key + "\"");
    }
}

SimpleGraph graph_from_json(const json& arr, int n, const std::string& where,
                            std::vector<std::string>& errs) {
    SimpleGraph g(n);
    if (!arr.is_array()) {
        errs.push_back(where + ": graph literal must be an array of [i,j] pairs");
        return g;
    }
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
            errs.push_back(where + ": edges must be two-element integer arrays");
            return g;
        }
        const int i = e[0].get<int>() - 1;  // files are 1-based
        const int j = e[1].get<int>() - 1;
        try {
            g.add_edge(i, j);
        } catch (const DomainError& ex) {
            errs.push_back(where + ": " + ex.what());
            return g;
        }
    }
    return g;
}

InteractionMode mode_from_string(const std::string& s, const std::string& where,
                                 std::vector<std::string>& errs) {
    if (s == "group") return InteractionMode::group;
    if (s == "pair") return InteractionMode::pair;
    errs.push_back(where + ": mode must be \"group\" or \"pair\"");
    return InteractionMode::group;
}

StubbornnessSpec parse_stubbornness(const json& obj, std::vector<std::string>& errs) {
    StubbornnessSpec spec;
    check_keys(obj, {"kind", "value", "lo", "hi", "a", "b", "prob_a", "table", "gamma_max"},
               "stubbornness", errs);
    const std::string kind = obj.value("kind", "constant");
    if (kind == "constant") {
        spec.kind = StubbornnessSpec::Kind::constant;
        spec.value = obj.value("value", 0.0);
    } else if (kind == "uniform_interval") {
        spec.kind = StubbornnessSpec::Kind::uniform_interval;
        spec.lo = obj.value("lo", 0.0);
        spec.hi = obj.value("hi", 0.0);
    } else if (kind == "two_point") {
        spec.kind = StubbornnessSpec::Kind::two_point;
        spec.a = obj.value("a", 0.0);
        spec.b = obj.value("b", 0.0);
        spec.prob_a = obj.value("prob_a", 0.5);
    } else if (kind == "per_agent_table") {
        spec.kind = StubbornnessSpec::Kind::per_agent_table;
        if (obj.contains("table")) spec.table = obj.at("table").get<std::vector<double>>();
    } else {
        errs.push_back("stubbornness: unknown kind \"" + kind + "\"");
    }
    if (obj.contains("gamma_max")) spec.gamma_max = obj.at("gamma_max").get<double>();
    return spec;
}

ScheduleSpec parse_schedule(const json& obj, int n, std::vector<std::string>& errs) {
    ScheduleSpec spec;
    check_keys(obj, {"mode", "support"}, "schedule", errs);
    if (!obj.contains("mode")) {
        errs.push_back("schedule: missing \"mode\"");
        return spec;
    }
    spec.mode = mode_from_string(obj.at("mode").get<std::string>(), "schedule", errs);
    if (!obj.contains("support") || !obj.at("support").is_array()) {
        errs.push_back("schedule: missing \"support\" array");
        return spec;
    }
    for (const auto& elem : obj.at("support")) {
        ScheduleAtom atom;
        check_keys(elem, {"agents", "matching", "prob"}, "schedule.support", errs);
        atom.probability = elem.value("prob", 0.0);
        if (spec.mode == InteractionMode::group) {
            if (!elem.contains("agents")) {
                errs.push_back("schedule.support: group atoms need \"agents\"");
                continue;
            }
            for (int a : elem.at("agents").get<std::vector<int>>()) atom.agents.push_back(a - 1);
            std::sort(atom.agents.begin(), atom.agents.end());
        } else {
            if (!elem.contains("matching")) {
                errs.push_back("schedule.support: pair atoms need \"matching\"");
                continue;
            }
            const SimpleGraph m =
                graph_from_json(elem.at("matching"), n, "schedule.support", errs);
            atom.matching = m.edges;
        }
        spec.support.push_back(std::move(atom));
    }
    return spec;
}

SocialSpec parse_social(const json& obj, int n, std::vector<std::string>& errs) {
    SocialSpec spec;
    spec.n = n;
    check_keys(obj, {"kind", "graph", "graphs", "complete", "p"}, "social", errs);
    const std::string kind = obj.value("kind", "static");
    if (kind == "static") {
        spec.kind = SocialSpec::Kind::static_graph;
        if (obj.value("complete", false)) {
            spec.graphs.push_back(SimpleGraph::complete(n));
        } else if (obj.contains("graph")) {
            spec.graphs.push_back(graph_from_json(obj.at("graph"), n, "social", errs));
        } else {
            errs.push_back("social: static spec needs \"graph\" or \"complete\": true");
        }
    } else if (kind == "sequence") {
        spec.kind = SocialSpec::Kind::sequence;
        if (!obj.contains("graphs") || !obj.at("graphs").is_array() || obj.at("graphs").empty()) {
            errs.push_back("social: sequence spec needs a non-empty \"graphs\" array");
        } else {
            for (const auto& g : obj.at("graphs"))
                spec.graphs.push_back(graph_from_json(g, n, "social", errs));
        }
    } else if (kind == "random_er") {
        spec.kind = SocialSpec::Kind::random_er;
        spec.er_p = obj.value("p", 0.0);
    } else {
        errs.push_back("social: unknown kind \"" + kind + "\"");
    }
    return spec;
}

std::vector<double> broadcast(const json& v, int d, const std::string& where,
                              std::vector<std::string>& errs) {
    if (v.is_number()) return std::vector<double>(d, v.get<double>());
    if (v.is_array()) {
        auto out = v.get<std::vector<double>>();
        if (static_cast<int>(out.size()) != d)
            errs.push_back(where + ": expected " + std::to_string(d) + " coordinates");
        return out;
    }
    errs.push_back(where + ": expected a number or an array");
    return std::vector<double>(d, 0.0);
}

InitSpec parse_init(const json& obj, int d, std::vector<std::string>& errs) {
    InitSpec init;
    check_keys(obj, {"kind", "values", "lo", "hi", "center", "radius"}, "init", errs);
    const std::string kind = obj.value("kind", "uniform_box");
    if (kind == "explicit") {
        init.kind = InitSpec::Kind::explicit_values;
        if (obj.contains("values"))
            init.values = obj.at("values").get<std::vector<std::vector<double>>>();
        else
            errs.push_back("init: explicit spec needs \"values\"");
    } else if (kind == "uniform_box") {
        init.kind = InitSpec::Kind::uniform_box;
        init.lo = obj.contains("lo") ? broadcast(obj.at("lo"), d, "init.lo", errs)
                                     : std::vector<double>(d, 0.0);
        init.hi = obj.contains("hi") ? broadcast(obj.at("hi"), d, "init.hi", errs)
                                     : std::vector<double>(d, 1.0);
    } else if (kind == "uniform_ball") {
        init.kind = InitSpec::Kind::uniform_ball;
        if (obj.contains("center")) init.center = broadcast(obj.at("center"), d, "init.center", errs);
        init.radius = obj.value("radius", 0.0);
    } else {
        errs.push_back("init: unknown kind \"" + kind + "\"");
    }
    return init;
}

RunSettings parse_diagnostics(const json& obj, std::vector<std::string>& errs) {
    RunSettings settings;
    check_keys(obj, {"delta", "stop", "diameter_tol", "delta_grid"}, "diagnostics", errs);
    settings.delta = obj.value("delta", 1e-3);
    if (settings.delta <= 0.0) errs.push_back("diagnostics: delta must be positive");
    const std::string stop = obj.value("stop", "none");
    if (stop == "none")
        settings.stop = StopRule::none;
    else if (stop == "delta_trivial")
        settings.stop = StopRule::delta_trivial;
    else if (stop == "diameter")
        settings.stop = StopRule::diameter;
    else
        errs.push_back("diagnostics: unknown stop rule \"" + stop + "\"");
    settings.diameter_tol = obj.value("diameter_tol", 1e-6);
    if (obj.contains("delta_grid"))
        settings.delta_grid = obj.at("delta_grid").get<std::vector<double>>();
    return settings;
}

void apply_preset(const json& obj, ModelConfig& cfg, std::vector<std::string>& errs) {
    check_keys(obj, {"name", "mu", "host"}, "preset", errs);
    const std::string name = obj.value("name", "");
    try {
        PresetBundle bundle;
        if (name == "sync_hk") {
            bundle = preset_sync_hk(cfg.n);
        } else if (name == "async_hk") {
            bundle = preset_async_hk(cfg.n);
        } else if (name == "deffuant") {
            if (!obj.contains("mu")) {
                errs.push_back("preset: deffuant needs \"mu\"");
                return;
            }
            SimpleGraph host;
            if (obj.contains("host") && obj.at("host").is_array())
                host = graph_from_json(obj.at("host"), cfg.n, "preset.host", errs);
            else
                host = SimpleGraph::complete(cfg.n);  // "host": "complete" or absent
            if (!errs.empty()) return;
            bundle = preset_deffuant(host, obj.at("mu").get<double>());
        } else {
            errs.push_back("preset: unknown name \"" + name + "\"");
            return;
        }
        cfg.mode = bundle.mode;
        cfg.stubbornness = bundle.stubbornness;
        cfg.schedule = bundle.schedule;
        cfg.social = bundle.social;
    } catch (const DomainError& ex) {
        errs.push_back(std::string("preset: ") + ex.what());
    }
}

}  // namespace

LoadedConfig load_config_json(const json& doc) {
    std::vector<std::string> errs;
    if (!doc.is_object()) throw ConfigError({"top level must be a JSON object"});
    check_keys(doc,
               {"model", "preset", "stubbornness", "schedule", "social", "init", "diagnostics"},
               "config", errs);

    LoadedConfig out;
    ModelConfig& cfg = out.cfg;

    if (!doc.contains("model") || !doc.at("model").is_object()) {
        errs.push_back("config: missing \"model\" section");
        throw ConfigError(std::move(errs));
    }
    const json& model = doc.at("model");
    check_keys(model, {"n", "d", "epsilon", "mode", "horizon", "seed", "max_n"}, "model", errs);
    if (!model.contains("n")) errs.push_back("model: missing \"n\"");
    if (!model.contains("epsilon")) errs.push_back("model: missing \"epsilon\"");
    cfg.n = model.value("n", 0);
    cfg.d = model.value("d", 1);
    cfg.epsilon = model.value("epsilon", 0.0);
    cfg.horizon = model.value("horizon", 100L);
    cfg.seed = model.value("seed", 0ULL);
    cfg.max_n = model.value("max_n", 4096);

    const bool has_preset = doc.contains("preset");
    const bool has_explicit =
        doc.contains("stubbornness") || doc.contains("schedule") || doc.contains("social");
    if (has_preset && has_explicit)
        errs.push_back("config: give either \"preset\" or explicit stochastic sections, not both");

    if (has_preset) {
        apply_preset(doc.at("preset"), cfg, errs);
        if (model.contains("mode")) {
            const auto declared =
                mode_from_string(model.at("mode").get<std::string>(), "model", errs);
            if (errs.empty() && declared != cfg.mode)
                errs.push_back("model: declared mode conflicts with the preset's mode");
        }
    } else {
        if (model.contains("mode"))
            cfg.mode = mode_from_string(model.at("mode").get<std::string>(), "model", errs);
        else if (doc.contains("schedule") && doc.at("schedule").contains("mode"))
            cfg.mode = mode_from_string(doc.at("schedule").at("mode").get<std::string>(), "model",
                                        errs);
        if (doc.contains("stubbornness"))
            cfg.stubbornness = parse_stubbornness(doc.at("stubbornness"), errs);
        else
            errs.push_back("config: missing \"stubbornness\" section (or use a preset)");
        if (doc.contains("schedule"))
            cfg.schedule = parse_schedule(doc.at("schedule"), cfg.n, errs);
        else
            errs.push_back("config: missing \"schedule\" section (or use a preset)");
        if (doc.contains("social"))
            cfg.social = parse_social(doc.at("social"), cfg.n, errs);
        else
            errs.push_back("config: missing \"social\" section (or use a preset)");
    }

    if (doc.contains("init"))
        cfg.init = parse_init(doc.at("init"), cfg.d, errs);
    else
        cfg.init = parse_init(json::object(), cfg.d, errs);  // uniform box [0,1]^d

    if (doc.contains("diagnostics"))
        out.settings = parse_diagnostics(doc.at("diagnostics"), errs);

    if (!errs.empty()) throw ConfigError(std::move(errs));

    auto violations = validate_config(cfg);
    if (!violations.empty()) throw ConfigError(std::move(violations));
    return out;
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    json doc = json::parse(in);  // propagates parse_error with position info
    return load_config_json(doc);
}

json graph_to_json(const SimpleGraph& g) {
    json arr = json::array();
    for (auto [i, j] : g.edges) arr.push_back({i + 1, j + 1});
    return arr;
}

json effective_config(const ModelConfig& cfg, const RunSettings& settings) {
    json doc;
    doc["model"] = {{"n", cfg.n},       {"d", cfg.d},
                    {"epsilon", cfg.epsilon}, {"mode", to_string(cfg.mode)},
                    {"horizon", cfg.horizon}, {"seed", cfg.seed},
                    {"max_n", cfg.max_n}};

    json stub{{"kind", to_string(cfg.stubbornness.kind)}};
    switch (cfg.stubbornness.kind) {
        case StubbornnessSpec::Kind::constant:
            stub["value"] = cfg.stubbornness.value;
            break;
        case StubbornnessSpec::Kind::uniform_interval:
            stub["lo"] = cfg.stubbornness.lo;
            stub["hi"] = cfg.stubbornness.hi;
            break;
        case StubbornnessSpec::Kind::two_point:
            stub["a"] = cfg.stubbornness.a;
            stub["b"] = cfg.stubbornness.b;
            stub["prob_a"] = cfg.stubbornness.prob_a;
            break;
        case StubbornnessSpec::Kind::per_agent_table:
            stub["table"] = cfg.stubbornness.table;
            break;
    }
    if (cfg.stubbornness.gamma_max) stub["gamma_max"] = *cfg.stubbornness.gamma_max;
    doc["stubbornness"] = stub;

    json support = json::array();
    for (const auto& atom : cfg.schedule.support) {
        json elem{{"prob", atom.probability}};
        if (cfg.schedule.mode == InteractionMode::group) {
            json agents = json::array();
            for (int a : atom.agents) agents.push_back(a + 1);
            elem["agents"] = agents;
        } else {
            json matching = json::array();
            for (auto [i, j] : atom.matching) matching.push_back({i + 1, j + 1});
            elem["matching"] = matching;
        }
        support.push_back(elem);
    }
    doc["schedule"] = {{"mode", to_string(cfg.schedule.mode)}, {"support", support}};

    json social{{"kind", to_string(cfg.social.kind)}};
    if (cfg.social.kind == SocialSpec::Kind::static_graph) {
        social["graph"] = graph_to_json(cfg.social.graphs.front());
    } else if (cfg.social.kind == SocialSpec::Kind::sequence) {
        json graphs = json::array();
        for (const auto& g : cfg.social.graphs) graphs.push_back(graph_to_json(g));
        social["graphs"] = graphs;
    } else {
        social["p"] = cfg.social.er_p;
    }
    doc["social"] = social;

    json init;
    switch (cfg.init.kind) {
        case InitSpec::Kind::explicit_values:
            init = {{"kind", "explicit"}, {"values", cfg.init.values}};
            break;
        case InitSpec::Kind::uniform_box:
            init = {{"kind", "uniform_box"}, {"lo", cfg.init.lo}, {"hi", cfg.init.hi}};
            break;
        case InitSpec::Kind::uniform_ball:
            init = {{"kind", "uniform_ball"},
                    {"center", cfg.init.center},
                    {"radius", cfg.init.radius}};
            break;
    }
    doc["init"] = init;

    doc["diagnostics"] = {{"delta", settings.delta},
                          {"stop", to_string(settings.stop)},
                          {"diameter_tol", settings.diameter_tol},
                          {"delta_grid", settings.delta_grid}};
    return doc;
}

}  // namespace mixhk

#include "mixhk/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mixhk {

std::string to_string(StopRule r) {
    switch (r) {
        case StopRule::none: return "none";
        case StopRule::delta_trivial: return "delta_trivial";
        case StopRule::diameter: return "diameter";
    }
    return "?";
}

namespace {

// A stubbornness value is admissible under gamma_max if it is exactly 1
// (permanently stubborn) or at most gamma_max.
bool exceeds_gamma(double v, double gamma_max) { return v != 1.0 && v > gamma_max; }

void check_stubbornness(const ModelConfig& cfg, std::vector<std::string>& out) {
    const auto& s = cfg.stubbornness;
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };

    switch (s.kind) {
        case StubbornnessSpec::Kind::constant:
            if (!in_unit(s.value)) out.push_back("stubbornness constant must lie in [0,1]");
            break;
        case StubbornnessSpec::Kind::uniform_interval:
            if (!in_unit(s.lo) || !in_unit(s.hi) || s.lo > s.hi)
                out.push_back("stubbornness interval must satisfy 0 <= lo <= hi <= 1");
            break;
        case StubbornnessSpec::Kind::two_point:
            if (!in_unit(s.a) || !in_unit(s.b))
                out.push_back("two-point stubbornness values must lie in [0,1]");
            if (s.prob_a < 0.0 || s.prob_a > 1.0)
                out.push_back("two-point probability must lie in [0,1]");
            break;
        case StubbornnessSpec::Kind::per_agent_table:
            if (static_cast<int>(s.table.size()) != cfg.n)
                out.push_back("stubbornness table must have one entry per agent");
            for (double v : s.table)
                if (!in_unit(v)) {
                    out.push_back("stubbornness table entries must lie in [0,1]");
                    break;
                }
            break;
    }

    if (s.gamma_max) {
        const double g = *s.gamma_max;
        if (g < 0.0 || g >= 1.0) out.push_back("gamma_max must lie in [0,1)");
        bool exceeds = false;
        switch (s.kind) {
            case StubbornnessSpec::Kind::constant:
                exceeds = exceeds_gamma(s.value, g);
                break;
            case StubbornnessSpec::Kind::uniform_interval:
                exceeds = s.hi > g;
                break;
            case StubbornnessSpec::Kind::two_point:
                exceeds = exceeds_gamma(s.a, g) || exceeds_gamma(s.b, g);
                break;
            case StubbornnessSpec::Kind::per_agent_table:
                for (double v : s.table) exceeds = exceeds || exceeds_gamma(v, g);
                break;
        }
        if (exceeds)
            out.push_back("stubbornness distribution can exceed gamma_max without clamping");
    }
}

void check_schedule(const ModelConfig& cfg, std::vector<std::string>& out) {
    const auto& sched = cfg.schedule;
    if (sched.mode != cfg.mode)
        out.push_back("schedule mode must match the configured interaction mode");
    if (sched.support.empty()) {
        out.push_back(cfg.mode == InteractionMode::pair
                          ? "pair mode requires a non-empty matching support"
                          : "group mode requires a non-empty schedule support");
        return;
    }

    double total = 0.0;
    for (const auto& atom : sched.support) {
        if (atom.probability <= 0.0) out.push_back("support probabilities must be positive");
        total += atom.probability;
    }
    if (std::abs(total - 1.0) > 1e-12)
        out.push_back("support probabilities must sum to 1 within 1e-12");

    if (cfg.mode == InteractionMode::group) {
        std::set<int> covered;
        for (const auto& atom : sched.support)
            for (int a : atom.agents) {
                if (a < 0 || a >= cfg.n) out.push_back("schedule agent index out of range");
                covered.insert(a);
            }
        if (static_cast<int>(covered.size()) < cfg.n)
            out.push_back("support must cover all agents");
    } else {
        // Matchings are validated against G(0); that needs a deterministic
        // initial social graph.
        if (cfg.social.kind == SocialSpec::Kind::random_er) {
            out.push_back("pair schedules require a deterministic initial social graph");
            return;
        }
        if (cfg.social.graphs.empty()) return;  // reported by check_social
        const SimpleGraph& g0 = cfg.social.graphs.front();
        for (const auto& atom : sched.support)
            if (!is_matching(atom.matching, g0))
                out.push_back("every pair-mode support element must be a matching in G(0)");
    }
}

void check_social(const ModelConfig& cfg, std::vector<std::string>& out) {
    const auto& soc = cfg.social;
    if (soc.n != cfg.n) out.push_back("social spec vertex count must equal n");
    switch (soc.kind) {
        case SocialSpec::Kind::static_graph:
            if (soc.graphs.size() != 1) out.push_back("static social spec needs exactly one graph");
            break;
        case SocialSpec::Kind::sequence:
            if (soc.graphs.empty()) out.push_back("sequence social spec needs at least one graph");
            break;
        case SocialSpec::Kind::random_er:
            if (soc.er_p < 0.0 || soc.er_p > 1.0)
                out.push_back("random_er edge probability must lie in [0,1]");
            break;
    }
    for (const auto& g : soc.graphs)
        if (g.n != cfg.n) out.push_back("social graphs must have n vertices");
}

void check_init(const ModelConfig& cfg, std::vector<std::string>& out) {
    const auto& init = cfg.init;
    switch (init.kind) {
        case InitSpec::Kind::explicit_values:
            if (static_cast<int>(init.values.size()) != cfg.n)
                out.push_back("explicit initial opinions must have one row per agent");
            for (const auto& row : init.values) {
                if (static_cast<int>(row.size()) != cfg.d) {
                    out.push_back("explicit initial opinion rows must have d coordinates");
                    break;
                }
                for (double v : row)
                    if (!std::isfinite(v)) {
                        out.push_back("initial opinions must be finite");
                        break;
                    }
            }
            break;
        case InitSpec::Kind::uniform_box:
            if (static_cast<int>(init.lo.size()) != cfg.d ||
                static_cast<int>(init.hi.size()) != cfg.d)
                out.push_back("uniform_box bounds must have d coordinates");
            else
                for (int k = 0; k < cfg.d; ++k)
                    if (init.lo[k] > init.hi[k]) {
                        out.push_back("uniform_box requires lo <= hi per coordinate");
                        break;
                    }
            break;
        case InitSpec::Kind::uniform_ball:
            if (static_cast<int>(init.center.size()) != cfg.d)
                out.push_back("uniform_ball center must have d coordinates");
            if (init.radius <= 0.0) out.push_back("uniform_ball radius must be positive");
            break;
    }
}

}  // namespace

std::vector<std::string> validate_config(const ModelConfig& cfg) {
    std::vector<std::string> out;
    if (!(cfg.epsilon > 0.0)) out.push_back("epsilon must be positive");
    if (cfg.horizon < 1) out.push_back("horizon must be at least 1");
    if (cfg.n < 1) out.push_back("n must be at least 1");
    if (cfg.d < 1) out.push_back("d must be at least 1");
    if (cfg.n > cfg.max_n)
        out.push_back("n exceeds the configured cap of " + std::to_string(cfg.max_n));

    check_stubbornness(cfg, out);
    check_schedule(cfg, out);
    check_social(cfg, out);
    check_init(cfg, out);
    return out;
}

}  // namespace mixhk

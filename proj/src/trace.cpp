#include "mixhk/trace.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mixhk/errors.hpp"

namespace mixhk {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace(std::ostream& os, const Trace& trace) {
    for (const TraceRecord& rec : trace) {
        os << "{\"t\":" << rec.opinions.t << ",\"opinions\":[";
        for (int i = 0; i < rec.opinions.n; ++i) {
            if (i) os << ',';
            os << '[';
            for (int k = 0; k < rec.opinions.d; ++k) {
                if (k) os << ',';
                os << format_double(rec.opinions.at(i, k));
            }
            os << ']';
        }
        os << "],\"energy\":" << format_double(rec.energy) << ",\"components\":[";
        for (std::size_t c = 0; c < rec.components.size(); ++c) {
            if (c) os << ',';
            os << '[';
            for (std::size_t v = 0; v < rec.components[c].size(); ++v) {
                if (v) os << ',';
                os << rec.components[c][v] + 1;  // 1-based on disk
            }
            os << ']';
        }
        os << "],\"max_component_diameter\":" << format_double(rec.max_component_diameter)
           << ",\"all_delta_trivial\":" << (rec.all_delta_trivial ? "true" : "false") << "}\n";
    }
}

Trace read_trace(std::istream& is) {
    Trace trace;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        TraceRecord rec;
        rec.opinions.t = j.at("t").get<long>();
        const auto& rows = j.at("opinions");
        rec.opinions.n = static_cast<int>(rows.size());
        rec.opinions.d = rows.empty() ? 0 : static_cast<int>(rows[0].size());
        rec.opinions.values.reserve(static_cast<std::size_t>(rec.opinions.n) * rec.opinions.d);
        for (const auto& row : rows)
            for (const auto& v : row) rec.opinions.values.push_back(v.get<double>());
        rec.energy = j.at("energy").get<double>();
        for (const auto& comp : j.at("components")) {
            std::vector<int> vertices;
            for (const auto& v : comp) vertices.push_back(v.get<int>() - 1);
            rec.components.push_back(std::move(vertices));
        }
        rec.max_component_diameter = j.at("max_component_diameter").get<double>();
        rec.all_delta_trivial = j.at("all_delta_trivial").get<bool>();
        trace.push_back(std::move(rec));
    }
    return trace;
}

}  // namespace mixhk

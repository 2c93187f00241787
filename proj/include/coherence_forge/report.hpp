// report.hpp — measure reports and per-trial verification records, plus the
// fixed-format number serialization shared by every writer (17 significant
// digits so doubles round-trip exactly through text).
#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "common.hpp"

namespace coherence_forge {

// Shortest text that survives a text->double->text round trip: %.17g.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

// Named measure -> value map with numeric metadata (tolerances, optimizer
// iteration counts). Ordered so serialization is deterministic.
struct measure_report {
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::pair<std::string, double>> metadata;

    void add(std::string name, double value) {
        values.emplace_back(std::move(name), value);
    }
    void meta(std::string name, double value) {
        metadata.emplace_back(std::move(name), value);
    }
    const double* find(const std::string& name) const {
        for (const auto& [k, v] : values)
            if (k == name) return &v;
        return nullptr;
    }

    std::string to_json() const {
        std::string out = "{\"measures\":{";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += ",";
            out += "\"" + values[i].first + "\":" + format_double(values[i].second);
        }
        out += "},\"metadata\":{";
        for (std::size_t i = 0; i < metadata.size(); ++i) {
            if (i) out += ",";
            out += "\"" + metadata[i].first + "\":" + format_double(metadata[i].second);
        }
        out += "}}";
        return out;
    }

    std::string to_csv() const {
        std::string out = "name,value\n";
        for (const auto& [k, v] : values) out += k + "," + format_double(v) + "\n";
        return out;
    }
};

// One property-check trial. `margin` is signed distance from violation under
// the convention pass <=> margin >= -tolerance of the suite; equality checks
// store margin = -|lhs - rhs|.
struct verification_record {
    std::string check;
    std::uint64_t seed = 0;
    std::string input_hash;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;

    std::string to_jsonl() const {
        std::string out = "{\"check\":\"" + check + "\"";
        out += ",\"seed\":" + std::to_string(seed);
        out += ",\"input_hash\":\"" + input_hash + "\"";
        out += ",\"lhs\":" + format_double(lhs);
        out += ",\"rhs\":" + format_double(rhs);
        out += ",\"margin\":" + format_double(margin);
        out += ",\"pass\":";
        out += pass ? "true" : "false";
        out += "}";
        return out;
    }
};

inline std::size_t count_failures(const std::vector<verification_record>& records) {
    std::size_t n = 0;
    for (const auto& r : records)
        if (!r.pass) ++n;
    return n;
}

inline double worst_margin(const std::vector<verification_record>& records) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : records) m = std::min(m, r.margin);
    return m;
}

}  // namespace coherence_forge

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swipt/channel.hpp"
#include "swipt/common.hpp"
#include "swipt/experiments.hpp"
#include "swipt/game.hpp"

namespace swipt {

using ordered_json = nlohmann::ordered_json;

/// FNV-1a 64-bit content hash, hex-encoded. Ties every output file to the
/// exact configuration bytes that produced it.
inline std::string config_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Number formatting shared by CSV and JSON echo paths: 12 significant
/// digits, 'nan' for missing values.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct RunManifest {
    std::string command;
    std::string config_digest;
    std::uint64_t master_seed = 0;
    std::string library_version = kLibraryVersion;
    double runtime_seconds = 0.0;
};

inline ordered_json to_json(const RunManifest& m) {
    ordered_json j;
    j["command"] = m.command;
    j["config_digest"] = m.config_digest;
    j["master_seed"] = m.master_seed;
    j["library_version"] = m.library_version;
    j["runtime_seconds"] = m.runtime_seconds;
    return j;
}

inline ordered_json to_json(const NetworkScenario& scn) {
    ordered_json j;
    j["links"] = scn.size();
    j["powers"] = scn.powers;
    j["tau"] = scn.tau;
    j["eta"] = scn.eta;
    j["sigma2"] = scn.sigma2;
    ordered_json geoms = ordered_json::array();
    for (const LinkGeometry& g : scn.geometries) {
        geoms.push_back({{"d_sr", g.d_sr}, {"d_rd", g.d_rd}, {"lateral_offset", g.lateral_offset}});
    }
    j["geometries"] = geoms;
    std::vector<std::string> protos;
    for (Protocol p : scn.protocols) protos.emplace_back(to_string(p));
    j["protocols"] = protos;
    return j;
}

inline ordered_json to_json(const GainMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline ordered_json to_json(const EquilibriumResult& r) {
    ordered_json j;
    j["profile"] = r.profile.rho;
    j["rates"] = r.rates;
    j["sum_rate"] = r.sum_rate;
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    j["converged"] = r.converged;
    return j;
}

inline constexpr const char* kSweepCsvHeader =
    "sweep_param,value,scheme,mean_sum_rate,ci_half_width,mean_rho,mean_best_rate,"
    "mean_worst_rate,mean_iterations,trials";

/// Renders a sweep as RFC-4180-style CSV: fixed column order, 12 significant
/// digits, rows sorted by (value, scheme name) regardless of config order.
inline std::string sweep_to_csv(const SweepResult& result) {
    struct Row {
        double value;
        std::string scheme;
        const SchemeStats* stats;
    };
    std::vector<Row> rows;
    for (const SweepPoint& point : result.points) {
        for (const auto& [scheme, stats] : point.stats) {
            rows.push_back({point.value, to_string(scheme), &stats});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.value != b.value ? a.value < b.value : a.scheme < b.scheme;
    });

    std::string out = kSweepCsvHeader;
    out += "\r\n";
    for (const Row& row : rows) {
        const SchemeStats& s = *row.stats;
        out += std::string(to_string(result.parameter)) + "," + format_number(row.value) + "," +
               row.scheme + "," + format_number(s.mean_sum_rate) + "," +
               format_number(s.ci_half_width) + "," + format_number(s.mean_rho) + "," +
               format_number(s.mean_best_rate) + "," + format_number(s.mean_worst_rate) + "," +
               format_number(s.mean_iterations) + "," + std::to_string(s.trials) + "\r\n";
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << bytes;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace swipt

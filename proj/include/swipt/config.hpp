#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "swipt/common.hpp"
#include "swipt/experiments.hpp"
#include "swipt/game.hpp"

namespace swipt {

/// Parsed key = value file with [section] headers and # comments. Keys keep
/// their line numbers so later validation can point at the offending line.
class ConfigFile {
public:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };

    static ConfigFile parse_text(const std::string& text, const std::string& origin) {
        ConfigFile cfg;
        cfg.origin_ = origin;
        std::istringstream in(text);
        std::string raw;
        std::string section;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = raw;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    throw ConfigError(origin + ":" + std::to_string(line_no) +
                                      ": unterminated section header");
                }
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty()) {
                    throw ConfigError(origin + ":" + std::to_string(line_no) +
                                      ": empty section name");
                }
                cfg.sections_[section];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": expected key = value, got '" + line + "'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) {
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
            }
            if (section.empty()) {
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": key '" + key +
                                  "' appears before any [section]");
            }
            auto [it, inserted] = cfg.sections_[section].emplace(key, Entry{value, line_no});
            if (!inserted) {
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                                  key + "' in [" + section + "]");
            }
        }
        return cfg;
    }

    static ConfigFile parse_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        ConfigFile cfg = parse_text(buf.str(), path);
        cfg.raw_bytes_ = buf.str();
        return cfg;
    }

    bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

    std::optional<std::string> get(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return std::nullopt;
        const auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        k->second.used = true;
        return k->second.value;
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        const auto v = get(section, key);
        return v ? to_double(section, key, *v) : fallback;
    }

    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const {
        const auto v = get(section, key);
        if (!v) return fallback;
        try {
            // stoull would silently wrap a leading minus sign
            if (v->empty() || !std::isdigit(static_cast<unsigned char>(v->front()))) {
                throw std::invalid_argument(*v);
            }
            std::size_t pos = 0;
            const std::uint64_t out = std::stoull(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument(*v);
            return out;
        } catch (const std::exception&) {
            throw ConfigError(location(section, key) + ": '" + *v +
                              "' is not an unsigned integer");
        }
    }

    std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                    std::vector<double> fallback) const {
        const auto v = get(section, key);
        if (!v) return fallback;
        std::vector<double> out;
        for (const std::string& tok : split(*v)) out.push_back(to_double(section, key, tok));
        if (out.empty()) {
            throw ConfigError(location(section, key) + ": expected at least one number");
        }
        return out;
    }

    std::vector<std::string> get_strings(const std::string& section, const std::string& key,
                                         std::vector<std::string> fallback) const {
        const auto v = get(section, key);
        return v ? split(*v) : fallback;
    }

    /// Every key must have been consumed by a get_* call; anything left is a
    /// typo worth rejecting loudly. Sections named in skip are exempt (a
    /// solve run ignores [sweep]).
    void reject_unused(const std::vector<std::string>& skip = {}) const {
        for (const auto& [section, entries] : sections_) {
            if (std::find(skip.begin(), skip.end(), section) != skip.end()) continue;
            for (const auto& [key, entry] : entries) {
                if (!entry.used) {
                    throw ConfigError(origin_ + ":" + std::to_string(entry.line) +
                                      ": unknown key '" + key + "' in [" + section + "]");
                }
            }
        }
    }

    const std::string& raw_bytes() const { return raw_bytes_; }
    const std::string& origin() const { return origin_; }

    std::string location(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s != sections_.end()) {
            const auto k = s->second.find(key);
            if (k != s->second.end()) {
                return origin_ + ":" + std::to_string(k->second.line) + ": [" + section + "] " +
                       key;
            }
        }
        return origin_ + ": [" + section + "] " + key;
    }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return {};
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out;
        std::string tok;
        std::istringstream in(s);
        while (std::getline(in, tok, ',')) {
            tok = trim(tok);
            if (!tok.empty()) out.push_back(tok);
        }
        return out;
    }

    double to_double(const std::string& section, const std::string& key,
                     const std::string& tok) const {
        try {
            std::size_t pos = 0;
            const double out = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            return out;
        } catch (const std::exception&) {
            throw ConfigError(location(section, key) + ": '" + tok + "' is not a number");
        }
    }

    std::string origin_;
    std::string raw_bytes_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

namespace detail {

inline Protocol parse_protocol(const std::string& tok, const std::string& where) {
    std::string t;
    for (char c : tok) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "af") return Protocol::af;
    if (t == "df") return Protocol::df;
    throw ConfigError(where + ": protocol must be AF or DF, got '" + tok + "'");
}

inline Scheme parse_scheme(const std::string& tok, const std::string& where) {
    if (tok == "game") return Scheme::game;
    if (tok == "random") return Scheme::random;
    if (tok == "centralized") return Scheme::centralized;
    throw ConfigError(where + ": scheme must be game, random or centralized, got '" + tok + "'");
}

inline SweepParameter parse_parameter(const std::string& tok, const std::string& where) {
    if (tok == "inter_link_distance") return SweepParameter::inter_link_distance;
    if (tok == "link_count") return SweepParameter::link_count;
    if (tok == "power_db") return SweepParameter::power_db;
    throw ConfigError(where +
                      ": parameter must be inter_link_distance, link_count or power_db, got '" +
                      tok + "'");
}

}  // namespace detail

/// [scenario] section -> template. Powers stay in dB here; materialize()
/// converts to linear scale.
inline ScenarioTemplate load_scenario_template(const ConfigFile& cfg) {
    if (!cfg.has_section("scenario")) {
        throw ConfigError(cfg.origin() + ": missing required [scenario] section");
    }
    ScenarioTemplate t;
    const double links = cfg.get_double("scenario", "links", 2.0);
    if (links < 1.0 || links != std::floor(links)) {
        throw ConfigError(cfg.location("scenario", "links") + ": must be a positive integer");
    }
    t.links = static_cast<std::size_t>(links);
    t.power_db = cfg.get_doubles("scenario", "power_db", {15.0});
    t.relay_fraction = cfg.get_doubles("scenario", "relay_fraction", {0.5});
    t.d_max = cfg.get_double("scenario", "d_max", 5.0);
    t.tau = cfg.get_double("scenario", "tau", 3.0);
    t.eta = cfg.get_double("scenario", "eta", 0.5);
    t.sigma2 = cfg.get_double("scenario", "sigma2", 1.0);
    const auto protos = cfg.get_strings("scenario", "protocols", {"AF"});
    t.protocols.clear();
    for (const std::string& p : protos) {
        t.protocols.push_back(detail::parse_protocol(p, cfg.location("scenario", "protocols")));
    }
    return t;
}

inline SolverOptions load_solver_options(const ConfigFile& cfg) {
    SolverOptions o;
    o.zeta = cfg.get_double("solver", "zeta", o.zeta);
    o.fixed_point_tolerance =
        cfg.get_double("solver", "fixed_point_tolerance", o.fixed_point_tolerance);
    const double mi = cfg.get_double("solver", "max_iterations", o.max_iterations);
    if (mi < 1.0 || mi != std::floor(mi)) {
        throw ConfigError(cfg.location("solver", "max_iterations") +
                          ": must be a positive integer");
    }
    o.max_iterations = static_cast<int>(mi);
    if (const auto init = cfg.get("solver", "initial_profile")) {
        o.initial_profile = cfg.get_doubles("solver", "initial_profile", {});
    }
    return o;
}

/// Full sweep configuration from [scenario] + [sweep] + [solver].
inline SweepConfig load_sweep_config(const ConfigFile& cfg) {
    if (!cfg.has_section("sweep")) {
        throw ConfigError(cfg.origin() + ": missing required [sweep] section");
    }
    SweepConfig sc;
    sc.scenario = load_scenario_template(cfg);
    sc.solver = load_solver_options(cfg);
    sc.parameter = detail::parse_parameter(
        cfg.get("sweep", "parameter").value_or("inter_link_distance"),
        cfg.location("sweep", "parameter"));
    sc.values = cfg.get_doubles("sweep", "values", {});
    if (sc.values.empty()) {
        throw ConfigError(cfg.origin() + ": [sweep] values is required and must be nonempty");
    }
    const double trials = cfg.get_double("sweep", "trials", 2000.0);
    if (trials < 1.0 || trials != std::floor(trials)) {
        throw ConfigError(cfg.location("sweep", "trials") + ": must be a positive integer");
    }
    sc.trials = static_cast<int>(trials);
    sc.master_seed = cfg.get_u64("sweep", "master_seed", 1);
    sc.centralized_grid.resolution = cfg.get_double("sweep", "grid_resolution", 1e-3);
    sc.schemes.clear();
    for (const std::string& s : cfg.get_strings("sweep", "schemes", {"game", "random"})) {
        sc.schemes.push_back(detail::parse_scheme(s, cfg.location("sweep", "schemes")));
    }
    return sc;
}

}  // namespace swipt

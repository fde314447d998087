#pragma once

// Flat key=value experiment configuration: parsing, validation, canonical
// serialization, and a stable FNV-1a hash used to tag emitted artifacts.
//
// Grammar: one `key = value` pair per line; `#` starts a comment anywhere on
// a line; blank lines are ignored.  Repeated policies use indexed blocks
// `policy.<N>.kind` / `policy.<N>.c`.  Unknown keys are rejected with the
// offending key and line number so typos cannot silently fall back to a
// default.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "srlab/bandit.hpp"
#include "srlab/bounds.hpp"
#include "srlab/errors.hpp"
#include "srlab/policies.hpp"

namespace srlab {

struct ExperimentConfig {
    // instance
    std::string instance = "paper";           // "paper" or "inline"
    std::vector<ArmParams> arms;              // required when instance = inline
    std::optional<double> mean_override;      // paper instance only
    double rho = 1.0;
    double l0 = 1.0;

    // protocol
    std::uint64_t horizon = 20000;
    std::uint64_t replications = 500;
    std::uint64_t seed = 1;
    std::vector<double> rho_grid;             // sweep-rho only; values > 0

    // policies under test; an empty list is legal and yields header-only data
    std::vector<PolicyConfig> policies;
    std::vector<std::string> policy_labels;

    // theory-curve knobs
    BoundConstants bounds;
    std::optional<double> bounds_eps;         // constant eps; default rule otherwise
    std::vector<std::uint64_t> bounds_n_grid; // `bounds` subcommand grid

    // output
    std::string out_dir = "out";
    bool emit_csv = true;
    bool emit_svg = true;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(trim(cur));
    }
    return out;
}

[[noreturn]] inline void config_fail(const std::string& origin, int line, const std::string& what) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

inline double parse_double(const std::string& v, const std::string& origin, int line,
                           const std::string& key) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        config_fail(origin, line, "key '" + key + "': cannot parse real value '" + v + "'");
    }
    if (pos != v.size()) {
        config_fail(origin, line, "key '" + key + "': trailing junk in real value '" + v + "'");
    }
    return x;
}

inline std::uint64_t parse_count(const std::string& v, const std::string& origin, int line,
                                 const std::string& key) {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(v, &pos);
    } catch (const std::exception&) {
        config_fail(origin, line, "key '" + key + "': cannot parse count '" + v + "'");
    }
    if (pos != v.size()) {
        config_fail(origin, line, "key '" + key + "': trailing junk in count '" + v + "'");
    }
    return static_cast<std::uint64_t>(x);
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace detail

// Parses configuration text.  `origin` names the source (file path or a tag
// like "<inline>") and is prefixed to every diagnostic.
inline ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    using detail::config_fail;
    using detail::parse_count;
    using detail::parse_double;
    using detail::split;
    using detail::trim;

    ExperimentConfig cfg;
    cfg.bounds_n_grid.clear();
    bool have_arms = false;

    struct PolicyDraft {
        std::string kind;
        std::optional<double> c;
        int line = 0;
    };
    std::map<std::uint64_t, PolicyDraft> drafts;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string s = trim(raw);
        if (s.empty()) {
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            config_fail(origin, line, "expected 'key = value', got '" + s + "'");
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) {
            config_fail(origin, line, "empty key");
        }
        if (value.empty()) {
            config_fail(origin, line, "key '" + key + "': empty value");
        }

        if (key == "instance") {
            if (value != "paper" && value != "inline") {
                config_fail(origin, line, "instance must be 'paper' or 'inline', got '" + value + "'");
            }
            cfg.instance = value;
        } else if (key == "arms") {
            cfg.arms.clear();
            for (const std::string& pair : split(value, ';')) {
                if (pair.empty()) {
                    continue;
                }
                const std::vector<std::string> mv = split(pair, ':');
                if (mv.size() != 2) {
                    config_fail(origin, line, "arms: expected 'mean:variance', got '" + pair + "'");
                }
                cfg.arms.push_back({parse_double(mv[0], origin, line, key),
                                    parse_double(mv[1], origin, line, key)});
            }
            have_arms = true;
        } else if (key == "mean_override") {
            cfg.mean_override = parse_double(value, origin, line, key);
        } else if (key == "rho") {
            cfg.rho = parse_double(value, origin, line, key);
        } else if (key == "l0") {
            cfg.l0 = parse_double(value, origin, line, key);
        } else if (key == "horizon") {
            cfg.horizon = parse_count(value, origin, line, key);
        } else if (key == "replications") {
            cfg.replications = parse_count(value, origin, line, key);
        } else if (key == "seed") {
            cfg.seed = parse_count(value, origin, line, key);
        } else if (key == "rho_grid") {
            cfg.rho_grid.clear();
            for (const std::string& item : split(value, ',')) {
                cfg.rho_grid.push_back(parse_double(item, origin, line, key));
            }
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "emit") {
            cfg.emit_csv = false;
            cfg.emit_svg = false;
            for (const std::string& item : split(value, ',')) {
                if (item == "csv") {
                    cfg.emit_csv = true;
                } else if (item == "svg") {
                    cfg.emit_svg = true;
                } else if (item == "none") {
                    // explicit opt-out
                } else {
                    config_fail(origin, line, "emit: unknown flag '" + item + "'");
                }
            }
        } else if (key == "bounds.a7") {
            cfg.bounds.a7 = parse_double(value, origin, line, key);
        } else if (key == "bounds.a8") {
            cfg.bounds.a8 = parse_double(value, origin, line, key);
        } else if (key == "bounds.a9") {
            cfg.bounds.a9 = parse_double(value, origin, line, key);
        } else if (key == "bounds.a10") {
            cfg.bounds.a10 = parse_double(value, origin, line, key);
        } else if (key == "bounds.a11") {
            cfg.bounds.a11 = parse_double(value, origin, line, key);
        } else if (key == "bounds.c1") {
            cfg.bounds.c1 = parse_double(value, origin, line, key);
        } else if (key == "bounds.c2") {
            cfg.bounds.c2 = parse_double(value, origin, line, key);
        } else if (key == "bounds.alpha") {
            cfg.bounds.alpha_consistency = parse_double(value, origin, line, key);
        } else if (key == "bounds.eps") {
            cfg.bounds_eps = parse_double(value, origin, line, key);
        } else if (key == "bounds.n_grid") {
            cfg.bounds_n_grid.clear();
            for (const std::string& item : split(value, ',')) {
                cfg.bounds_n_grid.push_back(parse_count(item, origin, line, key));
            }
        } else if (key.rfind("policy.", 0) == 0) {
            const std::vector<std::string> parts = split(key, '.');
            if (parts.size() != 3) {
                config_fail(origin, line, "unknown key '" + key + "'");
            }
            const std::uint64_t idx = parse_count(parts[1], origin, line, key);
            PolicyDraft& d = drafts[idx];
            if (d.line == 0) {
                d.line = line;
            }
            if (parts[2] == "kind") {
                d.kind = value;
            } else if (parts[2] == "c") {
                d.c = parse_double(value, origin, line, key);
            } else {
                config_fail(origin, line, "unknown key '" + key + "'");
            }
        } else {
            config_fail(origin, line, "unknown key '" + key + "'");
        }
    }

    for (const auto& [idx, d] : drafts) {
        if (d.kind.empty()) {
            config_fail(origin, d.line,
                        "policy." + std::to_string(idx) + " has no 'kind'");
        }
        PolicyConfig pc;
        try {
            pc.kind = policy_kind_from_string(d.kind);
        } catch (const std::exception& e) {
            config_fail(origin, d.line, e.what());
        }
        pc.rho = cfg.rho;
        pc.l0 = cfg.l0;
        if (d.c) {
            pc.c = *d.c;
        }
        cfg.policies.push_back(pc);
        cfg.policy_labels.emplace_back(to_string(pc.kind));
    }

    // cross-field validation
    if (cfg.instance == "inline" && !have_arms) {
        throw ConfigError(origin + ": instance = inline requires an 'arms' key");
    }
    if (cfg.instance == "paper" && have_arms) {
        throw ConfigError(origin + ": 'arms' is only valid with instance = inline");
    }
    if (cfg.instance == "inline" && cfg.mean_override) {
        throw ConfigError(origin + ": 'mean_override' is only valid with instance = paper");
    }
    if (cfg.replications < 1) {
        throw ConfigError(origin + ": replications must be >= 1");
    }
    const std::size_t k = cfg.instance == "paper" ? 10 : cfg.arms.size();
    if (cfg.horizon < k) {
        throw ConfigError(origin + ": horizon must be >= number of arms (" +
                          std::to_string(k) + ")");
    }
    for (double r : cfg.rho_grid) {
        if (!(r > 0.0)) {
            throw ConfigError(origin + ": rho_grid values must be > 0");
        }
    }
    if (cfg.bounds_eps && !(*cfg.bounds_eps > 0.0)) {
        throw ConfigError(origin + ": bounds.eps must be > 0");
    }
    for (std::uint64_t n : cfg.bounds_n_grid) {
        if (n < 2) {
            throw ConfigError(origin + ": bounds.n_grid values must be >= 2");
        }
    }
    try {
        validate(cfg.bounds);
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    // the instance itself must be constructible (positive variances, a
    // unique optimum, valid rho/L0); surface those failures as ConfigError
    try {
        if (cfg.instance == "paper") {
            paper_instance(cfg.rho, cfg.l0, cfg.mean_override);
        } else {
            make_instance(cfg.arms, cfg.rho, cfg.l0);
        }
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

// Builds the instance a config describes, with an optional rho override used
// by rho sweeps.
inline BanditInstance instance_from_config(const ExperimentConfig& cfg,
                                           std::optional<double> rho_override = std::nullopt) {
    const double rho = rho_override.value_or(cfg.rho);
    if (cfg.instance == "paper") {
        return paper_instance(rho, cfg.l0, cfg.mean_override);
    }
    return make_instance(cfg.arms, rho, cfg.l0);
}

// Canonical text form: every data-determining field in a fixed order with
// %.17g reals.  out_dir and emit flags are presentation, not experiment
// identity, so they are deliberately absent and --out cannot change the
// hash stamped into artifacts.
inline std::string canonical_config_text(const ExperimentConfig& cfg) {
    using detail::format_double;
    std::ostringstream out;
    out << "instance = " << cfg.instance << "\n";
    if (!cfg.arms.empty()) {
        out << "arms = ";
        for (std::size_t i = 0; i < cfg.arms.size(); ++i) {
            if (i) {
                out << "; ";
            }
            out << format_double(cfg.arms[i].mean) << ":" << format_double(cfg.arms[i].variance);
        }
        out << "\n";
    }
    if (cfg.mean_override) {
        out << "mean_override = " << format_double(*cfg.mean_override) << "\n";
    }
    out << "rho = " << format_double(cfg.rho) << "\n";
    out << "l0 = " << format_double(cfg.l0) << "\n";
    out << "horizon = " << cfg.horizon << "\n";
    out << "replications = " << cfg.replications << "\n";
    out << "seed = " << cfg.seed << "\n";
    if (!cfg.rho_grid.empty()) {
        out << "rho_grid = ";
        for (std::size_t i = 0; i < cfg.rho_grid.size(); ++i) {
            out << (i ? ", " : "") << format_double(cfg.rho_grid[i]);
        }
        out << "\n";
    }
    for (std::size_t i = 0; i < cfg.policies.size(); ++i) {
        out << "policy." << i << ".kind = " << to_string(cfg.policies[i].kind) << "\n";
        out << "policy." << i << ".c = " << format_double(cfg.policies[i].c) << "\n";
    }
    out << "bounds.a7 = " << format_double(cfg.bounds.a7) << "\n";
    out << "bounds.a8 = " << format_double(cfg.bounds.a8) << "\n";
    out << "bounds.a9 = " << format_double(cfg.bounds.a9) << "\n";
    out << "bounds.a10 = " << format_double(cfg.bounds.a10) << "\n";
    out << "bounds.a11 = " << format_double(cfg.bounds.a11) << "\n";
    out << "bounds.c1 = " << format_double(cfg.bounds.c1) << "\n";
    out << "bounds.c2 = " << format_double(cfg.bounds.c2) << "\n";
    out << "bounds.alpha = " << format_double(cfg.bounds.alpha_consistency) << "\n";
    if (cfg.bounds_eps) {
        out << "bounds.eps = " << format_double(*cfg.bounds_eps) << "\n";
    }
    if (!cfg.bounds_n_grid.empty()) {
        out << "bounds.n_grid = ";
        for (std::size_t i = 0; i < cfg.bounds_n_grid.size(); ++i) {
            out << (i ? ", " : "") << cfg.bounds_n_grid[i];
        }
        out << "\n";
    }
    return out.str();
}

inline std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string config_hash(const ExperimentConfig& cfg) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(canonical_config_text(cfg))));
    return buf;
}

} // namespace srlab

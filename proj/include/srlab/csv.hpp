#pragma once

// CSV emission and the matching parser used by round-trip tests.  All files
// are UTF-8 with LF line endings, '.' decimal separator, and reals printed
// with 17 significant digits so parsing recovers the exact double.  The
// first line is a comment carrying the tool version, config hash, and seed;
// the header line follows.  "Header-only" therefore means comment + header
// and no data rows.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "srlab/errors.hpp"
#include "srlab/experiment.hpp"
#include "srlab/version.hpp"

namespace srlab {

namespace detail {

inline std::string csv_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << body;
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

inline std::string artifact_comment(const ExperimentResult& res) {
    return "# srlab " SRLAB_VERSION " config=" + res.config_hash +
           " seed=" + std::to_string(res.seed) + "\n";
}

} // namespace detail

inline std::string render_regret_csv(const ExperimentResult& res) {
    std::ostringstream out;
    out << detail::artifact_comment(res);
    out << "policy,rho,t,regret_mean,regret_stderr\n";
    for (const PolicyCurve& pc : res.policies) {
        for (std::size_t i = 0; i < res.ts.size(); ++i) {
            out << pc.label << ',' << detail::csv_double(res.rho) << ',' << res.ts[i] << ','
                << detail::csv_double(pc.regret_mean[i]) << ','
                << detail::csv_double(pc.regret_stderr[i]) << '\n';
        }
    }
    return out.str();
}

inline std::string render_pulls_csv(const ExperimentResult& res) {
    std::ostringstream out;
    out << detail::artifact_comment(res);
    out << "policy,rho,arm,pulls_mean,pulls_var\n";
    for (const PolicyCurve& pc : res.policies) {
        for (std::size_t arm = 0; arm < pc.pulls_mean.size(); ++arm) {
            out << pc.label << ',' << detail::csv_double(res.rho) << ',' << arm << ','
                << detail::csv_double(pc.pulls_mean[arm]) << ','
                << detail::csv_double(pc.pulls_var[arm]) << '\n';
        }
    }
    return out.str();
}

inline std::string render_bounds_csv(const ExperimentResult& res) {
    std::ostringstream out;
    out << detail::artifact_comment(res);
    out << "curve,rho,n,value,informative\n";
    for (std::size_t i = 0; i < res.bound_ns.size(); ++i) {
        out << "theorem2_upper," << detail::csv_double(res.rho) << ',' << res.bound_ns[i] << ','
            << detail::csv_double(res.theorem2_upper[i].value) << ','
            << (res.theorem2_upper[i].informative ? 1 : 0) << '\n';
    }
    for (std::size_t i = 0; i < res.bound_ns.size(); ++i) {
        out << "theorem3_lower," << detail::csv_double(res.rho) << ',' << res.bound_ns[i] << ','
            << detail::csv_double(res.theorem3_lower[i]) << ",1\n";
    }
    return out.str();
}

// Final-round rows of every sweep point in the regret schema, sorted by rho
// (sweep_rho already sorts), then by policy order.
inline std::string render_sweep_csv(const std::vector<ExperimentResult>& results) {
    std::ostringstream out;
    if (!results.empty()) {
        out << detail::artifact_comment(results.front());
    }
    out << "policy,rho,t,regret_mean,regret_stderr\n";
    for (const ExperimentResult& res : results) {
        for (const PolicyCurve& pc : res.policies) {
            out << pc.label << ',' << detail::csv_double(res.rho) << ',' << res.horizon << ','
                << detail::csv_double(pc.regret_mean.back()) << ','
                << detail::csv_double(pc.regret_stderr.back()) << '\n';
        }
    }
    return out.str();
}

struct RegretRow {
    std::string policy;
    double rho = 0.0;
    std::uint64_t t = 0;
    double regret_mean = 0.0;
    double regret_stderr = 0.0;
};

// Parses the regret/sweep schema back; comment lines are skipped, the header
// is validated.  Used to prove emitted files round-trip exactly.
inline std::vector<RegretRow> parse_regret_csv(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    std::vector<RegretRow> rows;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!seen_header) {
            if (line != "policy,rho,t,regret_mean,regret_stderr") {
                throw IoError("unexpected regret CSV header: '" + line + "'");
            }
            seen_header = true;
            continue;
        }
        RegretRow row;
        std::istringstream ls(line);
        std::string field;
        std::getline(ls, row.policy, ',');
        std::getline(ls, field, ',');
        row.rho = std::stod(field);
        std::getline(ls, field, ',');
        row.t = std::stoull(field);
        std::getline(ls, field, ',');
        row.regret_mean = std::stod(field);
        std::getline(ls, field, ',');
        row.regret_stderr = std::stod(field);
        rows.push_back(row);
    }
    if (!seen_header) {
        throw IoError("regret CSV has no header line");
    }
    return rows;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace srlab

#pragma once

// Hand-emitted SVG line charts: fixed 960x540 viewBox, polyline series, a
// legend, optional log-x mapping for rho sweeps, and a <metadata> element
// carrying the config hash.  Coordinates are printed with %.6g so the bytes
// are deterministic across platforms with IEEE doubles.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "srlab/experiment.hpp"
#include "srlab/version.hpp"

namespace srlab {

namespace detail {

inline std::string svg_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

constexpr double kSvgW = 960.0, kSvgH = 540.0;
constexpr double kMarL = 70.0, kMarR = 20.0, kMarT = 30.0, kMarB = 50.0;

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct AxisSpec {
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

// Maps data to the plot rectangle; y range comes from the solid series only
// so dashed theory overlays cannot squash the experimental curves (they are
// clipped to the plot area instead).
inline std::string render_chart(const std::vector<Series>& series, const AxisSpec& axis,
                                const std::string& title, const std::string& meta) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const Series& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        if (s.dashed) {
            continue;
        }
        for (double v : s.y) {
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    if (!(xmin < xmax)) {
        xmax = xmin + 1.0;
    }
    if (!(ymin < ymax)) {
        ymin = std::isfinite(ymin) ? ymin - 0.5 : 0.0;
        ymax = ymin + 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double px0 = kMarL, px1 = kSvgW - kMarR;
    const double py0 = kSvgH - kMarB, py1 = kMarT;
    auto xmap = [&](double v) {
        const double a = axis.log_x ? std::log10(v) : v;
        const double lo = axis.log_x ? std::log10(xmin) : xmin;
        const double hi = axis.log_x ? std::log10(xmax) : xmax;
        return px0 + (a - lo) / (hi - lo) * (px1 - px0);
    };
    auto ymap = [&](double v) { return py0 + (v - ymin) / (ymax - ymin) * (py1 - py0); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 540\" "
           "font-family=\"sans-serif\" font-size=\"13\">\n";
    out << "<metadata>srlab " SRLAB_VERSION " " << meta << "</metadata>\n";
    out << "<defs><clipPath id=\"plot\"><rect x=\"" << svg_num(px0) << "\" y=\"" << svg_num(py1)
        << "\" width=\"" << svg_num(px1 - px0) << "\" height=\"" << svg_num(py0 - py1)
        << "\"/></clipPath></defs>\n";
    out << "<rect width=\"960\" height=\"540\" fill=\"white\"/>\n";
    out << "<text x=\"" << svg_num(kSvgW / 2) << "\" y=\"20\" text-anchor=\"middle\">" << title
        << "</text>\n";

    // frame and ticks
    out << "<rect x=\"" << svg_num(px0) << "\" y=\"" << svg_num(py1) << "\" width=\""
        << svg_num(px1 - px0) << "\" height=\"" << svg_num(py0 - py1)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fy = ymin + (ymax - ymin) * i / nticks;
        const double py = ymap(fy);
        out << "<line x1=\"" << svg_num(px0 - 4) << "\" y1=\"" << svg_num(py) << "\" x2=\""
            << svg_num(px0) << "\" y2=\"" << svg_num(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << svg_num(px0 - 8) << "\" y=\"" << svg_num(py + 4)
            << "\" text-anchor=\"end\">" << svg_num(fy) << "</text>\n";
        if (axis.log_x) {
            continue;
        }
        const double fx = xmin + (xmax - xmin) * i / nticks;
        const double px = xmap(fx);
        out << "<line x1=\"" << svg_num(px) << "\" y1=\"" << svg_num(py0) << "\" x2=\""
            << svg_num(px) << "\" y2=\"" << svg_num(py0 + 4) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << svg_num(px) << "\" y=\"" << svg_num(py0 + 18)
            << "\" text-anchor=\"middle\">" << svg_num(fx) << "</text>\n";
    }
    if (axis.log_x) {
        for (double d = std::floor(std::log10(xmin)); d <= std::ceil(std::log10(xmax)) + 0.5;
             d += 1.0) {
            const double fx = std::pow(10.0, d);
            if (fx < xmin * 0.999 || fx > xmax * 1.001) {
                continue;
            }
            const double px = xmap(fx);
            out << "<line x1=\"" << svg_num(px) << "\" y1=\"" << svg_num(py0) << "\" x2=\""
                << svg_num(px) << "\" y2=\"" << svg_num(py0 + 4) << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << svg_num(px) << "\" y=\"" << svg_num(py0 + 18)
                << "\" text-anchor=\"middle\">1e" << svg_num(d) << "</text>\n";
        }
    }
    out << "<text x=\"" << svg_num((px0 + px1) / 2) << "\" y=\"" << svg_num(kSvgH - 12)
        << "\" text-anchor=\"middle\">" << axis.x_label << "</text>\n";
    out << "<text transform=\"translate(16," << svg_num((py0 + py1) / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << axis.y_label << "</text>\n";

    // series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        out << "<polyline fill=\"none\" clip-path=\"url(#plot)\" stroke=\"" << series_color(si)
            << "\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) {
                continue;
            }
            if (!first) {
                out << ' ';
            }
            first = false;
            out << svg_num(xmap(s.x[i])) << ',' << svg_num(ymap(s.y[i]));
        }
        out << "\"/>\n";
        // legend entry
        const double ly = py1 + 16.0 + 18.0 * static_cast<double>(si);
        out << "<line x1=\"" << svg_num(px0 + 10) << "\" y1=\"" << svg_num(ly) << "\" x2=\""
            << svg_num(px0 + 38) << "\" y2=\"" << svg_num(ly) << "\" stroke=\""
            << series_color(si) << "\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n";
        out << "<text x=\"" << svg_num(px0 + 44) << "\" y=\"" << svg_num(ly + 4) << "\">"
            << s.label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace detail

// Regret-vs-round chart: one solid polyline per policy plus the theorem
// curves dashed (clipped; the upper bound usually towers over the data).
inline std::string render_regret_svg(const ExperimentResult& res) {
    std::vector<detail::Series> series;
    std::vector<double> xs(res.ts.begin(), res.ts.end());
    for (const PolicyCurve& pc : res.policies) {
        series.push_back({pc.label, xs, pc.regret_mean, false});
    }
    std::vector<double> bxs(res.bound_ns.begin(), res.bound_ns.end());
    std::vector<double> th2;
    for (const BoundPoint& p : res.theorem2_upper) {
        th2.push_back(p.informative ? p.value : std::numeric_limits<double>::quiet_NaN());
    }
    if (!bxs.empty()) {
        series.push_back({"upper bound", bxs, th2, true});
        series.push_back({"lower bound", bxs, res.theorem3_lower, true});
    }
    detail::AxisSpec axis{"round t", "mean regret", false};
    return detail::render_chart(series, axis, "Regret over time",
                                "config=" + res.config_hash + " seed=" +
                                    std::to_string(res.seed));
}

// Final-regret-vs-rho chart with a log x axis, one polyline per policy.
inline std::string render_sweep_svg(const std::vector<ExperimentResult>& results) {
    std::vector<detail::Series> series;
    if (!results.empty()) {
        for (std::size_t p = 0; p < results.front().policies.size(); ++p) {
            detail::Series s;
            s.label = results.front().policies[p].label;
            for (const ExperimentResult& res : results) {
                s.x.push_back(res.rho);
                s.y.push_back(res.policies[p].regret_mean.back());
            }
            series.push_back(std::move(s));
        }
    }
    detail::AxisSpec axis{"rho (log scale)", "final mean regret", true};
    const std::string meta = results.empty()
                                 ? std::string("config=none seed=0")
                                 : "config=" + results.front().config_hash +
                                       " seed=" + std::to_string(results.front().seed);
    return detail::render_chart(series, axis, "Final regret across rho", meta);
}

// Theorem curves alone, for the `bounds` subcommand.
inline std::string render_bounds_svg(const ExperimentResult& res) {
    std::vector<detail::Series> series;
    std::vector<double> bxs(res.bound_ns.begin(), res.bound_ns.end());
    std::vector<double> th2;
    for (const BoundPoint& p : res.theorem2_upper) {
        th2.push_back(p.informative ? p.value : std::numeric_limits<double>::quiet_NaN());
    }
    series.push_back({"upper bound", bxs, th2, false});
    series.push_back({"lower bound", bxs, res.theorem3_lower, false});
    detail::AxisSpec axis{"horizon n", "regret bound", false};
    return detail::render_chart(series, axis, "Theory curves",
                                "config=" + res.config_hash + " seed=" +
                                    std::to_string(res.seed));
}

} // namespace srlab

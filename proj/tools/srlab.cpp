// srlab: seeded bandit experiments, theory curves, and lemma verification.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 lemma-verification
// failure, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srlab/srlab.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::optional<std::string> out;
    bool full = false;
};

srlab::ExperimentConfig load_effective_config(const CommonArgs& args) {
    srlab::ExperimentConfig cfg = srlab::load_config(args.config_path);
    if (args.seed) {
        cfg.seed = *args.seed;
    }
    if (args.out) {
        cfg.out_dir = *args.out;
    }
    return cfg;
}

std::string ensure_out_dir(const srlab::ExperimentConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) {
        throw srlab::IoError("cannot create output directory '" + cfg.out_dir +
                             "': " + ec.message());
    }
    return cfg.out_dir;
}

void write_artifact(const std::string& dir, const std::string& name, const std::string& body) {
    const std::string path = dir + "/" + name;
    srlab::detail::write_file(path, body);
    std::printf("wrote %s\n", path.c_str());
}

int cmd_run(const CommonArgs& args) {
    const srlab::ExperimentConfig cfg = load_effective_config(args);
    const srlab::ExperimentResult res = srlab::run_experiment(cfg, args.jobs, args.full);
    for (const srlab::PolicyCurve& pc : res.policies) {
        std::printf("%-15s final regret %.6g (stderr %.3g)\n", pc.label.c_str(),
                    pc.regret_mean.back(), pc.regret_stderr.back());
    }
    if (cfg.emit_csv || cfg.emit_svg) {
        const std::string dir = ensure_out_dir(cfg);
        if (cfg.emit_csv) {
            write_artifact(dir, "regret.csv", srlab::render_regret_csv(res));
            write_artifact(dir, "pulls.csv", srlab::render_pulls_csv(res));
            write_artifact(dir, "bounds.csv", srlab::render_bounds_csv(res));
        }
        if (cfg.emit_svg) {
            write_artifact(dir, "regret.svg", srlab::render_regret_svg(res));
        }
    }
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    const srlab::ExperimentConfig cfg = load_effective_config(args);
    const std::vector<srlab::ExperimentResult> results =
        srlab::sweep_rho(cfg, args.jobs, args.full);
    for (const srlab::ExperimentResult& res : results) {
        for (const srlab::PolicyCurve& pc : res.policies) {
            std::printf("rho %-10.4g %-15s final regret %.6g (stderr %.3g)\n", res.rho,
                        pc.label.c_str(), pc.regret_mean.back(), pc.regret_stderr.back());
        }
    }
    if (cfg.emit_csv || cfg.emit_svg) {
        const std::string dir = ensure_out_dir(cfg);
        if (cfg.emit_csv) {
            write_artifact(dir, "sweep.csv", srlab::render_sweep_csv(results));
        }
        if (cfg.emit_svg) {
            write_artifact(dir, "sweep.svg", srlab::render_sweep_svg(results));
        }
    }
    return 0;
}

// 40 log-spaced horizons in [1e3, 1e6], deduplicated after rounding.
std::vector<std::uint64_t> default_bounds_grid() {
    std::vector<std::uint64_t> grid;
    for (int i = 0; i < 40; ++i) {
        const double e = 3.0 + 3.0 * i / 39.0;
        const std::uint64_t n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
        if (grid.empty() || grid.back() != n) {
            grid.push_back(n);
        }
    }
    return grid;
}

int cmd_bounds(const CommonArgs& args) {
    srlab::ExperimentConfig cfg = load_effective_config(args);
    const srlab::BanditInstance inst = srlab::instance_from_config(cfg);
    srlab::ExperimentResult res;
    res.rho = cfg.rho;
    res.horizon = cfg.horizon;
    res.replications = 0;
    res.seed = cfg.seed;
    res.config_hash = srlab::config_hash(cfg);
    res.bound_ns = cfg.bounds_n_grid.empty() ? default_bounds_grid() : cfg.bounds_n_grid;
    srlab::EpsilonRule rule;
    if (cfg.bounds_eps) {
        const double eps = *cfg.bounds_eps;
        rule = [eps](std::uint64_t) { return eps; };
    }
    res.theorem2_upper = srlab::theorem2_regret_curve(inst, res.bound_ns, cfg.bounds, rule);
    res.theorem3_lower = srlab::theorem3_lower_bound_curve(inst, res.bound_ns, cfg.bounds);
    for (std::size_t i = 0; i < res.bound_ns.size(); ++i) {
        std::printf("n %-10llu upper %-14.6g%s lower %.6g\n",
                    static_cast<unsigned long long>(res.bound_ns[i]),
                    res.theorem2_upper[i].value,
                    res.theorem2_upper[i].informative ? "" : " (non-informative)",
                    res.theorem3_lower[i]);
    }
    const std::string dir = ensure_out_dir(cfg);
    if (cfg.emit_csv) {
        write_artifact(dir, "bounds.csv", srlab::render_bounds_csv(res));
    }
    if (cfg.emit_svg) {
        write_artifact(dir, "bounds.svg", srlab::render_bounds_svg(res));
    }
    return 0;
}

int cmd_verify() {
    const std::vector<srlab::LemmaReport> reports = srlab::verify_lemmas();
    for (const srlab::LemmaReport& r : reports) {
        std::printf("[%s] %-20s worst margin %-12.6g %s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.worst_margin, r.detail.c_str());
    }
    return srlab::all_lemmas_pass(reports) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharpe-ratio bandit laboratory"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config) {
            sub->add_option("config", args.config_path, "experiment config file")->required();
        }
        sub->add_option("--seed", args.seed, "override the config seed");
        sub->add_option("--jobs", args.jobs, "worker count (output is jobs-invariant)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", args.out, "override the output directory");
        sub->add_flag("--full", args.full, "emit full-resolution curves (no decimation)");
    };

    CLI::App* run = app.add_subcommand("run", "run the configured experiment");
    add_common(run, true);
    CLI::App* sweep = app.add_subcommand("sweep-rho", "run once per rho_grid value");
    add_common(sweep, true);
    CLI::App* bounds = app.add_subcommand("bounds", "emit theory curves only");
    add_common(bounds, true);
    app.add_subcommand("verify-lemmas", "check the concentration lemmas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run->parsed()) {
            return cmd_run(args);
        }
        if (sweep->parsed()) {
            return cmd_sweep(args);
        }
        if (bounds->parsed()) {
            return cmd_bounds(args);
        }
        return cmd_verify();
    } catch (const srlab::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

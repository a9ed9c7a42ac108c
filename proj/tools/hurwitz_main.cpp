// Command-line front end.  Exit codes: 0 ok, 2 validation, 3 computation,
// 4 acceptance failure.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "hurwitz/acceptance.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/experiments.hpp"
#include "hurwitz/report.hpp"

namespace fs = std::filesystem;
using namespace hurwitz;

namespace {

struct Globals {
    std::string config;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned jobs = 1;
    bool force = false;
    std::string out_dir;
};

int run_kind(const std::string& kind, const std::map<std::string, std::string>& overrides, const Globals& g)
{
    ExperimentConfig cfg;
    if (!g.config.empty()) {
        cfg = ExperimentConfig::load(g.config);
        if (!cfg.kind.empty() && !kind.empty() && cfg.kind != kind)
            throw ValidationError("config is for " + cfg.kind + ", not " + kind);
    }
    if (!kind.empty())
        cfg.kind = kind;
    for (const auto& [k, v] : overrides)
        cfg.params[k] = v;
    if (g.seed_set)
        cfg.seed = g.seed;
    if (!g.out_dir.empty())
        cfg.out_dir = g.out_dir;
    validate_config(cfg);

    if (!g.force) {
        const fs::path json = fs::path(cfg.out_dir) / (cfg.kind + ".json");
        if (fs::exists(json))
            throw ValidationError(json.string() + " exists; pass --force to overwrite");
    }
    Report r = run_experiment(cfg, g.jobs);
    for (const auto& p : write_report(r, cfg.out_dir, g.force))
        std::cout << p.string() << "\n";
    if (r.summary.contains("warnings"))
        for (const auto& w : r.summary["warnings"])
            std::cerr << "warning: " << w.get<std::string>() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hurwitz space components, homology and Cohen-Lenstra experiments"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config, "experiment config file (key = value lines)");
    app.add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { g.seed = s, g.seed_set = true; }, "random seed");
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--force", g.force, "overwrite existing reports");
    app.add_option("--out-dir", g.out_dir, "output directory (default: results)");

    std::map<std::string, std::map<std::string, std::string>> overrides;
    std::map<std::string, CLI::App*> experiment_cmds;
    const std::map<std::string, std::string> descriptions = {
        {"orbits", "braid orbits on tuples in a conjugacy class"},
        {"ring", "ring of components and its stabilizing element U"},
        {"kcomplex", "homology of the K-complex of a module over R"},
        {"homology", "Betti numbers b_0, b_1 and U-maps of Hurwitz spaces"},
        {"cl-sample", "random cokernels against the Cohen-Lenstra measure"},
        {"sp-check", "orbit check for surjections from a symplectic module"},
        {"ff-census", "class groups of all imaginary quadratic F_q(t)(sqrt f)"},
    };
    for (const auto& kind : experiment_kinds()) {
        CLI::App* sub = app.add_subcommand(kind, descriptions.at(kind));
        experiment_cmds[kind] = sub;
        for (const auto& key : experiment_keys(kind)) {
            sub->add_option_function<std::string>(
                "--" + key, [&overrides, kind, key](const std::string& v) { overrides[kind][key] = v; },
                "sets " + key);
        }
    }

    std::string report_path, plot_kind, plot_out;
    CLI::App* plot = app.add_subcommand("plot", "SVG plot from a report JSON");
    plot->add_option("--report", report_path, "report JSON")->required();
    plot->add_option("--kind", plot_kind, "betti-vs-n | distribution-vs-mu | hq-vs-q")->required();
    plot->add_option("--output", plot_out, "SVG path (default: next to the report)");

    AcceptanceOptions acc;
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--only", acc.only, "criterion ids");
    verify->add_option("--samples", acc.cl_samples, "random cokernels for the moment criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        for (const auto& [kind, sub] : experiment_cmds)
            if (sub->parsed())
                return run_kind(kind, overrides[kind], g);
        if (plot->parsed()) {
            Report r = load_report(report_path);
            std::string svg = plot_svg(r, parse_plot_kind(plot_kind));
            fs::path out = plot_out.empty()
                               ? fs::path(fs::path(report_path).replace_extension("").string() + "_" + plot_kind + ".svg")
                               : fs::path(plot_out);
            if (fs::exists(out) && !g.force)
                throw ValidationError(out.string() + " exists; pass --force to overwrite");
            fs::path tmp = out;
            tmp += ".tmp";
            {
                std::ofstream f(tmp, std::ios::binary);
                f << svg;
                if (!f) {
                    std::error_code ec;
                    fs::remove(tmp, ec);
                    throw ComputationError("cannot write " + out.string());
                }
            }
            fs::rename(tmp, out);
            std::cout << out.string() << "\n";
            return 0;
        }
        if (verify->parsed()) {
            acc.jobs = g.jobs;
            if (g.seed_set)
                acc.seed = g.seed;
            bool ok = true;
            run_acceptance(acc, [&](const CriterionResult& r) {
                ok = ok && r.passed;
                std::cout << format_result(r) << std::endl;
            });
            return ok ? 0 : 4;
        }
        if (!g.config.empty())
            return run_kind("", {}, g);
        std::cout << app.help();
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ComputationError& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

// mfs — command-line front end: verify / solve / convex-solve / audit /
// conjugate-table / export.
//
// Exit codes: 0 success, 1 verdict failure (a suite, audit, solver, or
// uniqueness certificate failed), 2 usage or configuration error.
//
// Configuration comes from flags plus an optional flat JSON file (--config);
// flags override file entries. Every run directory embeds the resolved
// configuration for provenance. Numeric output is deterministic for a fixed
// seed and independent of --threads.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mfs/io.hpp"
#include "mfs/solver.hpp"
#include "mfs/verify.hpp"

namespace fs = std::filesystem;
using mfs::json;

namespace {

struct Options {
    std::string command;
    std::string suite = "all";
    std::string family = "doublephase";
    std::string problem;
    std::string source_csv;
    std::string what = "phi";  // export target
    std::string out_dir = "mfs_out";

    double p = 0.0;
    double q = 0.0;
    double a = 1.0;
    double p_amp = 0.4;
    double r = 0.0;
    bool p_set = false, q_set = false, r_set = false;

    int dim = 2;
    int grid = 12;
    double s = 0.25;
    int path_points = 17;
    double residual_tol = 1e-6;
    double cerami_tol = 1e-6;
    int max_iter = 600;
    int samples = 10000;
    int fields = 200;
    std::uint64_t seed = 12345;
    int threads = 0;
    int depth = 4;
    double tmin = 1e-3;
    double tmax = 1e3;
    int points = 61;
    double x0 = 0.5, x1 = 0.5, y0 = 0.5, y1 = 0.5;
};

// smooth modulation used by the spatially varying presets
double center_bump(const mfs::Point& z) {
    const double rho = std::hypot(z[0] - 0.5, z[1] - 0.5) / 0.45;
    return mfs::bump_profile(rho);
}

mfs::PairField bump_modulated(double base, double amp) {
    return [base, amp](const mfs::Point& x, const mfs::Point& y) {
        return base + amp * 0.5 * (center_bump(x) + center_bump(y));
    };
}

mfs::NFunctionFamily family_from_flags(const Options& opt, bool explicit_params) {
    if (opt.family == "doublephase") {
        if (explicit_params && (!opt.p_set || !opt.q_set))
            throw mfs::ConfigError("doublephase requires --p and --q");
        const double p = opt.p_set ? opt.p : 2.0;
        const double q = opt.q_set ? opt.q : 2.5;
        return mfs::double_phase(p, q, opt.a);
    }
    if (opt.family == "anisotropic") {
        if (explicit_params && !opt.p_set)
            throw mfs::ConfigError("anisotropic requires --p");
        return mfs::anisotropic_p(opt.p_set ? opt.p : 2.0, opt.a);
    }
    if (opt.family == "pxy") {
        const double base = opt.p_set ? opt.p : 2.0;
        return mfs::variable_exponent(bump_modulated(base, opt.p_amp), base,
                                      base + opt.p_amp);
    }
    if (opt.family == "logpert") {
        const double base = opt.p_set ? opt.p : 2.0;
        if (opt.p_amp == 0.0) return mfs::log_perturbed(base);
        return mfs::log_perturbed(bump_modulated(base, opt.p_amp), base,
                                  base + opt.p_amp);
    }
    throw mfs::ConfigError("unknown family: " + opt.family);
}

// every command validates the family spec before any computation starts
mfs::NFunctionFamily family_from(const Options& opt, bool explicit_params) {
    mfs::NFunctionFamily fam = family_from_flags(opt, explicit_params);
    const mfs::Point lo{0.0, 0.0};
    const mfs::Point hi{1.0, opt.dim == 2 ? 1.0 : 0.0};
    const mfs::FamilyValidation val =
        mfs::validate_family(fam, lo, hi, opt.dim, opt.seed);
    if (!val.pass()) throw mfs::ConfigError("family validation failed: " + val.message);
    return fam;
}

json resolved_config(const Options& opt, const mfs::NFunctionFamily& fam) {
    json j;
    j["command"] = opt.command;
    j["family"] = fam.name;
    j["l"] = fam.l;
    j["m"] = fam.m;
    j["p"] = opt.p_set ? opt.p : fam.p;
    if (fam.kind == mfs::NFunctionFamily::Kind::DoublePhase) j["q"] = fam.q;
    j["a"] = opt.a;
    j["dim"] = opt.dim;
    j["grid"] = opt.grid;
    j["s"] = opt.s;
    if (opt.r_set) j["r"] = opt.r;
    j["path_points"] = opt.path_points;
    j["residual_tol"] = opt.residual_tol;
    j["cerami_tol"] = opt.cerami_tol;
    j["seed"] = opt.seed;
    j["threads"] = opt.threads;
    return j;
}

void write_report(const fs::path& dir, const char* name, json j) {
    // the timestamp is informational only; comparisons must exclude it
    j["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    std::ofstream os(dir / name);
    if (!os) throw mfs::ConfigError("cannot write " + (dir / name).string());
    os << j.dump(2) << "\n";
}

int cmd_verify(const Options& opt) {
    const mfs::NFunctionFamily fam = family_from(opt, true);
    const mfs::GridDomain dom =
        opt.dim == 2 ? mfs::unit_box(2, opt.grid)
                     : mfs::box_domain(1, {0.0, 0.0}, opt.grid, 1, 1.0 / opt.grid);

    mfs::VerifyConfig cfg;
    cfg.domain = dom;
    cfg.s = opt.s;
    cfg.scalar_samples = opt.samples;
    cfg.field_samples = opt.fields;
    if (opt.r_set) cfg.nl = mfs::power_log(opt.r, fam, dom.dim);

    std::vector<mfs::PropertyReport> reports;
    if (opt.suite == "all")
        reports = mfs::run_all_suites(fam, cfg, opt.seed);
    else
        reports.push_back(mfs::run_suite(opt.suite, fam, cfg, opt.seed));

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir / "suites");
    bool all_pass = true;
    json summary = json::array();
    for (const auto& rep : reports) {
        all_pass = all_pass && rep.pass;
        write_report(dir / "suites", (rep.suite + ".json").c_str(), mfs::to_json(rep));
        summary.push_back(mfs::to_json(rep));
        std::printf("%-18s %s  worst=%.3e  (n=%zu)\n", rep.suite.c_str(),
                    rep.pass ? "pass" : "FAIL", rep.worst_violation, rep.samples);
    }
    {
        std::ofstream os(dir / "summary.csv");
        mfs::write_suite_summary_csv(os, reports);
    }
    json top = resolved_config(opt, fam);
    top["suite"] = opt.suite;
    top["reports"] = summary;
    top["verdict"] = all_pass ? "pass" : "fail";
    if (opt.dim == 1)
        top["note"] = "1-d run: dimension-generic extrapolation of an N >= 2 theory";
    write_report(dir, "report.json", top);
    return all_pass ? 0 : 1;
}

mfs::SolverConfig solver_config(const Options& opt, const mfs::NFunctionFamily& fam,
                                double default_r) {
    mfs::SolverConfig cfg;
    cfg.family = fam;
    cfg.domain = opt.dim == 2
                     ? mfs::unit_box(2, opt.grid)
                     : mfs::box_domain(1, {0.0, 0.0}, opt.grid, 1, 1.0 / opt.grid);
    cfg.s = opt.s;
    cfg.nl = mfs::power_log(opt.r_set ? opt.r : default_r, fam, cfg.domain.dim);
    cfg.path_points = opt.path_points;
    cfg.residual_tol = opt.residual_tol;
    cfg.cerami_tol = opt.cerami_tol;
    cfg.max_iterations = opt.max_iter;
    cfg.seed = opt.seed;
    return cfg;
}

int cmd_solve(Options opt) {
    double default_r = 3.0;
    opt.family = opt.problem;
    if (opt.problem == "logpert") default_r = 4.0;
    const mfs::NFunctionFamily fam = family_from(opt, false);
    const mfs::SolverConfig cfg = solver_config(opt, fam, default_r);

    // advisory continuum windows; the discrete solve proceeds either way
    std::vector<std::string> warnings;
    if (fam.m < static_cast<double>(cfg.domain.dim) / cfg.s) {
        const auto stars = mfs::critical_exponents(fam.l, fam.m, cfg.domain.dim, cfg.s);
        if (!(cfg.nl.r < stars.first - 1.0))
            warnings.push_back(
                "source exponent r exceeds the continuum subcritical window "
                "(r < l*_s - 1); desk-scale run only");
    } else {
        warnings.push_back("growth exponents leave the critical-embedding window "
                           "(m < N/s); desk-scale run only");
    }

    const mfs::SolverContext ctx = mfs::make_context(cfg);
    const mfs::SolutionReport rep = mfs::mountain_pass(ctx);
    const mfs::Lambda1Estimate lam =
        mfs::poincare_lambda1_estimate(cfg.domain, fam, ctx.quad, 24, opt.seed);

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    mfs::write_grid_function_csv((dir / "solution.csv").string(), cfg.domain, rep.u);
    json top = resolved_config(opt, fam);
    top["problem"] = opt.problem;
    top["solution"] = mfs::to_json(rep);
    top["lambda1_estimate"] = lam.value;
    top["lambda1_kind"] = lam.estimate_kind;
    if (!warnings.empty()) top["warnings"] = warnings;
    if (opt.dim == 1)
        top["note"] = "1-d run: dimension-generic extrapolation of an N >= 2 theory";
    write_report(dir, "report.json", top);

    std::printf("%s: c=%.8g alpha=%.4g residual=%.3e cerami=%.3e iters=%d\n",
                rep.status.c_str(), rep.energy_level, rep.alpha, rep.residual,
                rep.cerami_product, rep.iterations);
    return rep.converged ? 0 : 1;
}

int cmd_convex_solve(const Options& opt) {
    const mfs::NFunctionFamily fam = family_from(opt, false);
    mfs::SolverConfig cfg = solver_config(opt, fam, 3.0);
    const mfs::SolverContext ctx = mfs::make_context(cfg);
    const mfs::GridFunction source =
        opt.source_csv.empty()
            ? mfs::sample_on(cfg.domain,
                             [](const mfs::Point& p) {
                                 return 4.0 * std::sin(M_PI * p[0]) *
                                        std::sin(2.0 * M_PI * p[1]);
                             })
            : mfs::read_grid_function_csv(opt.source_csv, cfg.domain);

    const mfs::ConvexSolveReport rep = mfs::convex_solve(source, ctx);
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    mfs::write_grid_function_csv((dir / "solution.csv").string(), cfg.domain, rep.u);
    json top = resolved_config(opt, fam);
    top["solution"] = mfs::to_json(rep);
    write_report(dir, "report.json", top);
    std::printf("%s: gap=%.3e spread=%.3e\n", rep.status.c_str(), rep.optimality_gap,
                rep.restart_spread);
    return (rep.converged && rep.unique) ? 0 : 1;
}

int cmd_audit(const Options& opt) {
    const mfs::NFunctionFamily fam = family_from(opt, false);
    const mfs::GridDomain dom = mfs::unit_box(2, opt.grid);
    const mfs::KernelQuadrature quad = mfs::kernel_quadrature(dom, opt.s, -1);
    const mfs::Nonlinearity nl =
        mfs::power_log(opt.r_set ? opt.r : 3.0, fam, dom.dim);
    const mfs::AuditReport rep = mfs::condition_audit(nl, fam, dom, quad, opt.seed);

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    json top = resolved_config(opt, fam);
    top["audit"] = mfs::to_json(rep);
    write_report(dir, "report.json", top);
    std::printf("audit: %s (f1 %d, f2 %d, f3 %d, f4 %d)\n",
                rep.all_pass() ? "pass" : "FAIL", rep.f1.pass, rep.f2.pass, rep.f3.pass,
                rep.f4.pass);
    return rep.all_pass() ? 0 : 1;
}

int cmd_conjugate_table(const Options& opt) {
    const mfs::NFunctionFamily fam = family_from(opt, false);
    if (!(opt.tmin > 0.0 && opt.tmax > opt.tmin) || opt.points < 2)
        throw mfs::ConfigError("conjugate-table: requires 0 < tmin < tmax, points >= 2");
    std::vector<double> ts(static_cast<std::size_t>(opt.points));
    for (int i = 0; i < opt.points; ++i)
        ts[static_cast<std::size_t>(i)] =
            opt.tmin * std::pow(opt.tmax / opt.tmin,
                                static_cast<double>(i) / (opt.points - 1));
    const mfs::Point x{opt.x0, opt.x1};
    const mfs::Point y{opt.y0, opt.y1};
    const mfs::ConjugateTable table = mfs::build_conjugate_table(fam, x, y, ts, opt.depth);

    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    mfs::write_conjugate_table_csv((dir / "table.csv").string(), table);
    json top = resolved_config(opt, fam);
    top["depth"] = opt.depth;
    top["points"] = opt.points;
    write_report(dir, "report.json", top);
    return 0;
}

int cmd_export(const Options& opt) {
    const mfs::NFunctionFamily fam = family_from(opt, false);
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    std::ofstream os(dir / "export.csv");
    if (!os) throw mfs::ConfigError("cannot write export.csv");

    if (opt.what == "phi" || opt.what == "density") {
        const mfs::Point x{opt.x0, opt.x1};
        const mfs::Point y{opt.y0, opt.y1};
        os << "t,value\n";
        for (int i = 0; i < opt.points; ++i) {
            const double t = opt.tmin * std::pow(opt.tmax / opt.tmin,
                                                 static_cast<double>(i) /
                                                     (opt.points - 1));
            const double v = opt.what == "phi" ? mfs::eval_phi(fam, x, y, t)
                                               : mfs::eval_density(fam, x, y, t);
            char buf[80];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", t, v);
            os << buf;
        }
    } else if (opt.what == "domain") {
        const mfs::GridDomain dom = mfs::unit_box(2, opt.grid);
        mfs::write_grid_function_csv(os, dom, mfs::GridFunction(dom.n_interior()));
    } else {
        throw mfs::ConfigError("export: unknown --what (phi, density, domain)");
    }
    json top = resolved_config(opt, fam);
    top["what"] = opt.what;
    write_report(dir, "report.json", top);
    return 0;
}

// flat JSON config: keys are long flag names without the leading dashes;
// command-line flags win
std::vector<std::string> merge_config_file(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") config_path = args[i + 1];
    if (config_path.empty()) return args;

    std::ifstream is(config_path);
    if (!is) throw mfs::ConfigError("cannot open config file: " + config_path);
    json j = json::parse(is);
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag) present = true;
        if (present) continue;
        args.push_back(flag);
        args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional Musielak-Sobolev toolkit"};
    app.require_subcommand(1);
    Options opt;
    std::string config_path;

    auto add_family_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", opt.family,
                        "doublephase | anisotropic | pxy | logpert");
        cmd->add_option("--p", opt.p)->each([&](const std::string&) { opt.p_set = true; });
        cmd->add_option("--q", opt.q)->each([&](const std::string&) { opt.q_set = true; });
        cmd->add_option("--a", opt.a, "coefficient level");
        cmd->add_option("--p-amp", opt.p_amp, "bump amplitude of the exponent field");
        cmd->add_option("--r", opt.r, "source exponent")
            ->each([&](const std::string&) { opt.r_set = true; });
    };
    auto add_common_flags = [&](CLI::App* cmd) {
        cmd->add_option("--grid", opt.grid, "cells per axis");
        cmd->add_option("--dim", opt.dim)->check(CLI::Range(1, 2));
        cmd->add_option("--s", opt.s, "fractional order in (0,1)");
        cmd->add_option("--seed", opt.seed);
        cmd->add_option("--threads", opt.threads, "worker cap (env MFS_THREADS)");
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--config", config_path, "flat JSON config file");
    };

    CLI::App* verify = app.add_subcommand("verify", "run property suites");
    verify->add_option("--suite", opt.suite, "suite id or 'all'");
    verify->add_option("--samples", opt.samples);
    verify->add_option("--fields", opt.fields);
    add_family_flags(verify);
    add_common_flags(verify);

    CLI::App* solve = app.add_subcommand("solve", "mountain-pass existence run");
    solve->add_option("--problem", opt.problem,
                      "doublephase | pxy | logpert | anisotropic")
        ->required();
    solve->add_option("--K", opt.path_points, "path points");
    solve->add_option("--residual-tol", opt.residual_tol);
    solve->add_option("--cerami-tol", opt.cerami_tol);
    solve->add_option("--max-iter", opt.max_iter);
    add_family_flags(solve);
    add_common_flags(solve);

    CLI::App* convex = app.add_subcommand("convex-solve", "unique pure-source solve");
    convex->add_option("--source", opt.source_csv, "source field CSV");
    convex->add_option("--residual-tol", opt.residual_tol);
    add_family_flags(convex);
    add_common_flags(convex);

    CLI::App* audit = app.add_subcommand("audit", "structural condition audit");
    add_family_flags(audit);
    add_common_flags(audit);

    CLI::App* table = app.add_subcommand("conjugate-table", "export the Young conjugate");
    table->add_option("--tmin", opt.tmin);
    table->add_option("--tmax", opt.tmax);
    table->add_option("--points", opt.points);
    table->add_option("--depth", opt.depth);
    table->add_option("--x0", opt.x0);
    table->add_option("--x1", opt.x1);
    table->add_option("--y0", opt.y0);
    table->add_option("--y1", opt.y1);
    add_family_flags(table);
    add_common_flags(table);

    CLI::App* exp = app.add_subcommand("export", "plot-ready curves and grids");
    exp->add_option("--what", opt.what, "phi | density | domain");
    exp->add_option("--tmin", opt.tmin);
    exp->add_option("--tmax", opt.tmax);
    exp->add_option("--points", opt.points);
    add_family_flags(exp);
    add_common_flags(exp);

    try {
        const std::vector<std::string> args = merge_config_file(argc, argv);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mfs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (opt.threads > 0) mfs::set_thread_cap(opt.threads);

    try {
        if (verify->parsed()) { opt.command = "verify"; return cmd_verify(opt); }
        if (solve->parsed()) { opt.command = "solve"; return cmd_solve(opt); }
        if (convex->parsed()) { opt.command = "convex-solve"; return cmd_convex_solve(opt); }
        if (audit->parsed()) { opt.command = "audit"; return cmd_audit(opt); }
        if (table->parsed()) { opt.command = "conjugate-table"; return cmd_conjugate_table(opt); }
        if (exp->parsed()) { opt.command = "export"; return cmd_export(opt); }
    } catch (const mfs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mfs::NumericsError& e) {
        std::cerr << "numerics error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

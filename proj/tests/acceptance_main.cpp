// Acceptance battery. Each criterion prints exactly one pass/fail line; the
// exit code is the number of failed criteria. Criteria can be selected by
// number on the command line (default: all).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mfs/io.hpp"
#include "mfs/solver.hpp"
#include "mfs/verify.hpp"

using namespace mfs;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

PairField bump_pair_field(double base, double amp) {
    auto bump = [](const Point& z) {
        return bump_profile(std::hypot(z[0] - 0.5, z[1] - 0.5) / 0.45);
    };
    return [base, amp, bump](const Point& x, const Point& y) {
        return base + amp * 0.5 * (bump(x) + bump(y));
    };
}

std::vector<std::pair<std::string, NFunctionFamily>> builtin_families() {
    return {{"doublephase", double_phase(2.0, 3.0, 1.0)},
            {"anisotropic", anisotropic_p(2.0, 0.75)},
            {"pxy", variable_exponent(bump_pair_field(2.0, 0.4), 2.0, 2.4)},
            {"logpert", log_perturbed(2.0)}};
}

// 1. ξ-sandwich suites at 1e-10 with a 5 s per-family budget
Outcome criterion1() {
    char buf[256];
    for (const auto& [name, fam] : builtin_families()) {
        VerifyConfig cfg;
        cfg.scalar_samples = 10000;
        cfg.field_samples = 0;  // the norm-modular part is criterion 2
        const double t0 = now_s();
        const PropertyReport mn1 = run_suite("mn1", fam, cfg, 12345);
        const PropertyReport mn2 = run_suite("mn2", fam, cfg, 12345);
        const PropertyReport mnc = run_suite("mn-critical", fam, cfg, 12345);
        const double dt = now_s() - t0;
        const double worst = std::max(
            {mn1.worst_violation, mn2.worst_violation, mnc.worst_violation});
        if (!(mn1.pass && mn2.pass && mnc.pass) || worst > 1e-10 || dt >= 5.0) {
            std::snprintf(buf, sizeof(buf), "%s: worst=%.3e time=%.2fs", name.c_str(),
                          worst, dt);
            return {false, buf};
        }
    }
    return {true, "4 families, worst violation <= 1e-10, < 5 s each"};
}

// 2. norm-modular sandwiches on 200 random fields, 12x12, with bisection slack
Outcome criterion2() {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    const GridDomain dom = unit_box(2, 12);
    const KernelQuadrature quad = kernel_quadrature(dom, 0.25, 0);
    const double tol = 1e-10;
    const double tolb = 2e-10;  // bisection tolerance, slope-inflated
    FieldSampler sampler{&dom, 2024, true};
    char buf[256];
    const double t0 = now_s();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const GridFunction u = sampler(static_cast<std::size_t>(i));

        const double J = modular_gagliardo(u, fam, quad);
        if (J > 0.0) {
            const double lam = luxemburg_gagliardo(u, fam, quad, tol);
            const XiPair xi = xi_bounds(XiKind::Base, fam.l, fam.m, lam);
            worst = std::max(worst, (xi.minus * (1.0 - tolb) - J) / J);
            worst = std::max(worst, (J - xi.plus * (1.0 + tolb)) / J);
        }

        const double Jh = modular_hat(u, fam, dom);
        if (Jh > 0.0) {
            const double lam = luxemburg_hat(u, fam, dom, tol);
            const XiPair xi = xi_bounds(XiKind::Base, fam.l, fam.m, lam);
            worst = std::max(worst, (xi.minus * (1.0 - tolb) - Jh) / Jh);
            worst = std::max(worst, (Jh - xi.plus * (1.0 + tolb)) / Jh);
        }

        const ModularValue Jc = modular_hat_conjugate(u, fam, dom);
        if (Jc.value > 0.0) {
            const double lam = luxemburg_hat_conjugate(u, fam, dom, tol);
            const XiPair xi = xi_bounds(XiKind::Conjugate, fam.l, fam.m, lam);
            const double slack = Jc.accuracy / Jc.value + tolb;
            worst = std::max(worst,
                             (xi.minus * (1.0 - tolb) - Jc.value) / Jc.value - slack);
            worst = std::max(worst,
                             (Jc.value - xi.plus * (1.0 + tolb)) / Jc.value - slack);
        }
    }
    const double dt = now_s() - t0;
    std::snprintf(buf, sizeof(buf), "worst=%.3e over 200 fields in %.1fs", worst, dt);
    return {worst <= tol && dt < 30.0, buf};
}

// 3. Young + est-conjugate bounded by the reported accuracy; eps <= 1e-6
Outcome criterion3() {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = -1.0;
    double eps_max = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Point x{unit(rng), unit(rng)};
        const Point y{unit(rng), unit(rng)};
        const double sarg = std::pow(10.0, -6.0 + 12.0 * unit(rng));
        const double targ = std::pow(10.0, -6.0 + 12.0 * unit(rng));

        const ConjugateResult c = conjugate(fam, x, y, targ);
        eps_max = std::max(eps_max, c.accuracy);
        const double lhs = sarg * targ;
        const double rhs = eval_phi(fam, x, y, sarg) + c.value + c.accuracy;
        worst = std::max(worst, (lhs - rhs) / std::max({lhs, rhs, 1e-300}));

        const double d = eval_density(fam, x, y, targ);
        const ConjugateResult cd = conjugate(fam, x, y, d);
        eps_max = std::max(eps_max, cd.accuracy);
        const double rhs2 = eval_phi(fam, x, y, 2.0 * targ) + cd.accuracy;
        worst = std::max(worst, (cd.value - rhs2) / std::max({cd.value, rhs2, 1e-300}));
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "worst=%.3e eps_max=%.3e", worst, eps_max);
    return {worst <= 1e-12 && eps_max <= 1e-6, buf};
}

// 4. order-2 decay of the central-difference derivative error
Outcome criterion4() {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    const GridDomain dom = unit_box(2, 12);
    const KernelQuadrature quad = kernel_quadrature(dom, 0.25, 0);
    std::mt19937_64 rng(31);
    double rmin = 1e300, rmax = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const GridFunction u = gaussian_field(dom, rng);
        const GridFunction v = gaussian_field(dom, rng);
        const double exact = derivative_pairing(u, v, fam, quad);
        double errs[3];
        double h = 1e-2;
        for (int k = 0; k < 3; ++k, h *= 0.5) {
            const double jp = modular_gagliardo(axpy(h, v, u), fam, quad);
            const double jm = modular_gagliardo(axpy(-h, v, u), fam, quad);
            errs[k] = std::abs((jp - jm) / (2.0 * h) - exact);
        }
        for (int k = 0; k < 2; ++k) {
            const double ratio = errs[k] / errs[k + 1];
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "halving ratios in [%.3f, %.3f]", rmin, rmax);
    return {rmin >= 3.5 && rmax <= 4.5, buf};
}

// 5. termwise monotonicity plus the uniform lower bound for p=2, q=3
Outcome criterion5() {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    const GridDomain dom = unit_box(2, 12);
    const KernelQuadrature quad = kernel_quadrature(dom, 0.25, 0);
    FieldSampler sampler{&dom, 555, true};
    const double factor = std::pow(4.0, 1.0 - fam.m) * fam.l;
    double worst_term = 0.0, worst_uniform = 0.0;
    for (int i = 0; i < 200; ++i) {
        const GridFunction u = sampler(2 * static_cast<std::size_t>(i));
        const GridFunction v = sampler(2 * static_cast<std::size_t>(i) + 1);
        const MonotonicityReport rep = monotonicity_gap_detailed(u, v, fam, quad);
        worst_term = std::max(worst_term,
                              -rep.min_term / std::max(rep.max_abs_term, 1e-300));
        const double bound = factor * modular_gagliardo(sub(u, v), fam, quad);
        worst_uniform =
            std::max(worst_uniform,
                     (bound - rep.gap) / std::max({rep.gap, bound, 1e-300}));
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "worst summand=%.3e, uniform-bound margin=%.3e",
                  worst_term, worst_uniform);
    return {worst_term <= 1e-12 && worst_uniform <= 1e-10, buf};
}

// 6. coercivity and boundedness inequalities with bisection slack
Outcome criterion6() {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    VerifyConfig cfg;
    cfg.field_samples = 200;
    const PropertyReport rep = run_suite("coercive-bounded", fam, cfg, 606);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "worst=%.3e over %zu fields", rep.worst_violation,
                  rep.samples);
    return {rep.pass, buf};
}

// 7. Brezis-Lieb defect decay across three refinements
Outcome criterion7() {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    VerifyConfig cfg;  // base mesh 12, levels 12/24/48
    const PropertyReport rep = run_suite("brezis-lieb", fam, cfg, 707);
    return {rep.pass, rep.witness};
}

// 8. (S+) diagnostic: vanishing sequence converges, stuck sequence flagged
Outcome criterion8() {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    const GridDomain dom = unit_box(2, 12);
    const KernelQuadrature quad = kernel_quadrature(dom, 0.25, 0);
    std::mt19937_64 rng(88);
    GridFunction u = gaussian_field(dom, rng);
    GridFunction w = gaussian_field(dom, rng);
    u = scaled(u, 0.02 / luxemburg_gagliardo(u, fam, quad));
    w = scaled(w, 0.02 / luxemburg_gagliardo(w, fam, quad));

    std::vector<GridFunction> seq;
    seq.reserve(1000);
    for (int n = 1; n <= 1000; ++n) seq.push_back(axpy(1.0 / n, w, u));
    const double tol = 1e-6;
    const SPlusReport conv = splus_diagnostic(seq, u, fam, quad, tol, tol);

    bool monotone = true;
    for (std::size_t i = 4; i < conv.entries.size(); ++i) {
        if (conv.entries[i].a >= conv.entries[i - 1].a) monotone = false;
        if (conv.entries[i].b >= conv.entries[i - 1].b) monotone = false;
    }
    const SPlusEntry last = conv.entries.back();

    const SPlusReport stuck =
        splus_diagnostic({axpy(1.0, w, u)}, u, fam, quad, tol, tol);
    const double stuck_a = stuck.entries.front().a;

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "a_1000=%.2e b_1000=%.2e monotone=%d stuck a=%.2e", last.a, last.b,
                  monotone, stuck_a);
    const bool pass = monotone && last.a <= tol && last.b <= tol &&
                      stuck_a > 10.0 * tol && conv.implication_holds;
    return {pass, buf};
}

// 9. existence certificates for the three model problems
Outcome criterion9() {
    struct Problem {
        const char* name;
        NFunctionFamily fam;
        double r;
    };
    std::vector<Problem> problems;
    problems.push_back({"doublephase", double_phase(2.0, 2.5, 1.0), 3.0});
    problems.push_back({"pxy", variable_exponent(bump_pair_field(2.0, 0.4), 2.0, 2.4), 3.0});
    problems.push_back({"logpert", log_perturbed(2.0), 4.0});

    const double t0 = now_s();
    char buf[512];
    std::string detail;
    for (const auto& prob : problems) {
        SolverConfig cfg;
        cfg.family = prob.fam;
        cfg.domain = unit_box(2, 12);
        cfg.s = 0.25;
        cfg.nl = power_log(prob.r, prob.fam, 2);
        cfg.path_points = 17;
        cfg.residual_tol = 1e-6;
        cfg.cerami_tol = 1e-6;
        const SolverContext ctx = make_context(cfg);
        const SolutionReport rep = mountain_pass(ctx);
        const bool ok = rep.converged && rep.nontrivial && rep.norm_u > 0.0 &&
                        rep.residual <= 1e-5 && rep.cerami_product <= 1e-4 &&
                        rep.energy_level >= rep.alpha && rep.alpha > 0.0;
        std::snprintf(buf, sizeof(buf), "%s[c=%.4g resid=%.1e] ", prob.name,
                      rep.energy_level, rep.residual);
        detail += buf;
        if (!ok) return {false, detail};
    }
    const double dt = now_s() - t0;
    std::snprintf(buf, sizeof(buf), "%.0fs total", dt);
    detail += buf;
    return {dt < 300.0, detail};
}

// 10. convex-solve restarts agree within Luxemburg distance 1e-6
Outcome criterion10() {
    SolverConfig cfg;
    cfg.family = double_phase(2.0, 2.5, 1.0);
    cfg.domain = unit_box(2, 12);
    cfg.s = 0.25;
    cfg.nl = power_log(3.0, cfg.family, 2);
    const SolverContext ctx = make_context(cfg);
    const GridFunction src = sample_on(cfg.domain, [](const Point& p) {
        return 4.0 * std::sin(M_PI * p[0]) * std::sin(2.0 * M_PI * p[1]);
    });
    const ConvexSolveReport rep = convex_solve(src, ctx, 1e-6);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "spread=%.3e gap=%.3e", rep.restart_spread,
                  rep.optimality_gap);
    return {rep.unique && rep.converged && rep.restart_spread <= 1e-6, buf};
}

// 11. the audit passes for q < r and detects the defect for r <= q
Outcome criterion11() {
    const auto fam = double_phase(2.0, 2.5, 1.0);
    const GridDomain dom = unit_box(2, 12);
    const KernelQuadrature quad = kernel_quadrature(dom, 0.25, -1);

    const AuditReport good = condition_audit(power_log(3.0, fam, 2), fam, dom, quad, 42);
    const AuditReport bad = condition_audit(power_log(2.2, fam, 2), fam, dom, quad, 42);

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "good margins f2=%.2e; misconfigured witness t=%.2e margin=%.2e",
                  good.f2.margin, bad.f2.witness_t, bad.f2.margin);
    const bool pass = good.all_pass() && good.f2.margin >= 0.0 && !bad.all_pass() &&
                      !bad.f2.pass && bad.f2.margin < 0.0;
    return {pass, buf};
}

const char* criterion_name(int k) {
    switch (k) {
        case 1: return "xi-sandwich suites (1e-10, <5s/family)";
        case 2: return "norm-modular sandwiches (200 fields, <30s)";
        case 3: return "young + est-conjugate within reported accuracy";
        case 4: return "derivative order-2 central differences";
        case 5: return "monotonicity: termwise + uniform bound";
        case 6: return "coercivity and boundedness with slack";
        case 7: return "brezis-lieb defect decay";
        case 8: return "(S+) diagnostic";
        case 9: return "existence runs (doublephase, pxy, logpert)";
        case 10: return "convex-solve uniqueness";
        case 11: return "condition audit detects misconfiguration";
    }
    return "?";
}

Outcome run_criterion(int k) {
    switch (k) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
        case 9: return criterion9();
        case 10: return criterion10();
        case 11: return criterion11();
    }
    return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (int k = 1; k <= 11; ++k) {
        if (!selected.empty() && !selected.count(k)) continue;
        Outcome out{false, "exception"};
        try {
            out = run_criterion(k);
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %2d: %s — %s\n", out.pass ? "PASS" : "FAIL", k,
                    criterion_name(k), out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures;
}

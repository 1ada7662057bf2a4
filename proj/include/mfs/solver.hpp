// solver.hpp — the energy functional I(u) = J(u) − ∫ F(x,u) dx, mountain-pass
// search with Cerami monitoring, convex minimization for pure sources, and the
// structural condition audit.
//
// The solver works on a collar-equipped quadrature: the energy of the
// zero-extension includes the interaction of u with the exterior, which keeps
// the modular definite (a nonzero constant has positive energy) and gives the
// discrete problem a genuine mountain-pass geometry.
//
// The critical point search runs in two phases. The path phase deforms a
// K-point discrete path from 0 to e by descending the path maximizer (and its
// neighbors) along −∇I with backtracking, redistributing by arclength. Once
// the path has localized the pass, the maximizer is polished by damped Newton
// steps on ∇I = 0. Every accepted solution is certified post hoc: residual
// dual-estimate, Cerami product, level c ≥ α, nontriviality.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfs/core.hpp"
#include "mfs/fields.hpp"
#include "mfs/grid.hpp"
#include "mfs/nfunction.hpp"
#include "mfs/nonlinearity.hpp"
#include "mfs/operator.hpp"

namespace mfs {

struct SolverConfig {
    NFunctionFamily family;
    Nonlinearity nl;
    GridDomain domain;
    double s = 0.25;
    int path_points = 17;  // K >= 3
    double residual_tol = 1e-6;
    double cerami_tol = 1e-6;
    double luxemburg_tol = 1e-10;
    int max_iterations = 600;
    int collar_width = -1;  // -1: bounding-box diameter
    int probe_random = 32;
    std::uint64_t seed = 12345;
};

struct SolverContext {
    SolverConfig cfg;
    KernelQuadrature quad;
    ProbeSet probes;
};

inline SolverContext make_context(SolverConfig cfg) {
    if (cfg.path_points < 3) throw ConfigError("solver: path points K >= 3");
    if (!(cfg.residual_tol > 0.0 && cfg.cerami_tol > 0.0))
        throw ConfigError("solver: tolerances must be > 0");
    SolverContext ctx{std::move(cfg), {}, {}};
    ctx.quad = kernel_quadrature(ctx.cfg.domain, ctx.cfg.s, ctx.cfg.collar_width);
    ctx.probes = build_probe_set(ctx.cfg.family, ctx.quad, ctx.cfg.probe_random,
                                 ctx.cfg.seed, ctx.cfg.luxemburg_tol);
    return ctx;
}

// I(u) = J(u) − Σ F(x_i, u_i) h^N
inline double energy(const GridFunction& u, const SolverContext& ctx) {
    const double meas = ctx.cfg.domain.cell_measure();
    const double load = deterministic_sum(u.size(), [&](std::size_t i) {
        return ctx.cfg.nl.F(ctx.cfg.domain.nodes[i], u[i]) * meas;
    });
    return modular_gagliardo(u, ctx.cfg.family, ctx.quad) - load;
}

// Nodal gradient in the Σ g_k v_k h^N duality.
inline GridFunction energy_gradient(const GridFunction& u, const SolverContext& ctx) {
    GridFunction g = gradient(u, ctx.cfg.family, ctx.quad);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] -= ctx.cfg.nl.f(ctx.cfg.domain.nodes[i], u[i]);
    return g;
}

// ── mountain-pass geometry ───────────────────────────────────────────────────

struct GeometryProbe {
    double rho = 0.0;
    double alpha = 0.0;
    GridFunction e;          // far endpoint with I(e) < 0 and [e] > ρ
    GridFunction u0;         // normalized seed direction for e
    double energy_e = 0.0;
    double validation_min = 0.0;  // fresh out-of-sample minimum at norm ρ
    int halvings = 0;
};

namespace detail {

inline std::vector<GridFunction> norm_scaled_batch(const SolverContext& ctx, double rho,
                                                   std::uint64_t seed, int count) {
    FieldSampler sampler{&ctx.cfg.domain, seed, true};
    std::vector<GridFunction> out;
    for (int i = 0; out.size() < static_cast<std::size_t>(count) && i < 4 * count; ++i) {
        GridFunction u = sampler(static_cast<std::size_t>(i));
        const double norm =
            luxemburg_gagliardo(u, ctx.cfg.family, ctx.quad, ctx.cfg.luxemburg_tol);
        if (!(norm > 0.0)) continue;
        out.push_back(scaled(u, rho / norm));
    }
    return out;
}

}  // namespace detail

// Finds ρ by halving from 1 until every sampled field of norm ρ has positive
// energy; α is half the sampled minimum. The far endpoint doubles t·u0 until
// the energy goes negative, which the superlinear growth of F guarantees.
inline GeometryProbe geometry_probe(const SolverContext& ctx) {
    GeometryProbe probe;
    double rho = 1.0;
    bool found = false;
    for (int halving = 0; halving < 40; ++halving) {
        const auto batch = detail::norm_scaled_batch(ctx, rho, ctx.cfg.seed, 8);
        if (batch.empty()) throw NumericsError("geometry probe: no usable samples");
        double emin = std::numeric_limits<double>::infinity();
        for (const auto& u : batch) emin = std::min(emin, energy(u, ctx));
        if (emin > 0.0) {
            probe.rho = rho;
            probe.alpha = 0.5 * emin;
            probe.halvings = halving;
            found = true;
            break;
        }
        rho *= 0.5;
    }
    if (!found)
        throw NumericsError(
            "geometry probe: no positive-energy radius after 40 halvings "
            "(near-zero growth condition likely violated at the discrete Poincare level)");

    {
        const auto fresh = detail::norm_scaled_batch(ctx, probe.rho, ctx.cfg.seed + 1000, 8);
        double emin = std::numeric_limits<double>::infinity();
        for (const auto& u : fresh) emin = std::min(emin, energy(u, ctx));
        probe.validation_min = emin;
    }

    GridFunction u0 = centered_bump(ctx.cfg.domain);
    const double n0 = luxemburg_gagliardo(u0, ctx.cfg.family, ctx.quad, ctx.cfg.luxemburg_tol);
    probe.u0 = scaled(u0, 1.0 / n0);
    const auto ray = [&](double t) { return energy(scaled(probe.u0, t), ctx); };

    // positive foot of the ray, then the first sign change by doubling
    double t_pos = std::max(probe.rho, 1e-6);
    for (int i = 0; i < 60 && ray(t_pos) <= 0.0; ++i) t_pos *= 0.5;
    if (!(ray(t_pos) > 0.0))
        throw NumericsError("geometry probe: ray energy has no positive foot");
    double t_neg = 2.0 * t_pos;
    bool crossed = false;
    for (int i = 0; i < 60; ++i) {
        if (ray(t_neg) < 0.0) {
            crossed = true;
            break;
        }
        t_pos = t_neg;
        t_neg *= 2.0;
    }
    if (!crossed)
        throw NumericsError(
            "geometry probe: energy never became negative along t*u0 (superlinearity of "
            "the source fails, e.g. f == 0)");
    for (int i = 0; i < 30; ++i) {
        const double mid = 0.5 * (t_pos + t_neg);
        (ray(mid) > 0.0 ? t_pos : t_neg) = mid;
    }

    // land just past the crossing so a linear path still resolves the barrier
    for (double t = 1.25 * t_neg;; t *= 1.5) {
        GridFunction e = scaled(probe.u0, t);
        const double en = energy(e, ctx);
        if (en < 0.0 &&
            luxemburg_gagliardo(e, ctx.cfg.family, ctx.quad, ctx.cfg.luxemburg_tol) >
                probe.rho) {
            probe.e = std::move(e);
            probe.energy_e = en;
            return probe;
        }
        if (t > 1e12 * t_neg)
            throw NumericsError("geometry probe: could not place the far endpoint");
    }
}

// ── reports ──────────────────────────────────────────────────────────────────

struct SolutionReport {
    GridFunction u;
    double energy_level = 0.0;  // c = I(u*)
    double rho = 0.0;
    double alpha = 0.0;
    double norm_u = 0.0;  // Luxemburg norm of u*
    double residual = 0.0;
    double cerami_product = 0.0;
    int iterations = 0;
    int newton_steps = 0;
    bool converged = false;
    bool nontrivial = false;
    std::string status;
};

// ── Newton polish ────────────────────────────────────────────────────────────

namespace detail {

inline double grad_norm_l2(const GridFunction& g, double meas) {
    double s = 0.0;
    for (double x : g.v) s += x * x;
    return std::sqrt(s * meas);
}

// Damped Newton on ∇I = 0 (or ∇G = 0 for the convex solve). Accepts a step
// only when the l2 gradient norm decreases. Returns the refined point and the
// number of accepted steps.
inline std::optional<std::pair<GridFunction, int>> newton_refine(
    const GridFunction& start, const SolverContext& ctx,
    const std::function<GridFunction(const GridFunction&)>& grad_fn, bool subtract_fprime,
    int max_steps = 40) {
    const std::size_t n = start.size();
    const double meas = ctx.cfg.domain.cell_measure();
    GridFunction u = start;
    GridFunction g = grad_fn(u);
    double gn = grad_norm_l2(g, meas);
    int accepted = 0;
    for (int it = 0; it < max_steps; ++it) {
        if (gn <= 1e-14 * std::max(1.0, u.max_abs())) break;
        auto Hopt = assemble_hessian(u, ctx.cfg.family, ctx.quad);
        if (!Hopt) return std::nullopt;
        Eigen::Map<Eigen::MatrixXd> H(Hopt->data(), static_cast<Eigen::Index>(n),
                                      static_cast<Eigen::Index>(n));
        if (subtract_fprime && ctx.cfg.nl.fprime)
            for (std::size_t k = 0; k < n; ++k)
                H(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) -=
                    ctx.cfg.nl.fprime(ctx.cfg.domain.nodes[k], u[k]);
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) rhs(static_cast<Eigen::Index>(k)) = -g[k];
        Eigen::VectorXd delta = H.partialPivLu().solve(rhs);
        if (!delta.allFinite()) return std::nullopt;

        double kappa = 1.0;
        bool ok = false;
        for (int ls = 0; ls < 30; ++ls) {
            GridFunction trial = u;
            for (std::size_t k = 0; k < n; ++k)
                trial[k] += kappa * delta(static_cast<Eigen::Index>(k));
            GridFunction gt = grad_fn(trial);
            const double gtn = grad_norm_l2(gt, meas);
            if (gtn < (1.0 - 1e-4 * kappa) * gn) {
                u = std::move(trial);
                g = std::move(gt);
                gn = gtn;
                ok = true;
                ++accepted;
                break;
            }
            kappa *= 0.5;
            if (kappa < 1e-12) break;
        }
        if (!ok) break;
    }
    if (accepted == 0) return std::nullopt;
    return std::make_pair(u, accepted);
}

// One backtracking Armijo step along −∇I. The displacement is capped by
// move_cap so a path point deforms locally instead of tunneling through the
// barrier in one accepted jump. Returns the accepted step length (0 when the
// floor was hit without descent).
inline double descend_point(GridFunction& u, double& eu, const SolverContext& ctx,
                            double step_init, double move_cap) {
    const double meas = ctx.cfg.domain.cell_measure();
    const GridFunction g = energy_gradient(u, ctx);
    double g2 = 0.0;
    double ginf = 0.0;
    for (double x : g.v) {
        g2 += x * x;
        ginf = std::max(ginf, std::abs(x));
    }
    g2 *= meas;
    if (g2 == 0.0 || ginf == 0.0) return 0.0;
    double step = step_init;
    if (move_cap > 0.0) step = std::min(step, move_cap / ginf);
    for (int ls = 0; ls < 60; ++ls) {
        GridFunction trial = axpy(-step, g, u);
        const double et = energy(trial, ctx);
        if (et <= eu - 1e-4 * step * g2) {
            u = std::move(trial);
            eu = et;
            return step;
        }
        step *= 0.5;
        if (step < 1e-14) break;
    }
    return 0.0;
}

inline void redistribute_by_arclength(std::vector<GridFunction>& path,
                                      std::vector<double>& lengths_out) {
    const std::size_t K = path.size();
    std::vector<double> cum(K, 0.0);
    for (std::size_t i = 1; i < K; ++i) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < path[i].size(); ++k) {
            const double d = path[i][k] - path[i - 1][k];
            d2 += d * d;
        }
        cum[i] = cum[i - 1] + std::sqrt(d2);
    }
    lengths_out = cum;
    const double total = cum.back();
    if (!(total > 0.0)) return;
    std::vector<GridFunction> fresh(K);
    fresh.front() = path.front();
    fresh.back() = path.back();
    std::size_t seg = 1;
    for (std::size_t i = 1; i + 1 < K; ++i) {
        const double target = total * static_cast<double>(i) / (K - 1);
        while (seg < K - 1 && cum[seg] < target) ++seg;
        const double span = cum[seg] - cum[seg - 1];
        const double wjs = span > 0.0 ? (target - cum[seg - 1]) / span : 0.0;
        fresh[i] = axpy(wjs, sub(path[seg], path[seg - 1]), path[seg - 1]);
    }
    path = std::move(fresh);
}

}  // namespace detail

// ── mountain pass ────────────────────────────────────────────────────────────

inline SolutionReport mountain_pass(const SolverContext& ctx) {
    const GeometryProbe geom = geometry_probe(ctx);
    const int K = ctx.cfg.path_points;

    std::vector<GridFunction> path(static_cast<std::size_t>(K));
    std::vector<double> E(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) {
        path[static_cast<std::size_t>(i)] =
            scaled(geom.e, static_cast<double>(i) / (K - 1));
        E[static_cast<std::size_t>(i)] = energy(path[static_cast<std::size_t>(i)], ctx);
    }

    SolutionReport rep;
    rep.rho = geom.rho;
    rep.alpha = geom.alpha;

    auto certify = [&](const GridFunction& cand, int iters, int newton) -> bool {
        const double level = energy(cand, ctx);
        if (!(level >= geom.alpha)) return false;
        const double norm =
            luxemburg_gagliardo(cand, ctx.cfg.family, ctx.quad, ctx.cfg.luxemburg_tol);
        if (!(norm > 0.0)) return false;
        const GridFunction g = energy_gradient(cand, ctx);
        const double resid = dual_norm_estimate(g, ctx.probes, {{&cand, norm}});
        const double cerami = (1.0 + norm) * resid;
        if (resid <= ctx.cfg.residual_tol && cerami <= ctx.cfg.cerami_tol) {
            rep.u = cand;
            rep.energy_level = level;
            rep.norm_u = norm;
            rep.residual = resid;
            rep.cerami_product = cerami;
            rep.iterations = iters;
            rep.newton_steps = newton;
            rep.converged = true;
            rep.nontrivial = true;
            rep.status = "converged";
            return true;
        }
        return false;
    };

    double step_hint = 1.0;
    int newton_total = 0;
    double best_resid = std::numeric_limits<double>::infinity();
    GridFunction best_u;
    double best_level = 0.0, best_norm = 0.0, best_cerami = 0.0;

    // cap the per-iteration displacement to a fraction of the path scale
    const double move_cap = geom.e.max_abs() / (2.0 * K);

    for (int iter = 1; iter <= ctx.cfg.max_iterations; ++iter) {
        std::size_t imax = 1;
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            if (E[i] > E[imax]) imax = i;
        if (!(E[imax] > 0.0))
            throw NumericsError("mountain pass: path maximum fell to 0 "
                                "(geometry inconsistency)");

        for (std::size_t idx :
             {imax > 1 ? imax - 1 : imax, imax, imax + 2 < path.size() ? imax + 1 : imax}) {
            const double used =
                detail::descend_point(path[idx], E[idx], ctx, 2.0 * step_hint, move_cap);
            if (idx == imax && used > 0.0) step_hint = used;
        }

        if (iter % 5 == 0) {
            std::vector<double> cum;
            detail::redistribute_by_arclength(path, cum);
            for (std::size_t i = 1; i + 1 < path.size(); ++i) E[i] = energy(path[i], ctx);
        }

        const bool check_now = (iter % 10 == 0) || iter == ctx.cfg.max_iterations;
        if (check_now) {
            std::size_t icur = 1;
            for (std::size_t i = 1; i + 1 < path.size(); ++i)
                if (E[i] > E[icur]) icur = i;
            if (certify(path[icur], iter, newton_total)) return rep;

            // track the best iterate for a non-convergence report
            const GridFunction g = energy_gradient(path[icur], ctx);
            const double norm = luxemburg_gagliardo(path[icur], ctx.cfg.family, ctx.quad,
                                                    ctx.cfg.luxemburg_tol);
            const double resid = dual_norm_estimate(g, ctx.probes, {{&path[icur], norm}});
            if (resid < best_resid) {
                best_resid = resid;
                best_u = path[icur];
                best_level = E[icur];
                best_norm = norm;
                best_cerami = (1.0 + norm) * resid;
            }
        }

        if (iter >= 20 && iter % 15 == 0) {
            auto refined = detail::newton_refine(
                path[imax], ctx,
                [&](const GridFunction& w) { return energy_gradient(w, ctx); }, true);
            if (refined) {
                newton_total += refined->second;
                const double level = energy(refined->first, ctx);
                if (level >= geom.alpha && certify(refined->first, iter, newton_total))
                    return rep;
            }
        }
    }

    rep.u = best_u;
    rep.energy_level = best_level;
    rep.norm_u = best_norm;
    rep.residual = best_resid;
    rep.cerami_product = best_cerami;
    rep.iterations = ctx.cfg.max_iterations;
    rep.newton_steps = newton_total;
    rep.converged = false;
    rep.nontrivial = best_norm > 0.0 && best_level > 0.0;
    rep.status = "iteration cap reached";
    return rep;
}

// ── convex pure-source solve ─────────────────────────────────────────────────

struct ConvexSolveReport {
    GridFunction u;
    double energy_value = 0.0;     // J(u) − Σ source·u h^N at the minimizer
    double optimality_gap = 0.0;   // dual estimate of the residual
    double restart_spread = 0.0;   // max pairwise Luxemburg distance of restarts
    double fixed_point_decrease = 0.0;  // energy drop of one extra descent step
    bool unique = false;
    bool converged = false;
    int iterations = 0;
    std::string status;
};

// Minimizes u ↦ J(u) − Σ source·u h^N (strictly convex for strictly
// increasing densities) from the origin and from 3 random restarts; the
// restart spread certifies uniqueness.
inline ConvexSolveReport convex_solve(const GridFunction& source, const SolverContext& ctx,
                                      double uniqueness_tol = 1e-6) {
    if (source.size() != ctx.cfg.domain.n_interior())
        throw ConfigError("convex_solve: source does not match the domain");
    const double meas = ctx.cfg.domain.cell_measure();

    auto value = [&](const GridFunction& u) {
        double dot = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) dot += source[i] * u[i];
        return modular_gagliardo(u, ctx.cfg.family, ctx.quad) - dot * meas;
    };
    auto grad = [&](const GridFunction& u) {
        GridFunction g = gradient(u, ctx.cfg.family, ctx.quad);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] -= source[i];
        return g;
    };

    auto minimize = [&](GridFunction u, int& iters) {
        double eu = value(u);
        double step = 1.0;
        for (int it = 0; it < ctx.cfg.max_iterations; ++it) {
            ++iters;
            GridFunction g = grad(u);
            const double resid = dual_norm_estimate(g, ctx.probes);
            if (resid <= ctx.cfg.residual_tol) break;
            auto refined = detail::newton_refine(u, ctx, grad, false, 8);
            if (refined) {
                u = std::move(refined->first);
                eu = value(u);
                continue;
            }
            // Armijo fallback
            double g2 = 0.0;
            for (double x : g.v) g2 += x * x;
            g2 *= meas;
            double sstep = 2.0 * step;
            bool moved = false;
            for (int ls = 0; ls < 60; ++ls) {
                GridFunction trial = axpy(-sstep, g, u);
                const double et = value(trial);
                if (et <= eu - 1e-4 * sstep * g2) {
                    u = std::move(trial);
                    eu = et;
                    step = sstep;
                    moved = true;
                    break;
                }
                sstep *= 0.5;
                if (sstep < 1e-14) break;
            }
            if (!moved) break;
        }
        return u;
    };

    ConvexSolveReport rep;
    int iters = 0;
    GridFunction best = minimize(GridFunction(source.size()), iters);

    std::vector<GridFunction> restarts{best};
    std::mt19937_64 rng(ctx.cfg.seed + 7);
    for (int rsi = 0; rsi < 3; ++rsi) {
        GridFunction init = gaussian_field(ctx.cfg.domain, rng);
        restarts.push_back(minimize(init, iters));
    }
    for (std::size_t a = 0; a < restarts.size(); ++a)
        for (std::size_t b = a + 1; b < restarts.size(); ++b) {
            const double d = luxemburg_gagliardo(sub(restarts[a], restarts[b]),
                                                 ctx.cfg.family, ctx.quad,
                                                 ctx.cfg.luxemburg_tol);
            rep.restart_spread = std::max(rep.restart_spread, d);
        }
    rep.unique = rep.restart_spread <= uniqueness_tol;

    rep.u = std::move(best);
    rep.iterations = iters;
    rep.energy_value = value(rep.u);
    rep.optimality_gap = dual_norm_estimate(grad(rep.u), ctx.probes);
    rep.converged = rep.optimality_gap <= ctx.cfg.residual_tol;
    {
        // one further descent step must not decrease the objective beyond tol
        const GridFunction g = grad(rep.u);
        double after = rep.energy_value;
        double step = 1.0;
        for (int ls = 0; ls < 60; ++ls) {
            const double et = value(axpy(-step, g, rep.u));
            after = std::min(after, et);
            step *= 0.5;
            if (step < 1e-14) break;
        }
        rep.fixed_point_decrease = std::max(0.0, rep.energy_value - after);
    }
    rep.status = rep.unique ? (rep.converged ? "converged" : "residual above tolerance")
                            : "restarts disagree: strict convexity lost";
    return rep;
}

// ── condition audit ──────────────────────────────────────────────────────────

struct ConditionReport {
    bool pass = false;
    double margin = 0.0;
    double witness_t = 0.0;
    std::string note;
};

struct AuditReport {
    ConditionReport f1, f2, f3, f4;
    double lambda1 = 0.0;
    double R_used = 0.0;
    bool all_pass() const { return f1.pass && f2.pass && f3.pass && f4.pass; }
};

// Samples the four structural conditions of the source term. λ̂₁ is the
// sampling lower bound of the Poincaré constant, which makes the near-zero
// check conservative toward rejection.
inline AuditReport condition_audit(const Nonlinearity& nl, const NFunctionFamily& fam,
                                   const GridDomain& dom, const KernelQuadrature& quad,
                                   std::uint64_t seed = 12345) {
    AuditReport rep;
    rep.lambda1 = poincare_lambda1_estimate(dom, fam, quad, 24, seed).value;

    std::vector<Point> xs;
    const std::size_t stride = std::max<std::size_t>(1, dom.n_interior() / 32);
    for (std::size_t i = 0; i < dom.n_interior(); i += stride) xs.push_back(dom.nodes[i]);

    // (f1): growth bound |f| <= C(1 + t ψ) with the Ψ-window above m
    {
        ConditionReport& c = rep.f1;
        const bool window = fam.m < nl.l_psi && nl.l_psi <= nl.m_psi;
        double worst = 0.0;
        double worst_t = 0.0;
        for (const Point& x : xs)
            for (int i = 0; i <= 120; ++i) {
                const double t = std::pow(10.0, -4.0 + 10.0 * i / 120.0);
                const double bound = nl.C * (1.0 + nl.psi_density(x, t));
                const double ratio = std::abs(nl.f(x, t)) / bound;
                if (ratio > worst) {
                    worst = ratio;
                    worst_t = t;
                }
            }
        c.margin = 1.0 - worst;
        c.witness_t = worst_t;
        c.pass = window && worst <= 1.0 + 1e-9;
        if (!window) c.note = "Psi exponent window violated (needs m < l_psi <= m_psi)";
    }

    // (f2): F̄ >= 0 and Γ-domination for |t| >= R
    {
        ConditionReport& c = rep.f2;
        const double Nd = static_cast<double>(dom.dim);
        const bool window = Nd / fam.l < nl.l_gamma();
        const double Rlo = std::isfinite(nl.R) ? nl.R : 1.0;
        rep.R_used = Rlo;
        double min_fbar = std::numeric_limits<double>::infinity();
        double min_margin = std::numeric_limits<double>::infinity();
        double witness = Rlo;
        for (const Point& x : xs)
            for (int i = 0; i <= 160; ++i) {
                const double t = Rlo * std::pow(10.0, 8.0 * i / 160.0);
                const double fbar = nl.Fbar(x, t);
                const double dom_margin =
                    nl.C * fbar - nl.Gamma(nl.F(x, t) / std::pow(t, fam.l));
                if (fbar < min_fbar) {
                    min_fbar = fbar;
                    witness = t;
                }
                min_margin = std::min(min_margin, dom_margin);
            }
        c.margin = std::min(min_fbar, min_margin);
        c.witness_t = witness;
        c.pass = window && std::isfinite(nl.R) && min_fbar >= 0.0 && min_margin >= 0.0;
        if (min_fbar < 0.0)
            c.note = "negative defect Fbar witness";
        else if (!window)
            c.note = "Gamma exponent window violated (needs N/l < l_Gamma)";
        else if (!std::isfinite(nl.R))
            c.note = "no finite domination threshold R found";
        else if (min_margin < 0.0)
            c.note = "Gamma domination margin negative";
    }

    // (f3): divergence of f / t^{m−1}, checked per sample point
    {
        ConditionReport& c = rep.f3;
        c.pass = true;
        c.margin = std::numeric_limits<double>::infinity();
        for (const Point& x : xs) {
            double prev = 0.0;
            bool increasing = true;
            double first = 0.0, last = 0.0;
            for (int k = 1; k <= 6; ++k) {
                const double t = std::pow(10.0, k);
                const double ratio = nl.f(x, t) / std::pow(t, fam.m - 1.0);
                if (k == 1)
                    first = ratio;
                else if (ratio <= prev)
                    increasing = false;
                prev = ratio;
                last = ratio;
            }
            c.margin = std::min(c.margin, first > 0.0 ? last / first : 0.0);
            if (!(increasing && last > 10.0 * std::max(first, 0.0))) c.pass = false;
        }
        if (!c.pass) c.note = "f / t^{m-1} does not diverge on the sampled range";
    }

    // (f4): near-zero limit of f / (t φ̂) against 1/λ̂₁, estimated at the
    // smallest sampled level
    {
        ConditionReport& c = rep.f4;
        double limit_est = 0.0;
        const double t_small = 1e-8;
        for (const Point& x : xs) {
            const double dens = eval_density(fam, x, x, t_small);
            if (!(dens > 0.0)) continue;
            limit_est = std::max(limit_est, std::abs(nl.f(x, t_small)) / dens);
        }
        c.witness_t = t_small;
        const double limit_cap = 1.0 / rep.lambda1;
        c.margin = limit_cap - limit_est;
        c.pass = limit_est < limit_cap;
        if (!c.pass) c.note = "near-zero ratio reaches 1/lambda1";
    }

    return rep;
}

}  // namespace mfs

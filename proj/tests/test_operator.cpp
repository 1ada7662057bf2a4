#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mfs/operator.hpp"

using namespace mfs;
using Catch::Approx;

namespace {

struct Setup {
    GridDomain dom = unit_box(2, 8);
    NFunctionFamily fam = double_phase(2.0, 3.0, 1.0);
    KernelQuadrature quad = kernel_quadrature(dom, 0.25, 0);
};

}  // namespace

TEST_CASE("pairing vanishes at zero and is bracketed by the modular", "[operator]") {
    Setup s;
    std::mt19937_64 rng(3);
    const GridFunction zero(s.dom.n_interior());
    const GridFunction v = gaussian_field(s.dom, rng);
    CHECK(derivative_pairing(zero, v, s.fam, s.quad) == 0.0);

    for (int trial = 0; trial < 10; ++trial) {
        const GridFunction u = gaussian_field(s.dom, rng);
        const double J = modular_gagliardo(u, s.fam, s.quad);
        const double puu = derivative_pairing(u, u, s.fam, s.quad);
        CHECK(s.fam.l * J <= puu * (1.0 + 1e-12));
        CHECK(puu <= s.fam.m * J * (1.0 + 1e-12));
    }

    GridFunction mismatched(5);
    CHECK_THROWS_AS(derivative_pairing(mismatched, v, s.fam, s.quad), ConfigError);
}

TEST_CASE("pairing is linear in the test direction", "[operator]") {
    Setup s;
    std::mt19937_64 rng(29);
    const GridFunction u = gaussian_field(s.dom, rng);
    const GridFunction v1 = gaussian_field(s.dom, rng);
    const GridFunction v2 = gaussian_field(s.dom, rng);
    const double a = 0.7, b = -1.3;
    const double lhs = derivative_pairing(u, axpy(a, v1, scaled(v2, b)), s.fam, s.quad);
    const double rhs = a * derivative_pairing(u, v1, s.fam, s.quad) +
                       b * derivative_pairing(u, v2, s.fam, s.quad);
    CHECK(lhs == Approx(rhs).epsilon(1e-11));
}

TEST_CASE("central differences of the modular match the pairing at order 2",
          "[operator]") {
    Setup s;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const GridFunction u = gaussian_field(s.dom, rng);
        const GridFunction v = gaussian_field(s.dom, rng);
        const double exact = derivative_pairing(u, v, s.fam, s.quad);
        double errs[3];
        double h = 1e-2;
        for (int k = 0; k < 3; ++k, h *= 0.5) {
            const double jp = modular_gagliardo(axpy(h, v, u), s.fam, s.quad);
            const double jm = modular_gagliardo(axpy(-h, v, u), s.fam, s.quad);
            errs[k] = std::abs((jp - jm) / (2.0 * h) - exact);
        }
        CHECK(errs[0] / errs[1] >= 3.5);
        CHECK(errs[0] / errs[1] <= 4.5);
        CHECK(errs[1] / errs[2] >= 3.5);
        CHECK(errs[1] / errs[2] <= 4.5);
    }
}

TEST_CASE("gradient is the exact dual of the pairing", "[operator]") {
    Setup s;
    std::mt19937_64 rng(11);
    const double meas = s.dom.cell_measure();

    const GridFunction zero(s.dom.n_interior());
    CHECK(gradient(zero, s.fam, s.quad).max_abs() == 0.0);

    for (int trial = 0; trial < 5; ++trial) {
        const GridFunction u = gaussian_field(s.dom, rng);
        const GridFunction v = gaussian_field(s.dom, rng);
        const GridFunction g = gradient(u, s.fam, s.quad);
        KahanSum dot;
        for (std::size_t k = 0; k < g.size(); ++k) dot.add(g[k] * v[k]);
        const double via_grad = dot.total() * meas;
        const double direct = derivative_pairing(u, v, s.fam, s.quad);
        CHECK(via_grad == Approx(direct).epsilon(1e-12));

        KahanSum guu;
        for (std::size_t k = 0; k < g.size(); ++k) guu.add(g[k] * u[k]);
        CHECK(guu.total() * meas >= 0.0);
    }
}

TEST_CASE("pointwise action: zero, oddness, Galerkin consistency", "[operator]") {
    const GridDomain dom = unit_box(2, 6);
    const auto fam = double_phase(2.0, 2.5, 1.0);
    const KernelQuadrature collar = kernel_quadrature(dom, 0.25, -1);
    const KernelQuadrature plain = kernel_quadrature(dom, 0.25, 0);

    const GridFunction zero(dom.n_interior());
    CHECK(apply_pointwise(zero, 3, fam, collar).value == 0.0);
    CHECK(apply_pointwise(zero, 3, fam, collar).tail_bound == 0.0);

    std::mt19937_64 rng(13);
    const GridFunction u = gaussian_field(dom, rng);
    GridFunction mu = scaled(u, -1.0);
    for (std::size_t k : {std::size_t(0), std::size_t(17), std::size_t(35)}) {
        const PointwiseApply a = apply_pointwise(u, k, fam, collar);
        const PointwiseApply b = apply_pointwise(mu, k, fam, collar);
        CHECK(a.value == Approx(-b.value).epsilon(1e-12).margin(1e-14));
        CHECK(a.tail_bound >= 0.0);
    }

    // Σ_k A(u)(x_k) v_k h^N reproduces the pairing on the same pair universe
    const GridFunction v = gaussian_field(dom, rng);
    KahanSum lhs;
    double tail_budget = 0.0;
    for (std::size_t k = 0; k < dom.n_interior(); ++k) {
        const PointwiseApply a = apply_pointwise(u, k, fam, collar);
        lhs.add(a.value * v[k]);
        tail_budget += a.tail_bound * std::abs(v[k]);
    }
    const double meas = dom.cell_measure();
    const double pairing = derivative_pairing(u, v, fam, collar);
    CHECK(std::abs(lhs.total() * meas - pairing) <=
          tail_budget * meas + 1e-10 * std::abs(pairing));

    CHECK_THROWS_AS(apply_pointwise(u, 0, fam, plain), ConfigError);
    CHECK_THROWS_AS(apply_pointwise(u, dom.n_interior(), fam, collar),
                    std::domain_error);
}

TEST_CASE("monotonicity gap is termwise nonnegative", "[operator]") {
    Setup s;
    std::mt19937_64 rng(19);
    const GridFunction u = gaussian_field(s.dom, rng);
    CHECK(monotonicity_gap(u, u, s.fam, s.quad) == 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        const GridFunction a = gaussian_field(s.dom, rng);
        const GridFunction b = gaussian_field(s.dom, rng);
        const MonotonicityReport rep = monotonicity_gap_detailed(a, b, s.fam, s.quad);
        CHECK(rep.min_term >= -1e-12 * rep.max_abs_term);
        CHECK(rep.gap >= -1e-12 * rep.max_abs_term);

        // uniform monotonicity bound for the increasing-density family
        const double bound = std::pow(4.0, 1.0 - s.fam.m) * s.fam.l *
                             modular_gagliardo(sub(a, b), s.fam, s.quad);
        CHECK(rep.gap >= bound * (1.0 - 1e-10));
    }
}

TEST_CASE("splus diagnostic separates vanishing from stuck sequences", "[operator]") {
    Setup s;
    std::mt19937_64 rng(23);
    const GridFunction u = scaled(gaussian_field(s.dom, rng), 0.1);
    const GridFunction w = scaled(gaussian_field(s.dom, rng), 0.1);

    // constant sequence at u: everything is exactly zero
    const SPlusReport same = splus_diagnostic({u, u, u}, u, s.fam, s.quad);
    for (const auto& e : same.entries) {
        CHECK(e.a == 0.0);
        CHECK(e.b == 0.0);
    }
    CHECK(same.implication_holds);

    // u_n = u + w/n: both columns decrease monotonically
    std::vector<GridFunction> seq;
    for (int n = 1; n <= 32; n *= 2) seq.push_back(axpy(1.0 / n, w, u));
    const SPlusReport conv = splus_diagnostic(seq, u, s.fam, s.quad);
    for (std::size_t i = 1; i < conv.entries.size(); ++i) {
        CHECK(conv.entries[i].a < conv.entries[i - 1].a);
        CHECK(conv.entries[i].b < conv.entries[i - 1].b);
    }
    CHECK(conv.implication_holds);

    // u_n = u + w fixed: the pairing column stays bounded away from zero
    const SPlusReport stuck =
        splus_diagnostic({axpy(1.0, w, u), axpy(1.0, w, u)}, u, s.fam, s.quad);
    for (const auto& e : stuck.entries) CHECK(e.a > 10.0 * stuck.tol_a);

    CHECK_THROWS_AS(splus_diagnostic({}, u, s.fam, s.quad), ConfigError);
}

TEST_CASE("probe-set dual estimate is a certified lower bound", "[operator]") {
    Setup s;
    const ProbeSet probes = build_probe_set(s.fam, s.quad, 8, 99);
    REQUIRE(probes.coord_norms.size() == s.dom.n_interior());
    for (double n : probes.coord_norms) CHECK(n > 0.0);

    std::mt19937_64 rng(31);
    const GridFunction u = gaussian_field(s.dom, rng);
    const GridFunction g = gradient(u, s.fam, s.quad);
    const double est = dual_norm_estimate(g, probes);
    CHECK(est > 0.0);

    // the estimate dominates the pairing against any probe direction
    for (const GridFunction& v : probes.random_probes) {
        KahanSum dot;
        for (std::size_t k = 0; k < g.size(); ++k) dot.add(g[k] * v[k]);
        CHECK(std::abs(dot.total()) * probes.meas <= est * (1.0 + 1e-12));
    }

    const GridFunction zero(s.dom.n_interior());
    CHECK(dual_norm_estimate(zero, probes) == 0.0);
}

TEST_CASE("hessian matches differenced gradients", "[operator]") {
    const GridDomain dom = unit_box(2, 5);
    const auto fam = double_phase(2.0, 3.0, 1.0);
    const KernelQuadrature quad = kernel_quadrature(dom, 0.25, 0);
    std::mt19937_64 rng(37);
    const GridFunction u = gaussian_field(dom, rng);
    const GridFunction v = gaussian_field(dom, rng);
    const auto H = assemble_hessian(u, fam, quad);
    REQUIRE(H.has_value());

    const std::size_t n = u.size();
    const double h = 1e-6;
    const GridFunction gp = gradient(axpy(h, v, u), fam, quad);
    const GridFunction gm = gradient(axpy(-h, v, u), fam, quad);
    for (std::size_t row = 0; row < n; row += 7) {
        double hv = 0.0;
        for (std::size_t col = 0; col < n; ++col) hv += (*H)[row * n + col] * v[col];
        const double fd = (gp[row] - gm[row]) / (2.0 * h);
        CHECK(hv == Approx(fd).epsilon(5e-5).margin(1e-8));
    }
}

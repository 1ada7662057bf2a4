// grid.hpp — discretization of Ω, nodal fields with zero exterior extension,
// the singular pair measure, modulars, and Luxemburg norms.
//
// Ω is meshed with cell-centered uniform cells of width h. A GridFunction
// stores values on interior nodes only; every other node of space is 0 by
// construction. KernelQuadrature precomputes the pair weights
//
//     w_ij = h^{2N} / |x_i − x_j|^N
//
// over either interior×interior pairs (collar width 0: the double integral
// over Ω×Ω) or interior×(interior ∪ exterior collar) pairs (collar width > 0:
// the zero-extension energy, which also sees the interaction of u with the
// exterior where it vanishes). Diagonal pairs are excluded; the difference
// quotient is finite off the diagonal and the diagonal has measure zero in
// the continuum. With a collar the modular vanishes only at u ≡ 0; without
// one it is the literal Ω×Ω modular, which is blind to constants.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mfs/core.hpp"
#include "mfs/nfunction.hpp"

namespace mfs {

// ── domain ───────────────────────────────────────────────────────────────────

struct GridDomain {
    int dim = 2;
    Point lo{0.0, 0.0};
    double h = 0.0;
    int nx[2] = {0, 1};                // cells per axis (nx[1] = 1 in 1-D)
    std::vector<std::uint8_t> mask;    // row-major over the box lattice
    std::vector<Point> nodes;          // interior node positions, mask order
    std::vector<std::int32_t> interior_index;  // lattice id → interior id, −1 outside

    std::size_t n_interior() const { return nodes.size(); }
    double cell_measure() const { return dim == 1 ? h : h * h; }
    Point center() const {
        return {lo[0] + 0.5 * h * nx[0], dim == 2 ? lo[1] + 0.5 * h * nx[1] : 0.0};
    }
    Point hi() const { return {lo[0] + h * nx[0], dim == 2 ? lo[1] + h * nx[1] : 0.0}; }
    // Covers the bounding box diagonal, in cells.
    int diameter_cells() const {
        return static_cast<int>(
            std::ceil(std::hypot(static_cast<double>(nx[0]),
                                 dim == 2 ? static_cast<double>(nx[1]) : 0.0)));
    }
};

namespace detail {

inline void finalize_domain(GridDomain& dom) {
    dom.nodes.clear();
    dom.interior_index.assign(dom.mask.size(), -1);
    for (std::size_t id = 0; id < dom.mask.size(); ++id) {
        if (!dom.mask[id]) continue;
        const int ix = static_cast<int>(id) % dom.nx[0];
        const int iy = static_cast<int>(id) / dom.nx[0];
        dom.interior_index[id] = static_cast<std::int32_t>(dom.nodes.size());
        dom.nodes.push_back({dom.lo[0] + (ix + 0.5) * dom.h,
                             dom.dim == 2 ? dom.lo[1] + (iy + 0.5) * dom.h : 0.0});
    }
    if (dom.nodes.empty()) throw ConfigError("domain has no interior node");
}

// Even–odd ray casting against the polygon edges.
inline bool point_in_polygon(const Point& p, const std::vector<Point>& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool straddles = (poly[i][1] > p[1]) != (poly[j][1] > p[1]);
        if (straddles) {
            const double x_cross = poly[j][0] + (poly[i][0] - poly[j][0]) *
                                                    (p[1] - poly[j][1]) /
                                                    (poly[i][1] - poly[j][1]);
            if (p[0] < x_cross) inside = !inside;
        }
    }
    return inside;
}

}  // namespace detail

inline GridDomain box_domain(int dim, Point lo, int n0, int n1, double h) {
    if (dim != 1 && dim != 2) throw ConfigError("box_domain: dim must be 1 or 2");
    if (n0 < 1 || (dim == 2 && n1 < 1) || !(h > 0.0))
        throw ConfigError("box_domain: need at least one cell and h > 0");
    GridDomain dom;
    dom.dim = dim;
    dom.lo = lo;
    dom.h = h;
    dom.nx[0] = n0;
    dom.nx[1] = dim == 2 ? n1 : 1;
    dom.mask.assign(static_cast<std::size_t>(dom.nx[0]) * dom.nx[1], 1);
    detail::finalize_domain(dom);
    return dom;
}

// Unit box [0,1]^dim with n cells per axis.
inline GridDomain unit_box(int dim, int n) {
    return box_domain(dim, {0.0, 0.0}, n, n, 1.0 / n);
}

inline GridDomain polygon_domain(const std::vector<Point>& vertices, double h) {
    if (vertices.size() < 3) throw ConfigError("polygon_domain: need >= 3 vertices");
    if (!(h > 0.0)) throw ConfigError("polygon_domain: h > 0");
    Point lo = vertices[0], hi = vertices[0];
    for (const auto& v : vertices) {
        lo[0] = std::min(lo[0], v[0]);
        lo[1] = std::min(lo[1], v[1]);
        hi[0] = std::max(hi[0], v[0]);
        hi[1] = std::max(hi[1], v[1]);
    }
    GridDomain dom;
    dom.dim = 2;
    dom.lo = lo;
    dom.h = h;
    dom.nx[0] = std::max(1, static_cast<int>(std::ceil((hi[0] - lo[0]) / h)));
    dom.nx[1] = std::max(1, static_cast<int>(std::ceil((hi[1] - lo[1]) / h)));
    dom.mask.assign(static_cast<std::size_t>(dom.nx[0]) * dom.nx[1], 0);
    for (int iy = 0; iy < dom.nx[1]; ++iy)
        for (int ix = 0; ix < dom.nx[0]; ++ix) {
            const Point c{lo[0] + (ix + 0.5) * h, lo[1] + (iy + 0.5) * h};
            if (detail::point_in_polygon(c, vertices))
                dom.mask[static_cast<std::size_t>(iy) * dom.nx[0] + ix] = 1;
        }
    detail::finalize_domain(dom);
    return dom;
}

// ── grid functions ───────────────────────────────────────────────────────────

// Nodal values on interior nodes; zero outside Ω by construction.
struct GridFunction {
    std::vector<double> v;

    GridFunction() = default;
    explicit GridFunction(std::size_t n, double fill = 0.0) : v(n, fill) {}

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    bool all_finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }
    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

inline GridFunction sample_on(const GridDomain& dom,
                              const std::function<double(const Point&)>& f) {
    GridFunction u(dom.n_interior());
    for (std::size_t i = 0; i < dom.n_interior(); ++i) u[i] = f(dom.nodes[i]);
    return u;
}

inline GridFunction axpy(double a, const GridFunction& x, const GridFunction& y) {
    GridFunction r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + y[i];
    return r;
}

inline GridFunction scaled(const GridFunction& x, double a) {
    GridFunction r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
    return r;
}

inline GridFunction sub(const GridFunction& x, const GridFunction& y) {
    return axpy(-1.0, y, x);
}

// ── kernel quadrature ────────────────────────────────────────────────────────

struct QuadPair {
    std::int32_t i;  // extended node ids, i < j lexicographic
    std::int32_t j;
    double w;        // h^{2N} / |x_i − x_j|^N
    double inv_ds;   // |x_i − x_j|^{−s}
};

struct KernelQuadrature {
    GridDomain domain;
    double s = 0.5;
    int collar_width = 0;
    int enx[2] = {0, 1};
    Point elo{0.0, 0.0};
    std::vector<Point> nodes;                   // extended lattice nodes
    std::vector<std::int32_t> interior_id;      // per extended node, −1 outside Ω
    std::vector<std::int32_t> node_of_interior; // interior id → extended node id
    std::vector<QuadPair> pairs;

    double value_at(const GridFunction& u, std::int32_t node) const {
        const std::int32_t id = interior_id[node];
        return id >= 0 ? u[static_cast<std::size_t>(id)] : 0.0;
    }

    // D_s u(x_i, x_j) = (u(x_i) − u(x_j)) / |x_i − x_j|^s, i ≠ j.
    double ds(const GridFunction& u, std::int32_t i, std::int32_t j) const {
        if (i == j) throw std::domain_error("ds_quotient: requires i != j");
        const double d = distance(nodes[i], nodes[j], domain.dim);
        return (value_at(u, i) - value_at(u, j)) * std::pow(d, -s);
    }
};

// collar_width 0: interior×interior pairs (the Ω×Ω modular). collar_width > 0:
// adds interior×exterior pairs out to the given collar (−1 selects the
// bounding-box diameter). Exterior×exterior pairs never contribute and are
// not stored.
inline KernelQuadrature kernel_quadrature(const GridDomain& dom, double s,
                                          int collar_width = 0) {
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("kernel_quadrature: s in (0,1)");
    if (collar_width < 0) collar_width = dom.diameter_cells();

    KernelQuadrature quad;
    quad.domain = dom;
    quad.s = s;
    quad.collar_width = collar_width;
    quad.enx[0] = dom.nx[0] + 2 * collar_width;
    quad.enx[1] = dom.dim == 2 ? dom.nx[1] + 2 * collar_width : 1;
    quad.elo = {dom.lo[0] - collar_width * dom.h,
                dom.dim == 2 ? dom.lo[1] - collar_width * dom.h : 0.0};

    const std::size_t n_ext = static_cast<std::size_t>(quad.enx[0]) * quad.enx[1];
    quad.nodes.resize(n_ext);
    quad.interior_id.assign(n_ext, -1);
    quad.node_of_interior.assign(dom.n_interior(), -1);
    for (std::size_t id = 0; id < n_ext; ++id) {
        const int ix = static_cast<int>(id) % quad.enx[0];
        const int iy = static_cast<int>(id) / quad.enx[0];
        quad.nodes[id] = {quad.elo[0] + (ix + 0.5) * dom.h,
                          dom.dim == 2 ? quad.elo[1] + (iy + 0.5) * dom.h : 0.0};
        const int bx = ix - collar_width;
        const int by = dom.dim == 2 ? iy - collar_width : 0;
        if (bx >= 0 && bx < dom.nx[0] && by >= 0 && by < dom.nx[1]) {
            const std::int32_t ii =
                dom.interior_index[static_cast<std::size_t>(by) * dom.nx[0] + bx];
            quad.interior_id[id] = ii;
            if (ii >= 0) quad.node_of_interior[ii] = static_cast<std::int32_t>(id);
        }
    }

    const double wpow = dom.dim == 1 ? dom.h * dom.h : std::pow(dom.h, 4);
    for (std::size_t i = 0; i < n_ext; ++i) {
        const bool int_i = quad.interior_id[i] >= 0;
        for (std::size_t j = i + 1; j < n_ext; ++j) {
            const bool int_j = quad.interior_id[j] >= 0;
            if (!int_i && !int_j) continue;
            if (collar_width == 0 && !(int_i && int_j)) continue;
            const double d = distance(quad.nodes[i], quad.nodes[j], dom.dim);
            QuadPair p;
            p.i = static_cast<std::int32_t>(i);
            p.j = static_cast<std::int32_t>(j);
            p.w = wpow / std::pow(d, static_cast<double>(dom.dim));
            p.inv_ds = std::pow(d, -s);
            quad.pairs.push_back(p);
        }
    }
    return quad;
}

// ── modulars ─────────────────────────────────────────────────────────────────

// Σ over ordered pairs of Φ_{x_i,x_j}(|D_s u|) w_ij, with compensated
// summation in fixed pair order. Zero iff u ≡ 0 when the quadrature carries a
// collar.
inline double modular_gagliardo(const GridFunction& u, const NFunctionFamily& fam,
                                const KernelQuadrature& quad) {
    return deterministic_sum(quad.pairs.size(), [&](std::size_t k) {
        const QuadPair& p = quad.pairs[k];
        const double dsu = (quad.value_at(u, p.i) - quad.value_at(u, p.j)) * p.inv_ds;
        if (dsu == 0.0) return 0.0;
        return 2.0 * eval_phi(fam, quad.nodes[p.i], quad.nodes[p.j], std::abs(dsu)) * p.w;
    });
}

// Σ Φ̂_{x_i}(|u_i|) h^N over interior nodes.
inline double modular_hat(const GridFunction& u, const NFunctionFamily& fam,
                          const GridDomain& dom) {
    const double meas = dom.cell_measure();
    return deterministic_sum(dom.n_interior(), [&](std::size_t i) {
        return u[i] == 0.0 ? 0.0 : phi_hat(fam, dom.nodes[i], std::abs(u[i])) * meas;
    });
}

struct ModularValue {
    double value = 0.0;
    double accuracy = 0.0;  // accumulated conjugate accuracy over the sum
};

// Σ Φ̃̂_{x_i}(|u_i|) h^N with the numerical Young conjugate.
inline ModularValue modular_hat_conjugate(const GridFunction& u, const NFunctionFamily& fam,
                                          const GridDomain& dom, int depth = 4) {
    const double meas = dom.cell_measure();
    KahanSum val, acc;
    for (std::size_t i = 0; i < dom.n_interior(); ++i) {
        if (u[i] == 0.0) continue;
        const ConjugateResult r =
            conjugate(fam, dom.nodes[i], dom.nodes[i], std::abs(u[i]), depth);
        val.add(r.value * meas);
        acc.add(r.accuracy * meas);
    }
    return {val.total(), acc.total()};
}

// ── Luxemburg norm ───────────────────────────────────────────────────────────

namespace detail {

// inf{λ>0 : mod(u/λ) ≤ 1} for a modular that is continuous and strictly
// decreasing in λ. Bisection on |mod − 1| ≤ tol; the initial bracket comes
// from doubling/halving.
inline double luxemburg_bisect(const std::function<double(double)>& mod_at, double tol) {
    double lo, hi;
    double m1 = mod_at(1.0);
    if (std::abs(m1 - 1.0) <= tol) return 1.0;
    if (m1 > 1.0) {
        lo = 1.0;
        hi = 2.0;
        int it = 0;
        while (mod_at(hi) > 1.0) {
            lo = hi;
            hi *= 2.0;
            if (++it > 200)
                throw NumericsError("luxemburg: no bracket after 200 doublings");
        }
    } else {
        hi = 1.0;
        lo = 0.5;
        int it = 0;
        while (mod_at(lo) < 1.0) {
            hi = lo;
            lo *= 0.5;
            if (++it > 200)
                throw NumericsError("luxemburg: no bracket after 200 halvings");
        }
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 500; ++it) {
        mid = 0.5 * (lo + hi);
        const double f = mod_at(mid);
        if (std::abs(f - 1.0) <= tol) return mid;
        if (f > 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * mid) break;
    }
    return mid;
}

}  // namespace detail

inline double luxemburg_gagliardo(const GridFunction& u, const NFunctionFamily& fam,
                                  const KernelQuadrature& quad, double tol = 1e-10) {
    if (!(tol > 0.0)) throw std::domain_error("luxemburg: tol > 0");
    if (u.max_abs() == 0.0) return 0.0;
    GridFunction work(u.size());
    return detail::luxemburg_bisect(
        [&](double lambda) {
            for (std::size_t i = 0; i < u.size(); ++i) work[i] = u[i] / lambda;
            return modular_gagliardo(work, fam, quad);
        },
        tol);
}

inline double luxemburg_hat(const GridFunction& u, const NFunctionFamily& fam,
                            const GridDomain& dom, double tol = 1e-10) {
    if (!(tol > 0.0)) throw std::domain_error("luxemburg: tol > 0");
    if (u.max_abs() == 0.0) return 0.0;
    GridFunction work(u.size());
    return detail::luxemburg_bisect(
        [&](double lambda) {
            for (std::size_t i = 0; i < u.size(); ++i) work[i] = u[i] / lambda;
            return modular_hat(work, fam, dom);
        },
        tol);
}

inline double luxemburg_hat_conjugate(const GridFunction& u, const NFunctionFamily& fam,
                                      const GridDomain& dom, double tol = 1e-10) {
    if (!(tol > 0.0)) throw std::domain_error("luxemburg: tol > 0");
    if (u.max_abs() == 0.0) return 0.0;
    GridFunction work(u.size());
    return detail::luxemburg_bisect(
        [&](double lambda) {
            for (std::size_t i = 0; i < u.size(); ++i) work[i] = u[i] / lambda;
            return modular_hat_conjugate(work, fam, dom).value;
        },
        tol);
}

}  // namespace mfs

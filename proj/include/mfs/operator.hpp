// operator.hpp — the discrete fractional Φ-Laplacian: derivative pairing,
// nodal gradient, pointwise action with far-field tail bound, monotonicity
// diagnostics, and the probe-set dual-norm estimate.
//
// All pair sums run over the quadrature's pair list, so the pairing, the
// modular, and the gradient always live on the same discrete universe.
// Conventions:
//
//   ⟨J'(u), v⟩ = Σ_{(i,j)} φ(|D_su|) D_su D_sv w_ij        (ordered pairs)
//   gradient g: ⟨J'(u), v⟩ = Σ_k g_k v_k h^N exactly
//   pointwise:  (−Δ)^s_Φ u(x_k) = 2 Σ_{j≠k} φ(|D_su|) D_su h^N / d^{N+s}
//
// The pointwise form carries the factor 2 of the principal-value definition;
// the pairing has no factor 2 because the double integral already counts
// each unordered pair twice.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mfs/core.hpp"
#include "mfs/fields.hpp"
#include "mfs/grid.hpp"
#include "mfs/nfunction.hpp"

namespace mfs {

// φ(|t|) t as a function of the signed quotient t.
inline double signed_density(const NFunctionFamily& fam, const Point& x, const Point& y,
                             double t) {
    if (t == 0.0) return 0.0;
    const double d = eval_density(fam, x, y, std::abs(t));
    return t > 0.0 ? d : -d;
}

inline double derivative_pairing(const GridFunction& u, const GridFunction& v,
                                 const NFunctionFamily& fam, const KernelQuadrature& quad) {
    if (u.size() != v.size() || u.size() != quad.domain.n_interior())
        throw ConfigError("derivative_pairing: mismatched domains");
    return deterministic_sum(quad.pairs.size(), [&](std::size_t k) {
        const QuadPair& p = quad.pairs[k];
        const double dsu = (quad.value_at(u, p.i) - quad.value_at(u, p.j)) * p.inv_ds;
        if (dsu == 0.0) return 0.0;
        const double dsv = (quad.value_at(v, p.i) - quad.value_at(v, p.j)) * p.inv_ds;
        return 2.0 * signed_density(fam, quad.nodes[p.i], quad.nodes[p.j], dsu) * dsv * p.w;
    });
}

// Nodal assembly of the pairing against the nodal basis, normalized so that
// ⟨J'(u), v⟩ = Σ_k g_k v_k h^N holds exactly (same arithmetic path).
inline GridFunction gradient(const GridFunction& u, const NFunctionFamily& fam,
                             const KernelQuadrature& quad) {
    if (u.size() != quad.domain.n_interior())
        throw ConfigError("gradient: mismatched domain");
    const double inv_meas = 1.0 / quad.domain.cell_measure();
    std::vector<KahanSum> acc(u.size());
    for (const QuadPair& p : quad.pairs) {
        const double dsu = (quad.value_at(u, p.i) - quad.value_at(u, p.j)) * p.inv_ds;
        if (dsu == 0.0) continue;
        const double t =
            2.0 * signed_density(fam, quad.nodes[p.i], quad.nodes[p.j], dsu) * p.w *
            p.inv_ds * inv_meas;
        const std::int32_t ii = quad.interior_id[p.i];
        const std::int32_t jj = quad.interior_id[p.j];
        if (ii >= 0) acc[static_cast<std::size_t>(ii)].add(t);
        if (jj >= 0) acc[static_cast<std::size_t>(jj)].add(-t);
    }
    GridFunction g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) g[i] = acc[i].total();
    return g;
}

// Pointwise operator value at interior node k plus an analytic bound on the
// neglected far field. The bound integrates density(|u_k|/r^s) r^{−N−s} over
// |z| > R = collar·h using density(t) ≤ m Φ(t)/t and the ξ₀ scaling of Φ.
struct PointwiseApply {
    double value = 0.0;
    double tail_bound = 0.0;
};

inline PointwiseApply apply_pointwise(const GridFunction& u, std::size_t k,
                                      const NFunctionFamily& fam,
                                      const KernelQuadrature& quad) {
    if (quad.collar_width <= 0)
        throw ConfigError("apply_pointwise: requires a collar-equipped quadrature");
    if (k >= quad.domain.n_interior())
        throw std::domain_error("apply_pointwise: node outside the interior");

    const std::int32_t node_k = quad.node_of_interior[k];
    const Point xk = quad.nodes[node_k];
    const int dim = quad.domain.dim;
    const double s = quad.s;
    const double meas = quad.domain.cell_measure();

    KahanSum acc;
    for (std::size_t j = 0; j < quad.nodes.size(); ++j) {
        if (static_cast<std::int32_t>(j) == node_k) continue;
        const double d = distance(xk, quad.nodes[j], dim);
        const double dsu =
            (quad.value_at(u, node_k) - quad.value_at(u, static_cast<std::int32_t>(j))) *
            std::pow(d, -s);
        if (dsu == 0.0) continue;
        acc.add(2.0 * signed_density(fam, xk, quad.nodes[j], dsu) * meas /
                std::pow(d, static_cast<double>(dim) + s));
    }

    PointwiseApply out;
    out.value = acc.total();
    const double uk = std::abs(u[k]);
    if (uk > 0.0) {
        const double R = quad.collar_width * quad.domain.h;
        const double omega = dim == 1 ? 2.0 : 2.0 * M_PI;
        // shell integral of ξ₀⁺(r^{−s}) r^{−s−1}: exponent m below r = 1,
        // exponent ℓ above
        double shells = 0.0;
        if (R < 1.0)
            shells += (std::pow(R, -s * fam.m) - 1.0) / (s * fam.m);
        shells += std::pow(std::max(R, 1.0), -s * fam.l) / (s * fam.l);
        // far-field coefficient level sampled on a ring at distance R
        double phi_far = 0.0;
        for (int a = 0; a < 8; ++a) {
            const double ang = 2.0 * M_PI * a / 8.0;
            const Point y{xk[0] + R * std::cos(ang),
                          dim == 2 ? xk[1] + R * std::sin(ang) : 0.0};
            phi_far = std::max(phi_far, eval_phi(fam, xk, y, uk));
        }
        out.tail_bound = 2.0 * fam.m * phi_far / uk * omega * shells;
    }
    return out;
}

// ── monotonicity diagnostics ─────────────────────────────────────────────────

struct MonotonicityReport {
    double gap = 0.0;       // ⟨J'(u) − J'(v), u − v⟩
    double min_term = 0.0;  // worst pair summand (≥ 0 in exact arithmetic)
    double max_abs_term = 0.0;
};

inline MonotonicityReport monotonicity_gap_detailed(const GridFunction& u,
                                                    const GridFunction& v,
                                                    const NFunctionFamily& fam,
                                                    const KernelQuadrature& quad) {
    if (u.size() != v.size() || u.size() != quad.domain.n_interior())
        throw ConfigError("monotonicity_gap: mismatched domains");
    MonotonicityReport rep;
    KahanSum acc;
    bool first = true;
    for (const QuadPair& p : quad.pairs) {
        const double a = (quad.value_at(u, p.i) - quad.value_at(u, p.j)) * p.inv_ds;
        const double b = (quad.value_at(v, p.i) - quad.value_at(v, p.j)) * p.inv_ds;
        const double term = 2.0 * p.w *
                            (signed_density(fam, quad.nodes[p.i], quad.nodes[p.j], a) -
                             signed_density(fam, quad.nodes[p.i], quad.nodes[p.j], b)) *
                            (a - b);
        acc.add(term);
        if (first || term < rep.min_term) rep.min_term = term;
        rep.max_abs_term = std::max(rep.max_abs_term, std::abs(term));
        first = false;
    }
    rep.gap = acc.total();
    return rep;
}

inline double monotonicity_gap(const GridFunction& u, const GridFunction& v,
                               const NFunctionFamily& fam, const KernelQuadrature& quad) {
    return monotonicity_gap_detailed(u, v, fam, quad).gap;
}

// ── (S₊) diagnostic ──────────────────────────────────────────────────────────

struct SPlusEntry {
    double a;  // ⟨J'(u_n), u_n − u⟩
    double b;  // modular of u_n − u
};

struct SPlusReport {
    std::vector<SPlusEntry> entries;
    double tol_a = 1e-8;
    double tol_b = 1e-6;
    // discrete surrogate of the (S₊) implication on the supplied sequence:
    // whenever a_n ≤ tol_a, also b_n ≤ tol_b
    bool implication_holds = true;
};

inline SPlusReport splus_diagnostic(const std::vector<GridFunction>& sequence,
                                    const GridFunction& u, const NFunctionFamily& fam,
                                    const KernelQuadrature& quad, double tol_a = 1e-8,
                                    double tol_b = 1e-6) {
    if (sequence.empty()) throw ConfigError("splus_diagnostic: empty sequence");
    SPlusReport rep;
    rep.tol_a = tol_a;
    rep.tol_b = tol_b;
    rep.entries.reserve(sequence.size());
    for (const GridFunction& un : sequence) {
        const GridFunction diff = sub(un, u);
        SPlusEntry e;
        e.a = derivative_pairing(un, diff, fam, quad);
        e.b = modular_gagliardo(diff, fam, quad);
        if (std::max(e.a, 0.0) <= tol_a && e.b > tol_b) rep.implication_holds = false;
        rep.entries.push_back(e);
    }
    return rep;
}

// ── dual-norm estimate ───────────────────────────────────────────────────────

// Fixed probe set: every coordinate direction plus a batch of random fields,
// all normalized to unit Gagliardo–Luxemburg norm. The estimate
// max_v |⟨g, v⟩| over the probes is a lower bound of the true dual norm.
struct ProbeSet {
    std::vector<double> coord_norms;      // [e_k] per interior node
    std::vector<GridFunction> random_probes;  // pre-normalized
    double meas = 0.0;
};

inline ProbeSet build_probe_set(const NFunctionFamily& fam, const KernelQuadrature& quad,
                                int n_random = 32, std::uint64_t seed = 12345,
                                double lux_tol = 1e-10) {
    ProbeSet probes;
    const std::size_t n = quad.domain.n_interior();
    probes.meas = quad.domain.cell_measure();
    probes.coord_norms.resize(n);

    // incident pair lists make the single-node Luxemburg bisection cheap
    struct Incident {
        std::int32_t other;
        double w, inv_ds;
    };
    std::vector<std::vector<Incident>> inc(n);
    for (const QuadPair& p : quad.pairs) {
        const std::int32_t ii = quad.interior_id[p.i];
        const std::int32_t jj = quad.interior_id[p.j];
        if (ii >= 0) inc[static_cast<std::size_t>(ii)].push_back({p.j, p.w, p.inv_ds});
        if (jj >= 0) inc[static_cast<std::size_t>(jj)].push_back({p.i, p.w, p.inv_ds});
    }
    for (std::size_t k = 0; k < n; ++k) {
        const std::int32_t node_k = quad.node_of_interior[k];
        const Point xk = quad.nodes[node_k];
        const auto& lst = inc[k];
        probes.coord_norms[k] = detail::luxemburg_bisect(
            [&](double lambda) {
                KahanSum acc;
                for (const Incident& e : lst)
                    acc.add(2.0 *
                            eval_phi(fam, xk, quad.nodes[e.other], e.inv_ds / lambda) *
                            e.w);
                return acc.total();
            },
            lux_tol);
    }

    std::mt19937_64 rng(seed);
    probes.random_probes.reserve(static_cast<std::size_t>(n_random));
    for (int i = 0; i < n_random; ++i) {
        GridFunction w = gaussian_field(quad.domain, rng);
        const double norm = luxemburg_gagliardo(w, fam, quad, lux_tol);
        if (norm <= 0.0) continue;
        probes.random_probes.push_back(scaled(w, 1.0 / norm));
    }
    return probes;
}

// g is a nodal gradient in the Σ g_k v_k h^N duality. `extra` holds
// (direction, its norm) pairs to include, e.g. the current iterate.
inline double dual_norm_estimate(
    const GridFunction& g, const ProbeSet& probes,
    const std::vector<std::pair<const GridFunction*, double>>& extra = {}) {
    double best = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (probes.coord_norms[k] > 0.0)
            best = std::max(best, std::abs(g[k]) * probes.meas / probes.coord_norms[k]);
    }
    for (const GridFunction& v : probes.random_probes) {
        KahanSum acc;
        for (std::size_t k = 0; k < g.size(); ++k) acc.add(g[k] * v[k]);
        best = std::max(best, std::abs(acc.total()) * probes.meas);
    }
    for (const auto& [dir, norm] : extra) {
        if (!(norm > 0.0)) continue;
        KahanSum acc;
        for (std::size_t k = 0; k < g.size(); ++k) acc.add(g[k] * (*dir)[k]);
        best = std::max(best, std::abs(acc.total()) * probes.meas / norm);
    }
    return best;
}

// ── second derivative assembly ───────────────────────────────────────────────

// Dense Hessian of the modular in the nodal-gradient normalization:
// H_kl = ∂g_k/∂u_l. Returns nothing when a pair contributes a non-finite
// curvature (density derivative blows up at a vanishing quotient).
inline std::optional<std::vector<double>> assemble_hessian(const GridFunction& u,
                                                           const NFunctionFamily& fam,
                                                           const KernelQuadrature& quad) {
    const std::size_t n = u.size();
    std::vector<double> H(n * n, 0.0);
    const double inv_meas = 1.0 / quad.domain.cell_measure();
    for (const QuadPair& p : quad.pairs) {
        const double dsu = (quad.value_at(u, p.i) - quad.value_at(u, p.j)) * p.inv_ds;
        const double dp =
            eval_density_prime(fam, quad.nodes[p.i], quad.nodes[p.j], std::abs(dsu));
        const double beta = 2.0 * p.w * p.inv_ds * p.inv_ds * dp * inv_meas;
        if (!std::isfinite(beta)) return std::nullopt;
        const std::int32_t ii = quad.interior_id[p.i];
        const std::int32_t jj = quad.interior_id[p.j];
        if (ii >= 0) H[static_cast<std::size_t>(ii) * n + ii] += beta;
        if (jj >= 0) H[static_cast<std::size_t>(jj) * n + jj] += beta;
        if (ii >= 0 && jj >= 0) {
            H[static_cast<std::size_t>(ii) * n + jj] -= beta;
            H[static_cast<std::size_t>(jj) * n + ii] -= beta;
        }
    }
    return H;
}

}  // namespace mfs

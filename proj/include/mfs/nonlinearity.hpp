// nonlinearity.hpp — source term f, primitive F, the defect
// F̄(x,t) = t f(x,t) − m F(x,t), and the growth/integrability witnesses Ψ, Γ.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "mfs/core.hpp"
#include "mfs/nfunction.hpp"

namespace mfs {

using SourceFn = std::function<double(const Point&, double)>;

struct Nonlinearity {
    std::string name;
    SourceFn F;            // primitive, F(x,0) = 0
    SourceFn f;            // ∂F/∂t
    SourceFn fprime;       // ∂f/∂t, optional (Newton refinement)
    SourceFn Psi;          // growth witness, Ψ(x,0) = 0
    SourceFn psi_density;  // t ψ(x,t) = Ψ'(x,t), t ≥ 0

    double family_m = 2.0;  // m of the paired family; enters the defect
    double l_psi = 0.0;
    double m_psi = 0.0;
    double gamma_exp = 0.0;  // Γ(x,t) = |t|^γ
    double C = 1.0;          // domination constant of the Γ bound
    double R = std::numeric_limits<double>::infinity();  // domination threshold
    double r = 0.0;          // PowerLog exponent, 0 otherwise

    double Fbar(const Point& x, double t) const { return t * f(x, t) - family_m * F(x, t); }
    double Gamma(double t) const { return std::pow(std::abs(t), gamma_exp); }
    double l_gamma() const { return gamma_exp; }
    double m_gamma() const { return gamma_exp; }
};

// F(x,t) = |t|^r log(1+|t|) paired with a family of upper exponent m. The
// witnesses are Ψ = F with (ℓ_Ψ, m_Ψ) = (r, r+1) and Γ = |t|^γ, γ inside
// (N/ℓ, r/(r−ℓ)) when that window is nonempty. The threshold R is scanned at
// construction; it stays infinite when the defect never becomes permanently
// positive (e.g. r < m), which the condition audit then reports.
inline Nonlinearity power_log(double r, const NFunctionFamily& fam, int N) {
    if (!(r > 1.0)) throw ConfigError("power_log: requires r > 1");
    Nonlinearity nl;
    nl.name = "powerlog";
    nl.r = r;
    nl.family_m = fam.m;
    nl.l_psi = r;
    nl.m_psi = r + 1.0;

    nl.F = [r](const Point&, double t) {
        const double a = std::abs(t);
        return a == 0.0 ? 0.0 : std::pow(a, r) * std::log1p(a);
    };
    nl.f = [r](const Point&, double t) {
        const double a = std::abs(t);
        if (a == 0.0) return 0.0;
        const double mag = r * std::pow(a, r - 1.0) * std::log1p(a) + std::pow(a, r) / (1.0 + a);
        return t > 0.0 ? mag : -mag;
    };
    nl.fprime = [r](const Point&, double t) {
        const double a = std::abs(t);
        if (a == 0.0) return 0.0;
        return r * (r - 1.0) * std::pow(a, r - 2.0) * std::log1p(a) +
               2.0 * r * std::pow(a, r - 1.0) / (1.0 + a) -
               std::pow(a, r) / ((1.0 + a) * (1.0 + a));
    };
    nl.Psi = nl.F;
    nl.psi_density = [nlf = nl.f](const Point& x, double t) { return nlf(x, std::abs(t)); };

    const double l = fam.l;
    const double lo = static_cast<double>(N) / l;
    const double hi = r > l ? r / (r - l) : 0.0;
    nl.gamma_exp = (hi > lo) ? 0.5 * (lo + hi) : lo + 1.0;
    nl.C = 1.0;

    // scan for the smallest dyadic R with F̄ > 0 and Γ-domination on a long
    // log grid above it
    const Point origin{0.0, 0.0};
    for (double R = 1.0; R <= double(1 << 30); R *= 2.0) {
        bool ok = true;
        for (int i = 0; i <= 160 && ok; ++i) {
            const double t = R * std::pow(10.0, 8.0 * i / 160.0);
            const double fbar = nl.Fbar(origin, t);
            if (!(fbar > 0.0) ||
                nl.Gamma(nl.F(origin, t) / std::pow(t, l)) > nl.C * fbar)
                ok = false;
        }
        if (ok) {
            nl.R = R;
            break;
        }
    }
    return nl;
}

// t-independent source f(x); pairs with the convex pure-source solve.
inline Nonlinearity pure_source(std::function<double(const Point&)> source,
                                const NFunctionFamily& fam) {
    Nonlinearity nl;
    nl.name = "source";
    nl.family_m = fam.m;
    nl.F = [source](const Point& x, double t) { return source(x) * t; };
    nl.f = [source](const Point& x, double) { return source(x); };
    nl.fprime = [](const Point&, double) { return 0.0; };
    nl.Psi = [](const Point&, double) { return 0.0; };
    nl.psi_density = [](const Point&, double) { return 0.0; };
    return nl;
}

}  // namespace mfs

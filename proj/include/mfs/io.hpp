// io.hpp — CSV import/export for nodal fields and conjugate tables, JSON
// serialization for reports. Key order is fixed so identical runs produce
// byte-identical documents (timestamps excluded from comparisons).
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfs/grid.hpp"
#include "mfs/nfunction.hpp"
#include "mfs/solver.hpp"
#include "mfs/verify.hpp"

namespace mfs {

using json = nlohmann::ordered_json;

// ── CSV ──────────────────────────────────────────────────────────────────────

inline void write_grid_function_csv(std::ostream& os, const GridDomain& dom,
                                    const GridFunction& u) {
    os << (dom.dim == 2 ? "x,y,value\n" : "x,value\n");
    char buf[128];
    for (std::size_t i = 0; i < dom.n_interior(); ++i) {
        if (dom.dim == 2)
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", dom.nodes[i][0],
                          dom.nodes[i][1], u[i]);
        else
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", dom.nodes[i][0], u[i]);
        os << buf;
    }
}

inline void write_grid_function_csv(const std::string& path, const GridDomain& dom,
                                    const GridFunction& u) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open for writing: " + path);
    write_grid_function_csv(os, dom, u);
}

// Rows are matched to interior nodes by coordinates (within h/2); nodes not
// covered default to 0.
inline GridFunction read_grid_function_csv(std::istream& is, const GridDomain& dom) {
    GridFunction u(dom.n_interior());
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != static_cast<std::size_t>(dom.dim) + 1)
            throw ConfigError("grid csv: wrong column count");
        const Point p{vals[0], dom.dim == 2 ? vals[1] : 0.0};
        const double value = vals.back();
        if (!std::isfinite(value)) throw ConfigError("grid csv: non-finite value");
        const int ix = static_cast<int>(std::floor((p[0] - dom.lo[0]) / dom.h));
        const int iy = dom.dim == 2
                           ? static_cast<int>(std::floor((p[1] - dom.lo[1]) / dom.h))
                           : 0;
        if (ix < 0 || ix >= dom.nx[0] || iy < 0 || iy >= dom.nx[1]) continue;
        const std::int32_t id =
            dom.interior_index[static_cast<std::size_t>(iy) * dom.nx[0] + ix];
        if (id >= 0) u[static_cast<std::size_t>(id)] = value;
    }
    return u;
}

inline GridFunction read_grid_function_csv(const std::string& path, const GridDomain& dom) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open: " + path);
    return read_grid_function_csv(is, dom);
}

inline void write_conjugate_table_csv(std::ostream& os, const ConjugateTable& table) {
    os << "t,value,accuracy\n";
    char buf[128];
    for (std::size_t i = 0; i < table.ts.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", table.ts[i],
                      table.values[i], table.accuracies[i]);
        os << buf;
    }
}

inline void write_conjugate_table_csv(const std::string& path, const ConjugateTable& table) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open for writing: " + path);
    write_conjugate_table_csv(os, table);
}

// ── JSON reports ─────────────────────────────────────────────────────────────

inline json to_json(const PropertyReport& rep) {
    json j;
    j["suite"] = rep.suite;
    j["samples"] = rep.samples;
    j["worst_violation"] = rep.worst_violation;
    j["tolerance"] = rep.tolerance;
    j["applicable"] = rep.applicable;
    j["verdict"] = rep.pass ? "pass" : "fail";
    j["witness"] = rep.witness;
    j["seed"] = rep.seed;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

inline json to_json(const ConditionReport& c, const char* name) {
    json j;
    j["condition"] = name;
    j["pass"] = c.pass;
    j["margin"] = c.margin;
    j["witness_t"] = c.witness_t;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline json to_json(const AuditReport& rep) {
    json j;
    j["lambda1_estimate"] = rep.lambda1;
    j["lambda1_kind"] = "empirical lower bound";
    j["R"] = rep.R_used;
    j["conditions"] = json::array({to_json(rep.f1, "f1"), to_json(rep.f2, "f2"),
                                   to_json(rep.f3, "f3"), to_json(rep.f4, "f4")});
    j["verdict"] = rep.all_pass() ? "pass" : "fail";
    return j;
}

inline json to_json(const SPlusReport& rep) {
    json j;
    j["tol_pairing"] = rep.tol_a;
    j["tol_modular"] = rep.tol_b;
    j["implication_holds"] = rep.implication_holds;
    json entries = json::array();
    for (std::size_t n = 0; n < rep.entries.size(); ++n) {
        json e;
        e["n"] = n + 1;
        e["a"] = rep.entries[n].a;
        e["b"] = rep.entries[n].b;
        entries.push_back(e);
    }
    j["sequence"] = entries;
    return j;
}

inline json to_json(const SolutionReport& rep) {
    json j;
    j["status"] = rep.status;
    j["converged"] = rep.converged;
    j["nontrivial"] = rep.nontrivial;
    j["energy_level"] = rep.energy_level;
    j["alpha"] = rep.alpha;
    j["rho"] = rep.rho;
    j["norm_u"] = rep.norm_u;
    j["residual_estimate"] = rep.residual;
    j["residual_kind"] = "probe-set lower bound of the dual norm";
    j["cerami_product"] = rep.cerami_product;
    j["iterations"] = rep.iterations;
    j["newton_steps"] = rep.newton_steps;
    return j;
}

inline json to_json(const ConvexSolveReport& rep) {
    json j;
    j["status"] = rep.status;
    j["converged"] = rep.converged;
    j["unique"] = rep.unique;
    j["energy_value"] = rep.energy_value;
    j["optimality_gap"] = rep.optimality_gap;
    j["restart_spread"] = rep.restart_spread;
    j["fixed_point_decrease"] = rep.fixed_point_decrease;
    j["iterations"] = rep.iterations;
    return j;
}

inline void write_suite_summary_csv(std::ostream& os,
                                    const std::vector<PropertyReport>& reports) {
    os << "suite,samples,worst_violation,tolerance,applicable,verdict\n";
    for (const auto& rep : reports) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.6e,%.6e,%s,%s\n", rep.suite.c_str(),
                      rep.samples, rep.worst_violation, rep.tolerance,
                      rep.applicable ? "yes" : "no", rep.pass ? "pass" : "fail");
        os << buf;
    }
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open for writing: " + path);
    os << content;
}

}  // namespace mfs

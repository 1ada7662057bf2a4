#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "mfs/fields.hpp"
#include "mfs/io.hpp"

using namespace mfs;
using Catch::Approx;

TEST_CASE("grid function csv round trip", "[io]") {
    const GridDomain dom = unit_box(2, 7);
    std::mt19937_64 rng(12);
    const GridFunction u = gaussian_field(dom, rng);

    std::stringstream buf;
    write_grid_function_csv(buf, dom, u);
    const std::string text = buf.str();
    CHECK(text.rfind("x,y,value\n", 0) == 0);

    std::stringstream in(text);
    const GridFunction back = read_grid_function_csv(in, dom);
    REQUIRE(back.size() == u.size());
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(back[i] == u[i]);
}

TEST_CASE("grid csv rejects malformed rows", "[io]") {
    const GridDomain dom = unit_box(2, 4);
    std::stringstream bad("x,y,value\n0.1,0.1\n");
    CHECK_THROWS_AS(read_grid_function_csv(bad, dom), ConfigError);
    std::stringstream naninput("x,y,value\n0.125,0.125,nan\n");
    CHECK_THROWS_AS(read_grid_function_csv(naninput, dom), ConfigError);
}

TEST_CASE("1-d csv round trip", "[io]") {
    const GridDomain dom = box_domain(1, {0.0, 0.0}, 9, 1, 1.0 / 9.0);
    GridFunction u(dom.n_interior());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(0.7 * i);
    std::stringstream buf;
    write_grid_function_csv(buf, dom, u);
    CHECK(buf.str().rfind("x,value\n", 0) == 0);
    std::stringstream in(buf.str());
    const GridFunction back = read_grid_function_csv(in, dom);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(back[i] == u[i]);
}

TEST_CASE("conjugate table csv layout", "[io]") {
    const auto fam = anisotropic_p(2.0, 0.5);
    const ConjugateTable table =
        build_conjugate_table(fam, {0.0, 0.0}, {0.0, 0.0}, {0.5, 1.0, 2.0}, 4);
    std::stringstream buf;
    write_conjugate_table_csv(buf, table);
    std::string line;
    std::getline(buf, line);
    CHECK(line == "t,value,accuracy");
    int rows = 0;
    while (std::getline(buf, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("splus diagnostic serializes as indexed records", "[io]") {
    const GridDomain dom = unit_box(2, 5);
    const auto fam = double_phase(2.0, 2.5, 1.0);
    const KernelQuadrature quad = kernel_quadrature(dom, 0.25, 0);
    std::mt19937_64 rng(3);
    const GridFunction u = gaussian_field(dom, rng);
    const GridFunction w = gaussian_field(dom, rng);
    const SPlusReport rep =
        splus_diagnostic({axpy(0.5, w, u), axpy(0.25, w, u)}, u, fam, quad);
    const json j = to_json(rep);
    REQUIRE(j["sequence"].size() == 2);
    CHECK(j["sequence"][0]["n"] == 1);
    CHECK(j["sequence"][0].contains("a"));
    CHECK(j["sequence"][0].contains("b"));
    CHECK(j.contains("implication_holds"));
}

TEST_CASE("json reports are deterministic and carry verdicts", "[io]") {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    VerifyConfig cfg;
    cfg.scalar_samples = 200;
    cfg.field_samples = 5;
    const PropertyReport rep = run_suite("mn1", fam, cfg, 42);
    const json a = to_json(rep);
    const json b = to_json(run_suite("mn1", fam, cfg, 42));
    CHECK(a.dump() == b.dump());
    CHECK(a["verdict"] == "pass");
    CHECK(a["seed"] == 42);

    std::vector<PropertyReport> reports{rep};
    std::stringstream buf;
    write_suite_summary_csv(buf, reports);
    std::string header;
    std::getline(buf, header);
    CHECK(header == "suite,samples,worst_violation,tolerance,applicable,verdict");
}

#include <catch2/catch_amalgamated.hpp>

#include "mfs/verify.hpp"

using namespace mfs;

namespace {

VerifyConfig quick_config() {
    VerifyConfig cfg;
    cfg.scalar_samples = 2000;
    cfg.field_samples = 40;
    return cfg;
}

}  // namespace

TEST_CASE("full battery passes on the double phase family", "[verify]") {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    VerifyConfig cfg = quick_config();
    cfg.nl = power_log(4.0, fam, 2);  // r > q = 3
    const auto reports = run_all_suites(fam, cfg, 12345);
    CHECK(reports.size() == suite_names().size());
    for (const auto& rep : reports) {
        INFO(rep.suite << ": viol=" << rep.worst_violation << " notes=" << rep.notes);
        CHECK(rep.pass);
    }
}

TEST_CASE("suites are reproducible for a fixed seed", "[verify]") {
    const auto fam = double_phase(2.0, 2.5, 0.75);
    VerifyConfig cfg = quick_config();
    for (const char* name : {"mn1", "mn2", "young", "monotone"}) {
        const PropertyReport a = run_suite(name, fam, cfg, 777);
        const PropertyReport b = run_suite(name, fam, cfg, 777);
        CHECK(a.worst_violation == b.worst_violation);
        CHECK(a.witness == b.witness);
        CHECK(a.samples == b.samples);
    }
}

TEST_CASE("suites are thread-count independent", "[verify]") {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    VerifyConfig cfg = quick_config();
    cfg.scalar_samples = 500;
    set_thread_cap(1);
    const PropertyReport one = run_suite("mn-critical", fam, cfg, 99);
    set_thread_cap(2);
    const PropertyReport two = run_suite("mn-critical", fam, cfg, 99);
    set_thread_cap(0);
    CHECK(one.worst_violation == two.worst_violation);
    CHECK(one.witness == two.witness);
}

TEST_CASE("mn-critical reports not-applicable outside the exponent window",
          "[verify]") {
    const auto fam = double_phase(2.0, 3.0, 1.0);
    VerifyConfig cfg = quick_config();
    cfg.s = 0.8;  // N/s = 2.5 < m = 3
    const PropertyReport rep = run_suite("mn-critical", fam, cfg, 1);
    CHECK_FALSE(rep.applicable);
    CHECK(rep.pass);
    CHECK(rep.notes.find("not applicable") != std::string::npos);
}

TEST_CASE("uniform monotonicity skips families without increasing phi", "[verify]") {
    const auto fam = double_phase(1.5, 2.5, 1.0);  // phi decays near zero
    const PropertyReport rep = run_suite("uniform-monotone", fam, quick_config(), 5);
    CHECK_FALSE(rep.applicable);
    CHECK(rep.pass);
}

TEST_CASE("condition audit suite needs a nonlinearity", "[verify]") {
    const auto fam = double_phase(2.0, 2.5, 1.0);
    VerifyConfig cfg = quick_config();
    const PropertyReport missing = run_suite("condition-audit", fam, cfg, 3);
    CHECK_FALSE(missing.applicable);

    cfg.nl = power_log(3.0, fam, 2);
    const PropertyReport good = run_suite("condition-audit", fam, cfg, 3);
    CHECK(good.applicable);
    CHECK(good.pass);

    cfg.nl = power_log(2.2, fam, 2);  // r < q: defect goes negative
    const PropertyReport bad = run_suite("condition-audit", fam, cfg, 3);
    CHECK(bad.applicable);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("unknown suite id raises a usage error", "[verify]") {
    const auto fam = double_phase(2.0, 2.5, 1.0);
    CHECK_THROWS_AS(run_suite("bogus", fam, quick_config(), 1), ConfigError);
}

TEST_CASE("run_all skips the audit without a nonlinearity", "[verify]") {
    const auto fam = anisotropic_p(2.0, 1.0);
    VerifyConfig cfg = quick_config();
    cfg.scalar_samples = 500;
    cfg.field_samples = 10;
    const auto reports = run_all_suites(fam, cfg, 2);
    CHECK(reports.size() == suite_names().size() - 1);
    for (const auto& rep : reports) {
        INFO(rep.suite);
        CHECK(rep.pass);
    }
}

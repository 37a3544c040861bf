#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlpl/lab.hpp"

using namespace nlpl;

namespace {

ExperimentConfig fixed_field_config() {
    ExperimentConfig cfg;
    cfg.experiment = "ponce_sweep";
    cfg.field_spec = "x";
    cfg.coefficient_spec = "const:1";
    cfg.kernel_family = "constant";
    cfg.p = 2.0;
    cfg.deltas = {0.2, 0.1, 0.05};
    cfg.points_per_delta = 100;
    return cfg;
}

}  // namespace

TEST_CASE("config parsing covers the schema") {
    const std::string text = R"(
# sweep over the unit interval
[domain]
dim = 1
lower = [0.0]
upper = [1.0]

[grid]
points_per_delta = 100

[kernel]
family = "constant"
p = 2.0

[coefficient]
spec = "const:1"

[field]
u = "x"

[sweep]
experiment = "ponce_sweep"
deltas = [0.2, 0.1, 0.05]

[output]
base = ""
)";
    const ExperimentConfig cfg = config_from_string(text);
    CHECK(cfg.experiment == "ponce_sweep");
    CHECK(cfg.deltas.size() == 3);
    CHECK(cfg.points_per_delta == 100);
    CHECK(cfg.kernel_family == "constant");

    CHECK_THROWS(config_from_string("[grid]\nnn = 3\n"));          // unknown key
    CHECK_THROWS(config_from_string("[grids]\nn = [3]\n"));        // unknown section
    CHECK_THROWS(config_from_string(
        "[sweep]\nexperiment = \"ponce_sweep\"\ndeltas = [0.1, 0.2]\n"));  // not decreasing
    CHECK_THROWS(config_from_string("[sweep]\nexperiment = \"nope\"\n"));
    CHECK_THROWS(config_from_string("[sweep]\nexperiment = \"ponce_sweep\"\nexperiment = \"x\"\n"));
}

TEST_CASE("ponce sweep on the linear field") {
    const Report report = run_ponce_sweep(fixed_field_config());
    REQUIRE(report.rows.size() == 3);
    // Discrete values track 1 - delta/2 = {0.90, 0.95, 0.975}.
    CHECK(report.rows[0].nonlocal == doctest::Approx(0.90).epsilon(0.02));
    CHECK(report.rows[1].nonlocal == doctest::Approx(0.95).epsilon(0.02));
    CHECK(report.rows[2].nonlocal == doctest::Approx(0.975).epsilon(0.02));
    CHECK(report.rows[1].local == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& row : report.rows)
        CHECK(row.gap == row.nonlocal - row.local);
    CHECK(report.inequality_ok);
    REQUIRE(report.order.has_value());
    CHECK(*report.order == doctest::Approx(1.0).epsilon(0.35));
    CHECK_FALSE(report.h1_bound.has_value());
}

TEST_CASE("zero field sweep holds with equality") {
    ExperimentConfig cfg = fixed_field_config();
    cfg.field_spec = "zero";
    const Report report = run_ponce_sweep(cfg);
    for (const auto& row : report.rows) {
        CHECK(row.nonlocal == 0.0);
        CHECK(row.local == 0.0);
    }
    CHECK(report.inequality_ok);
    CHECK_FALSE(report.order.has_value());
}

TEST_CASE("ponce sweep on solver outputs logs the energy bound") {
    ExperimentConfig cfg = fixed_field_config();
    cfg.field_spec = "solve";
    cfg.load_spec = "const:1";
    cfg.deltas = {0.1, 0.05};
    cfg.points_per_delta = 0;
    cfg.grid_n = {200};
    const Report report = run_ponce_sweep(cfg);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        REQUIRE(row.sol_err.has_value());
        CHECK(row.iters > 0);
    }
    REQUIRE(report.h1_bound.has_value());
    CHECK(*report.h1_bound > 0.0);
    CHECK(report.inequality_ok);
}

TEST_CASE("simple check rejects non-simple coefficients") {
    ExperimentConfig cfg;
    cfg.experiment = "simple_check";
    cfg.coefficient_spec = "const:1";
    cfg.field_spec = "x";
    cfg.deltas = {0.1};
    cfg.points_per_delta = 50;
    CHECK_THROWS(run_simple_check(cfg));
}

TEST_CASE("resolution guard rejects under-resolved sweeps") {
    ExperimentConfig cfg = fixed_field_config();
    cfg.points_per_delta = 0;
    cfg.grid_n = {8};
    CHECK_THROWS(run_ponce_sweep(cfg));
}

TEST_CASE("gconv records decreasing errors and the energy bound") {
    ExperimentConfig cfg;
    cfg.experiment = "gconv";
    cfg.field_spec = "solve";
    cfg.load_spec = "const:1";
    cfg.coefficient_spec = "const:1";
    cfg.kernel_family = "constant";
    cfg.p = 2.0;
    cfg.deltas = {0.2, 0.1, 0.05};
    cfg.grid_n = {240};
    const Report report = run_gconv(cfg);
    REQUIRE(report.rows.size() == 3);
    for (const auto& row : report.rows) REQUIRE(row.sol_err.has_value());
    CHECK(*report.rows[1].sol_err < *report.rows[0].sol_err);
    CHECK(*report.rows[2].sol_err < *report.rows[1].sol_err);
    CHECK(report.inequality_ok);
    REQUIRE(report.h1_bound.has_value());
    CHECK(*report.h1_bound > 0.0);
    CHECK(*report.h1_bound < 1.0);
}

TEST_CASE("gconv with a heterogeneous coefficient") {
    ExperimentConfig cfg;
    cfg.experiment = "gconv";
    cfg.field_spec = "solve";
    cfg.load_spec = "const:1";
    cfg.coefficient_spec = "affine:1,1";
    cfg.kernel_family = "constant";
    cfg.p = 2.0;
    cfg.deltas = {0.2, 0.1, 0.05};
    cfg.grid_n = {240};
    const Report report = run_gconv(cfg);
    REQUIRE(report.rows.size() == 3);
    CHECK(*report.rows[2].sol_err < *report.rows[1].sol_err);
    CHECK(*report.rows[1].sol_err < *report.rows[0].sol_err);
    CHECK(report.inequality_ok);
}

TEST_CASE("gconv with zero load has zero error and a passing verdict") {
    ExperimentConfig cfg;
    cfg.experiment = "gconv";
    cfg.field_spec = "solve";
    cfg.load_spec = "const:0";
    cfg.coefficient_spec = "const:1";
    cfg.kernel_family = "constant";
    cfg.p = 2.0;
    cfg.deltas = {0.2, 0.1};
    cfg.grid_n = {120};
    const Report report = run_gconv(cfg);
    for (const auto& row : report.rows) CHECK(*row.sol_err <= 1e-12);
    CHECK(report.inequality_ok);
}

TEST_CASE("gconv in 2D at p = 2") {
    ExperimentConfig cfg;
    cfg.experiment = "gconv";
    cfg.domain = Domain::box2(0.0, 1.0, 0.0, 1.0);
    cfg.field_spec = "solve";
    cfg.load_spec = "const:1";
    cfg.coefficient_spec = "const:1";
    cfg.kernel_family = "constant";
    cfg.p = 2.0;
    cfg.deltas = {0.2, 0.1};
    cfg.grid_n = {61, 61};
    const Report report = run_gconv(cfg);
    REQUIRE(report.rows.size() == 2);
    CHECK(*report.rows[1].sol_err < *report.rows[0].sol_err);
    CHECK(report.inequality_ok);
}

TEST_CASE("simple check: block bound and identity") {
    ExperimentConfig cfg;
    cfg.experiment = "simple_check";
    cfg.field_spec = "sinpi";
    cfg.kernel_family = "constant";
    cfg.p = 2.0;
    cfg.deltas = {0.1, 0.05};
    cfg.points_per_delta = 60;

    SUBCASE("one block covering Omega gives equality") {
        cfg.coefficient_spec = "simple:0,1,2";
        const Report report = run_simple_check(cfg);
        CHECK(report.inequality_ok);
        for (const auto& row : report.rows) {
            CHECK(row.gap == 0.0);  // no cross-block mass is discarded
            CHECK(row.nonlocal == row.local);
        }
    }

    SUBCASE("two blocks discard nonnegative cross mass") {
        cfg.coefficient_spec = "simple:0,0.5,2;0.5,1,3";
        const Report report = run_simple_check(cfg);
        CHECK(report.inequality_ok);
        for (const auto& row : report.rows) {
            CHECK(row.gap > 0.0);
            CHECK(row.nonlocal >= row.local);
        }
    }

    SUBCASE("constant field zeroes both sides") {
        cfg.coefficient_spec = "simple:0,0.5,2;0.5,1,3";
        cfg.field_spec = "const:7";
        const Report report = run_simple_check(cfg);
        for (const auto& row : report.rows) {
            CHECK(row.nonlocal == 0.0);
            CHECK(row.local == 0.0);
        }
    }
}

TEST_CASE("measurable check: checkerboard against the mean coefficient") {
    ExperimentConfig cfg;
    cfg.experiment = "measurable_check";
    cfg.coefficient_spec = "checkerboard:1,2,4";
    cfg.field_spec = "x";
    cfg.kernel_family = "constant";
    cfg.p = 2.0;
    cfg.deltas = {0.1, 0.05, 0.025};
    cfg.points_per_delta = 200;
    const Report report = run_measurable_check(cfg);
    REQUIRE(report.rows.size() == 3);
    // Local side: mean of h over (0,1) is 1.5 for the alternating 1,2 cells.
    CHECK(report.rows.back().local == doctest::Approx(1.5).epsilon(0.01));
    CHECK(report.inequality_ok);

    cfg.coefficient_spec = "const:1";
    CHECK_THROWS(run_measurable_check(cfg));
    cfg.coefficient_spec = "checkerboard:1,2,4";
    cfg.field_spec = "solve";
    CHECK_THROWS(run_measurable_check(cfg));
}

TEST_CASE("measurable check on a 2D checkerboard") {
    ExperimentConfig cfg;
    cfg.experiment = "measurable_check";
    cfg.domain = Domain::box2(0.0, 1.0, 0.0, 1.0);
    cfg.coefficient_spec = "checkerboard:1,2,4";
    cfg.field_spec = "x";
    cfg.kernel_family = "hat";
    cfg.p = 2.0;
    cfg.deltas = {0.2, 0.1};
    cfg.points_per_delta = 12;
    const Report report = run_measurable_check(cfg);
    // Local side: h averages to 1.5 over the unit square, |grad u| = 1.
    CHECK(report.rows.back().local == doctest::Approx(1.5).epsilon(0.05));
    CHECK(report.inequality_ok);
}

TEST_CASE("vitali check passes the fixture matrix") {
    ExperimentConfig cfg;
    cfg.experiment = "vitali_check";
    const Report report = run_vitali_check(cfg);
    CHECK(report.vitali_rows.size() == 27);  // 3 f x 3 k x 3 xi
    for (const auto& row : report.vitali_rows) {
        CHECK(row.ok);
        CHECK(row.residual <= 1e-3);
    }
    CHECK(report.passed());
}

TEST_CASE("report emission and determinism") {
    Report empty;
    empty.experiment = "ponce_sweep";
    CHECK(report_csv(empty) == "delta,nonlocal,local,gap,sol_err,iters\n");

    const Report report = run_ponce_sweep(fixed_field_config());
    const std::string csv_a = report_csv(report);
    const Report rerun = run_ponce_sweep(fixed_field_config());
    CHECK(csv_a == report_csv(rerun));  // byte-identical on rerun

    // CSV shape: header plus one line per delta, gap column consistent.
    std::istringstream lines(csv_a);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "delta,nonlocal,local,gap,sol_err,iters");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 3);

    // JSON round trip reproduces the report exactly.
    const Report back = report_from_json(report_json(report));
    CHECK(back.experiment == report.experiment);
    REQUIRE(back.rows.size() == report.rows.size());
    for (size_t i = 0; i < back.rows.size(); ++i) {
        CHECK(back.rows[i].delta == report.rows[i].delta);
        CHECK(back.rows[i].nonlocal == report.rows[i].nonlocal);
        CHECK(back.rows[i].local == report.rows[i].local);
        CHECK(back.rows[i].gap == report.rows[i].gap);
        CHECK(back.rows[i].sol_err.has_value() == report.rows[i].sol_err.has_value());
        CHECK(back.rows[i].iters == report.rows[i].iters);
    }
    CHECK(back.inequality_ok == report.inequality_ok);
    CHECK(back.order.has_value() == report.order.has_value());
    if (back.order) CHECK(*back.order == *report.order);
    CHECK(back.tol_ineq == report.tol_ineq);
    CHECK(back.kernel_family == report.kernel_family);
    CHECK(back.grid_n == report.grid_n);

    // File emission writes csv/json/gap side by side.
    const std::string base = "test_outputs/sweep";
    emit_report(report, base, {"csv", "json"});
    std::ifstream csv_file(base + ".csv", std::ios::binary);
    std::stringstream csv_bytes;
    csv_bytes << csv_file.rdbuf();
    CHECK(csv_bytes.str() == csv_a);
    std::ifstream gap_file(base + ".gap");
    int gap_rows = 0;
    while (std::getline(gap_file, line)) ++gap_rows;
    CHECK(gap_rows == 3);
    std::remove((base + ".csv").c_str());
    std::remove((base + ".json").c_str());
    std::remove((base + ".gap").c_str());
}

TEST_CASE("cn_table experiment is reported through the runner") {
    ExperimentConfig cfg;
    cfg.experiment = "cn_table";
    const Report report = run_experiment(cfg);
    CHECK(report.inequality_ok);
    CHECK(report.rows.empty());
}

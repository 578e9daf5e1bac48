#include <doctest.h>

#include <cmath>

#include "c4/sweep.hpp"

using namespace c4;

TEST_CASE("grid generation is inclusive and uniform") {
    const Grid g{0.0, 1.0, 0.005};
    const auto pts = g.points();
    REQUIRE(pts.size() == 201);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS((Grid{0.0, 1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Grid{1.0, 0.0, 0.1}.validate()), std::invalid_argument);
}

TEST_CASE("mixture sweep rows carry the linear law") {
    SweepPlan plan;
    plan.mode = SweepMode::MixtureRank2;
    plan.family = "ghz-w";
    plan.axis = {0.0, 1.0, 0.05};
    plan.threads = 2;
    const SweepResult res = run_sweep(plan);
    REQUIRE(res.rows.size() == 21);
    for (const auto& row : res.rows) CHECK(std::abs(row[1] - row[0]) <= 1e-8);
}

TEST_CASE("chain sweep emits one row per (lambda, quad) and caches tables") {
    clear_table_cache();
    SweepPlan plan;
    plan.mode = SweepMode::ChainC4;
    plan.gamma = 1.0;
    plan.nsites = 36;
    plan.axis = {0.4, 0.6, 0.1};
    plan.quads = {SiteQuad{1, 1, 1}, SiteQuad{1, 2, 1}};
    plan.threads = 1;
    const SweepResult with_cache = run_sweep(plan);
    REQUIRE(with_cache.rows.size() == 6);

    plan.use_cache = false;
    const SweepResult without_cache = run_sweep(plan);
    REQUIRE(without_cache.rows.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t c = 0; c < with_cache.columns.size(); ++c)
            CHECK(std::abs(with_cache.rows[i][c] - without_cache.rows[i][c]) <= 1e-12);

    // ordered by grid index regardless of worker count
    plan.use_cache = true;
    plan.threads = 2;
    const SweepResult threaded = run_sweep(plan);
    CHECK(csv_string(threaded) == csv_string(with_cache));
}

TEST_CASE("residual sweep reports tau1, the concurrence sum and their difference") {
    SweepPlan plan;
    plan.mode = SweepMode::ChainResidual;
    plan.gamma = 1.0;
    plan.nsites = 48;
    plan.axis = {1.0, 1.0, 1.0};
    const SweepResult res = run_sweep(plan);
    REQUIRE(res.rows.size() == 1);
    const auto& row = res.rows[0];
    CHECK(row[4] == doctest::Approx(row[2] - row[3]).epsilon(1e-12));
    CHECK(row[4] >= -1e-9);  // CKW
}

TEST_CASE("csv output is deterministic and parses back") {
    SweepPlan plan;
    plan.mode = SweepMode::MixtureRank2;
    plan.family = "bellbell-w";
    plan.axis = {0.0, 1.0, 0.25};
    const SweepResult res = run_sweep(plan);
    const std::string a = csv_string(res);
    const std::string b = csv_string(run_sweep(plan));
    CHECK(a == b);

    CHECK(a.rfind("# mode=mixture-rank2", 0) == 0);
    CHECK(a.find("p,c4,conc_12,conc_34,conc_product\n") != std::string::npos);

    // single-row round trip without loss
    SweepPlan one = plan;
    one.axis = {1.0 / 3.0, 1.0 / 3.0, 1.0};
    const SweepResult r1 = run_sweep(one);
    const std::string body = csv_string(r1);
    const auto last_line_start = body.rfind('\n', body.size() - 2) + 1;
    const std::string line = body.substr(last_line_start);
    double parsed[5];
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &parsed[0], &parsed[1], &parsed[2],
                        &parsed[3], &parsed[4]) == 5);
    for (int c = 0; c < 5; ++c) CHECK(parsed[c] == r1.rows[0][static_cast<std::size_t>(c)]);
}

TEST_CASE("empty plans still emit the header") {
    SweepResult res;
    res.columns = {"a", "b"};
    res.plan_echo = "empty";
    CHECK(csv_string(res) == "# empty\na,b\n");
}

TEST_CASE("convergence gate passes on a converged chain and reports the deviation") {
    SweepPlan plan;
    plan.mode = SweepMode::ChainC4;
    plan.gamma = 1.0;
    plan.nsites = 120;
    plan.axis = {0.5, 0.7, 0.2};
    plan.quads = {SiteQuad{1, 1, 1}};
    plan.convergence_check = true;
    const SweepResult res = run_sweep(plan);
    REQUIRE(res.convergence_deviation.has_value());
    CHECK(*res.convergence_deviation < 1e-6);
}

TEST_CASE("validate mode reports the backend deviation") {
    SweepPlan plan;
    plan.mode = SweepMode::Validate;
    plan.gamma = 1.0;
    plan.nsites = 8;
    plan.backend = Backend::Ed;
    plan.axis = {0.5, 0.5, 1.0};
    plan.quads = {SiteQuad{1, 1, 1}};
    const SweepResult res = run_sweep(plan);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].back() <= 1e-8);
}

TEST_CASE("plan validation") {
    SweepPlan plan;
    plan.mode = SweepMode::MixtureRank2;
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);  // missing family

    SweepPlan chain;
    chain.mode = SweepMode::ChainC4;
    chain.nsites = 6;
    chain.quads = {SiteQuad{3, 3, 3}};  // does not fit
    CHECK_THROWS_AS(chain.validate(), std::invalid_argument);
}

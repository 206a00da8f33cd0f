#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "zf/errors.hpp"
#include "zf/experiments.hpp"
#include "zf/json_io.hpp"

using namespace zf;

TEST_CASE("mc_run is independent of the thread count") {
    ExperimentConfig c;
    c.d = 3;
    c.n = 2000;
    c.samples = 12;
    c.base_seed = 100;
    c.threads = 1;
    const auto a = mc_run(c);
    c.threads = 8;
    const auto b = mc_run(c);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].same_outcome(b.records[i]));
        CHECK(a.records[i].seed == 100 + i);
    }
    CHECK(a.mean_fraction == b.mean_fraction);
}

TEST_CASE("aggregates can be recomputed from the records") {
    ExperimentConfig c;
    c.d = 4;
    c.n = 1000;
    c.samples = 6;
    c.algorithm = Algorithm::smart;
    auto r = mc_run(c);
    const double mean = r.mean_fraction, sd = r.stddev_fraction;
    r.mean_fraction = r.stddev_fraction = -1;
    std::reverse(r.records.begin(), r.records.end());
    aggregate_report(r);
    CHECK(r.mean_fraction == doctest::Approx(mean));
    CHECK(r.stddev_fraction == doctest::Approx(sd));
    CHECK(r.records.front().seed < r.records.back().seed);
    for (const auto &rec : r.records) {
        CHECK(rec.status == "complete");
        CHECK(rec.witnesses_valid);
    }
}

TEST_CASE("recorded samples replay exactly") {
    ExperimentConfig c;
    c.d = 5;
    c.n = 500;
    c.samples = 4;
    c.base_seed = 42;
    for (const auto &rec : mc_run(c).records) CHECK(replay(rec).same_outcome(rec));
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    c.d = 3;
    c.n = 11;
    CHECK_THROWS_AS(mc_run(c), PreconditionError);
    c.n = 10;
    c.samples = 0;
    CHECK_THROWS_AS(mc_run(c), PreconditionError);
    c.samples = 1;
    c.d = 2;
    c.compare_ode = true;
    CHECK_THROWS_AS(mc_run(c), PreconditionError);
}

TEST_CASE("comparison against the ODE") {
    const PhasePortrait p = run_plain(3);
    auto sup = compare_portraits(p, p);
    for (double v : sup) CHECK(v == 0.0);
    CHECK_THROWS_AS(compare_portraits(p, run_plain(4)), PreconditionError);

    auto distance = [&](int n) {
        const RegularGraph g = sample_simple(n, 3, 5).graph;
        const auto r = degree_greedy(g, 5);
        const auto s = compare_trajectory(r.trace, n, p);
        return *std::max_element(s.begin(), s.end());
    };
    const double small = distance(1000), large = distance(100000);
    CHECK(large < small);
    CHECK(large < 0.01);

    const RegularGraph g4 = sample_simple(100, 4, 1).graph;
    CHECK_THROWS_AS(compare_trajectory(degree_greedy(g4, 1).trace, 100, p), PreconditionError);
}

TEST_CASE("phase-restricted comparison") {
    ExperimentConfig c;
    c.d = 3;
    c.n = 20000;
    c.samples = 2;
    c.compare_ode = true;
    c.compare_phase = 1;
    const auto r = mc_run(c);
    REQUIRE(r.sup_distance_max.size() == 3);
    CHECK(r.sup_distance_max[0] < 0.02);
    CHECK(r.ode_bound.has_value());
}

TEST_CASE("cycle unions with restarts") {
    ExperimentConfig c;
    c.d = 2;
    c.n = 1000;
    c.samples = 20;
    c.restart_on_stall = true;
    const auto r = mc_run(c);
    for (const auto &rec : r.records) {
        CHECK(rec.status == "complete");
        CHECK(rec.forcing_set_size == 2 * rec.components);
    }
    CHECK_FALSE(r.ode_bound.has_value());
}

TEST_CASE("reports persist as JSON lines and a summary") {
    const auto dir = std::filesystem::temp_directory_path() / "zf_experiments_test";
    std::filesystem::create_directories(dir);
    ExperimentConfig c;
    c.n = 200;
    c.samples = 3;
    c.records_path = (dir / "records.jsonl").string();
    c.summary_path = (dir / "summary.json").string();
    const auto r = mc_run(c);
    persist_report(r);
    std::ifstream in(c.records_path);
    const auto back = read_json_lines(in);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i].same_outcome(r.records[i]));
    std::ifstream s(c.summary_path);
    const json j = json::parse(s);
    CHECK(j.at("mean_fraction").get<double>() == doctest::Approx(r.mean_fraction));
    CHECK(j.at("config").at("n") == 200);
    std::filesystem::remove_all(dir);
}

TEST_CASE("ZF_THREADS sets the default worker count") {
    setenv("ZF_THREADS", "3", 1);
    CHECK(default_thread_count() == 3);
    unsetenv("ZF_THREADS");
    CHECK(default_thread_count() >= 1);
}

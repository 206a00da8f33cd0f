#include <doctest.h>

#include <sstream>

#include "zf/json_io.hpp"

using namespace zf;

TEST_CASE("forces serialise as pairs") {
    const json j = std::vector<Force>{{0, 1}, {1, 2}};
    CHECK(j.dump() == "[[0,1],[1,2]]");
    CHECK(j.get<std::vector<Force>>() == std::vector<Force>{{0, 1}, {1, 2}});
}

TEST_CASE("greedy records carry sequence, witnesses, forcing set, status and seed") {
    const RegularGraph g = sample_simple(30, 3, 2).graph;
    const GreedyResult r = degree_greedy(g, 7);
    const json j = r;
    for (const char *key : {"sequence", "witnesses", "forcing_set", "status", "seed"}) CHECK(j.contains(key));
    CHECK(j["status"] == "complete");
    CHECK(j["seed"] == 7);
    const auto rec = j.get<ZSequenceRecord>();
    CHECK(rec.sequence == r.record.sequence);
    CHECK(rec.witnesses == r.record.witnesses);
    CHECK(rec.forcing_set == r.record.forcing_set);
}

TEST_CASE("portrait summary") {
    const json j = run_plain(3);
    CHECK(j["d"] == 3);
    CHECK(j["x_k"].size() == 2);
    CHECK(j["upper_bound"].get<double>() == doctest::Approx(0.17071).epsilon(1e-4));
    CHECK(j.contains("solver"));
}

TEST_CASE("sample records round trip through JSON lines") {
    SampleRecord a;
    a.seed = 3;
    a.n = 10;
    a.d = 3;
    a.algorithm = Algorithm::smart;
    a.forcing_set_size = 4;
    a.status = "complete";
    a.sup_distance = {0.1, 0.2};
    SampleRecord b = a;
    b.seed = 4;
    std::stringstream ss;
    write_json_lines(ss, {a, b});
    const auto back = read_json_lines(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].same_outcome(a));
    CHECK(back[1].same_outcome(b));
    std::stringstream bad("{\"seed\": 1}\n");
    CHECK_THROWS_AS(read_json_lines(bad), json::exception);
}

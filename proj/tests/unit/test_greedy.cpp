#include <doctest.h>

#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "zf/errors.hpp"
#include "zf/greedy.hpp"

using namespace zf;

namespace {

void check_trace(const GreedyResult &r, int n) {
    long prev_t = -1, prev_u = n + 1;
    for (const auto &row : r.trace.rows) {
        CHECK(row.t == prev_t + 1);
        CHECK(row.undominated <= prev_u);
        const long dominated = std::accumulate(row.type_counts.begin(), row.type_counts.end(), 0L);
        CHECK(dominated + row.undominated == n);
        prev_t = row.t;
        prev_u = row.undominated;
    }
}

} // namespace

TEST_CASE("both greedies give valid Z-sequences and forcing sets") {
    for (int d : {3, 4, 5, 6})
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const RegularGraph g = sample_simple(60, d, seed).graph;
            GreedyOptions opts;
            opts.verify_each_step = true;
            for (const GreedyResult &r : {degree_greedy(g, seed, opts), smart_degree_greedy(g, seed, opts)}) {
                REQUIRE(r.status == GreedyStatus::complete);
                CHECK(validate_zseq(g, r.record.sequence, r.record.witnesses));
                CHECK(test::naive_witnesses_ok(g, r.record.sequence, r.record.witnesses));
                CHECK(is_zero_forcing_set(g, r.record.forcing_set));
                CHECK(r.record.forcing_set == complement(g.n(), VertexSet(r.record.witnesses.begin(), r.record.witnesses.end())));
                CHECK(r.seed == seed);
                check_trace(r, g.n());
            }
        }
}

TEST_CASE("greedy is deterministic in its seed") {
    const RegularGraph g = sample_simple(200, 3, 1).graph;
    const auto a = degree_greedy(g, 5), b = degree_greedy(g, 5);
    CHECK(a.record.sequence == b.record.sequence);
    CHECK(a.record.witnesses == b.record.witnesses);
    const auto s1 = smart_degree_greedy(g, 5), s2 = smart_degree_greedy(g, 5);
    CHECK(s1.algorithm_sequence == s2.algorithm_sequence);
    CHECK(s1.insertions == s2.insertions);
}

TEST_CASE("greedy never beats the exact zero forcing number") {
    for (const Graph &g : test::small_connected_graphs(30, 3)) {
        if (g.min_degree() < 1) continue;
        const int z = brute_force_Z(g);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            CHECK(static_cast<int>(degree_greedy(g, seed).forcing_set_size()) >= z);
            CHECK(static_cast<int>(smart_degree_greedy(g, seed).forcing_set_size()) >= z);
        }
    }
}

TEST_CASE("plain greedy on paths and complete graphs") {
    const auto p = degree_greedy(path_graph(6), 0);
    // Starting from a minimum-degree vertex, the path is forced from one end.
    CHECK(p.forcing_set_size() == 1);
    CHECK(degree_greedy(complete_graph(5), 0).forcing_set_size() == 4);
}

TEST_CASE("disconnected input stalls unless restarts are allowed") {
    const Graph g = disjoint_union(cycle_graph(5), cycle_graph(6));
    const auto stalled = degree_greedy(g, 1);
    CHECK(stalled.status == GreedyStatus::component_stalled);
    CHECK(stalled.multi_component);
    GreedyOptions opts;
    opts.restart_on_stall = true;
    const auto full = degree_greedy(g, 1, opts);
    CHECK(full.status == GreedyStatus::complete);
    CHECK(full.forcing_set_size() == 4);
    CHECK(validate_zseq(g, full.record.sequence, full.record.witnesses));
    int restarts = 0;
    for (const auto &row : full.trace.rows) restarts += row.source == "restart";
    CHECK(restarts == 1);
    CHECK(smart_degree_greedy(g, 1, opts).status == GreedyStatus::complete);
}

TEST_CASE("smart greedy policies all produce valid output") {
    const RegularGraph g = sample_simple(300, 3, 8).graph;
    for (auto pol : {SourcePolicy::uniform, SourcePolicy::prefer_t1, SourcePolicy::prefer_t2}) {
        GreedyOptions opts;
        opts.policy = pol;
        const auto r = smart_degree_greedy(g, 2, opts);
        CHECK(r.status == GreedyStatus::complete);
        CHECK(validate_zseq(g, r.record.sequence, r.record.witnesses));
    }
}

TEST_CASE("smart greedy witness scores are minimal") {
    const RegularGraph g = sample_simple(400, 3, 21).graph;
    const auto r = smart_degree_greedy(g, 3);
    int scored = 0;
    for (const auto &row : r.trace.rows) {
        if (row.witness_score < 0 || row.best_alternative_score < 0) continue; // single candidate
        ++scored;
        CHECK(row.witness_score <= row.best_alternative_score);
    }
    CHECK(scored > 0);
}

TEST_CASE("trace csv round trip and scaling") {
    const RegularGraph g = sample_simple(50, 4, 2).graph;
    const auto r = degree_greedy(g, 9);
    std::stringstream ss;
    write_trace_csv(ss, r.trace);
    CHECK(ss.str().rfind("t,type,source,T0,T1,T2,T3,U\n", 0) == 0);
    const GreedyTrace back = read_trace_csv(ss);
    CHECK(back.d == 4);
    REQUIRE(back.rows.size() == r.trace.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
        CHECK(back.rows[i].t == r.trace.rows[i].t);
        CHECK(back.rows[i].source == r.trace.rows[i].source);
        CHECK(back.rows[i].type_counts == r.trace.rows[i].type_counts);
        CHECK(back.rows[i].undominated == r.trace.rows[i].undominated);
    }
    const auto scaled = trace_to_scaled_series(r.trace, 50);
    CHECK(scaled.front().u == doctest::Approx(1.0 - 5.0 / 50)); // start vertex and its 4 neighbours
    CHECK(scaled.back().u == 0.0);
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zf/forcing.hpp"
#include "zf/graph.hpp"

namespace zf {

enum class GreedyStatus {
    complete,          ///< U emptied
    component_stalled, ///< no dominated vertex of positive type while U is non-empty
    forcing_failed,    ///< smart greedy only: closure(T1) != V (never expected)
};

const char *to_string(GreedyStatus s) noexcept;

/// Which dominated set the smart greedy draws from when both hold vertices of
/// the minimum positive type.
enum class SourcePolicy { uniform, prefer_t1, prefer_t2 };

struct GreedyOptions {
    /// On a stall, start again from a minimum-degree vertex of U and keep going.
    bool restart_on_stall = false;
    SourcePolicy policy = SourcePolicy::uniform;
    /// Recount every type from scratch after each step (slow; for tests).
    bool verify_each_step = false;
};

/// One loop iteration. Counts are over all dominated vertices.
struct TraceRow {
    long t = 0;
    int step_type = 0;
    std::string source; ///< init | restart | T | T1 | T2 | T1:insert
    std::vector<long> type_counts; ///< T_0 .. T_{d-1}
    long undominated = 0;
    // Smart greedy witness bookkeeping; -1 when not applicable.
    int witness_score = -1;
    int best_alternative_score = -1;
};

struct GreedyTrace {
    int d = 0;
    std::vector<TraceRow> rows;
};

struct GreedyResult {
    ZSequenceRecord record;
    GreedyTrace trace;
    GreedyStatus status = GreedyStatus::complete;
    bool multi_component = false; ///< a component ran out of forcers before U emptied
    std::uint64_t seed = 0;
    long insertions = 0;                    ///< smart greedy: if-clause triggers
    std::vector<Vertex> algorithm_sequence; ///< S in the order the algorithm built it

    std::size_t forcing_set_size() const noexcept { return record.forcing_set.size(); }
};

/// Degree-greedy Z-sequence construction. Ties among minimum-type vertices and
/// the witness in N(v) ∩ U are drawn uniformly with the given seed.
GreedyResult degree_greedy(const Graph &g, std::uint64_t seed, const GreedyOptions &options = {});

/// Smart degree-greedy: tracks the future forcing set T1 and the witnesses T2,
/// inserts u into S when N(u) ⊆ T1, and picks the witness minimising
/// |(N(w) \ N(v)) ∩ U|. The forcing set is T1 at the end.
GreedyResult smart_degree_greedy(const Graph &g, std::uint64_t seed,
                                 const GreedyOptions &options = {});

struct ScaledRow {
    double x = 0;
    std::vector<double> y; ///< T_i / n
    double u = 0;          ///< |U| / n
};

std::vector<ScaledRow> trace_to_scaled_series(const GreedyTrace &trace, int n);

/// CSV: t,type,source,T0,...,T{d-1},U
void write_trace_csv(std::ostream &out, const GreedyTrace &trace);
GreedyTrace read_trace_csv(std::istream &in);

} // namespace zf

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zf/de_solver.hpp"
#include "zf/greedy.hpp"

namespace zf {

enum class Algorithm { plain, smart };
const char *to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(const std::string &s);

struct ExperimentConfig {
    int d = 3;
    int n = 1000;
    int samples = 1;
    Algorithm algorithm = Algorithm::plain;
    std::uint64_t base_seed = 1;
    int threads = 1;
    /// Restart from a fresh vertex of U when a component is exhausted. Needed
    /// for d = 2, where the graph is a union of cycles.
    bool restart_on_stall = false;
    /// Compare every run's trajectory against the ODE portrait (d >= 3).
    bool compare_ode = false;
    std::optional<int> compare_phase; ///< restrict the comparison to phase k
    std::string records_path;         ///< JSON lines, one record per sample
    std::string summary_path;         ///< summary JSON
};

struct SampleRecord {
    std::uint64_t seed = 0;
    int n = 0;
    int d = 0;
    Algorithm algorithm = Algorithm::plain;
    bool restart_on_stall = false;
    long forcing_set_size = -1; ///< -1 when graph generation failed
    std::string status;         ///< greedy status or "generation_failed"
    int attempts = 0;           ///< pairings drawn until a simple one
    int components = 0;
    bool witnesses_valid = false;
    long insertions = 0;
    std::vector<double> sup_distance; ///< per y_i; empty unless compared
    double runtime_ms = 0;

    /// Equality ignoring runtime.
    bool same_outcome(const SampleRecord &o) const;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<SampleRecord> records; ///< sorted by seed
    int generation_failures = 0;
    double mean_fraction = 0;   ///< mean |B| / n over completed samples
    double stddev_fraction = 0;
    double mean_size = 0;       ///< mean |B|
    std::optional<double> ode_bound;
    std::vector<double> sup_distance_mean; ///< per y_i, over samples
    std::vector<double> sup_distance_max;
};

/// Runs one sample: seed = base_seed + index.
SampleRecord run_sample(const ExperimentConfig &config, int index, const PhasePortrait *portrait);

/// Deterministic for a given base seed whatever the thread count. Aborts with
/// NumericalError when more than half of the graphs cannot be generated.
ExperimentReport mc_run(const ExperimentConfig &config);

/// Recomputes the aggregates from `records`.
void aggregate_report(ExperimentReport &report);

/// Re-runs a recorded sample from its seed.
SampleRecord replay(const SampleRecord &record);

/// max over trace rows of |T_i(t)/n - y_i(t/n)| for each i, on rows with
/// t/n <= x_end (and inside phase k when given).
std::vector<double> compare_trajectory(const GreedyTrace &trace, int n, const PhasePortrait &portrait,
                                       std::optional<int> phase = std::nullopt);

/// Same measure between two portraits, on the grid of the first.
std::vector<double> compare_portraits(const PhasePortrait &a, const PhasePortrait &b);

/// Writes records (JSON lines) and summary JSON to the configured paths.
void persist_report(const ExperimentReport &report);

/// Default worker count: ZF_THREADS if set, else hardware concurrency.
int default_thread_count();

} // namespace zf

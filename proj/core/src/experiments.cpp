#include "zf/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "zf/errors.hpp"
#include "zf/json_io.hpp"

namespace zf {

const char *to_string(Algorithm a) noexcept { return a == Algorithm::plain ? "plain" : "smart"; }

Algorithm parse_algorithm(const std::string &s) {
    if (s == "plain") return Algorithm::plain;
    if (s == "smart") return Algorithm::smart;
    throw PreconditionError("unknown algorithm '" + s + "' (plain | smart)");
}

bool SampleRecord::same_outcome(const SampleRecord &o) const {
    return seed == o.seed && n == o.n && d == o.d && algorithm == o.algorithm &&
           restart_on_stall == o.restart_on_stall && forcing_set_size == o.forcing_set_size &&
           status == o.status && attempts == o.attempts && components == o.components &&
           witnesses_valid == o.witnesses_valid && insertions == o.insertions &&
           sup_distance == o.sup_distance;
}

namespace {

void validate(const ExperimentConfig &c) {
    if (c.samples < 1) throw PreconditionError("samples must be at least 1");
    if (c.d < 1 || c.n < 1) throw PreconditionError("d and n must be positive");
    if ((static_cast<long long>(c.d) * c.n) % 2 != 0) throw PreconditionError("d*n must be even");
    if (c.d >= c.n) throw PreconditionError("need d < n");
    if (c.threads < 1) throw PreconditionError("threads must be at least 1");
    if (c.compare_ode && c.d < 3) throw PreconditionError("ODE comparison needs d >= 3");
    if (c.compare_ode && c.algorithm == Algorithm::smart && c.d != 3)
        throw PreconditionError("smart ODE exists for d = 3 only");
}

} // namespace

SampleRecord run_sample(const ExperimentConfig &c, int index, const PhasePortrait *portrait) {
    const auto start = std::chrono::steady_clock::now();
    SampleRecord rec;
    rec.seed = c.base_seed + static_cast<std::uint64_t>(index);
    rec.n = c.n;
    rec.d = c.d;
    rec.algorithm = c.algorithm;
    rec.restart_on_stall = c.restart_on_stall;
    std::optional<SampledGraph> sg;
    try {
        sg.emplace(sample_simple(c.n, c.d, rec.seed));
    } catch (const NumericalError &) {
        rec.status = "generation_failed";
        return rec;
    }
    rec.attempts = sg->attempts;
    rec.components = static_cast<int>(components(sg->graph).size());
    GreedyOptions opts;
    opts.restart_on_stall = c.restart_on_stall;
    const GreedyResult res = c.algorithm == Algorithm::plain ? degree_greedy(sg->graph, rec.seed, opts)
                                                             : smart_degree_greedy(sg->graph, rec.seed, opts);
    rec.status = to_string(res.status);
    rec.forcing_set_size = static_cast<long>(res.forcing_set_size());
    rec.insertions = res.insertions;
    rec.witnesses_valid = validate_zseq(sg->graph, res.record.sequence, res.record.witnesses) &&
                          is_zero_forcing_set(sg->graph, res.record.forcing_set);
    if (portrait) rec.sup_distance = compare_trajectory(res.trace, c.n, *portrait, c.compare_phase);
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

void aggregate_report(ExperimentReport &r) {
    std::sort(r.records.begin(), r.records.end(),
              [](const SampleRecord &a, const SampleRecord &b) { return a.seed < b.seed; });
    r.generation_failures = 0;
    double s = 0, s2 = 0, sz = 0;
    int m = 0;
    std::size_t dims = 0;
    for (const auto &rec : r.records) {
        if (rec.forcing_set_size < 0) {
            ++r.generation_failures;
            continue;
        }
        const double f = static_cast<double>(rec.forcing_set_size) / rec.n;
        s += f;
        s2 += f * f;
        sz += static_cast<double>(rec.forcing_set_size);
        ++m;
        dims = std::max(dims, rec.sup_distance.size());
    }
    r.mean_fraction = m ? s / m : 0;
    r.mean_size = m ? sz / m : 0;
    r.stddev_fraction = m > 1 ? std::sqrt(std::max(0.0, (s2 - m * r.mean_fraction * r.mean_fraction) / (m - 1))) : 0;
    r.sup_distance_mean.assign(dims, 0.0);
    r.sup_distance_max.assign(dims, 0.0);
    int compared = 0;
    for (const auto &rec : r.records) {
        if (rec.sup_distance.size() != dims || dims == 0) continue;
        ++compared;
        for (std::size_t i = 0; i < dims; ++i) {
            r.sup_distance_mean[i] += rec.sup_distance[i];
            r.sup_distance_max[i] = std::max(r.sup_distance_max[i], rec.sup_distance[i]);
        }
    }
    for (double &v : r.sup_distance_mean) v = compared ? v / compared : 0;
}

ExperimentReport mc_run(const ExperimentConfig &c) {
    validate(c);
    ExperimentReport report;
    report.config = c;
    std::optional<PhasePortrait> portrait;
    if (c.d >= 3 && (c.algorithm == Algorithm::plain || c.d == 3)) {
        portrait = c.algorithm == Algorithm::plain ? run_plain(c.d) : run_smart_d3();
        report.ode_bound = portrait->upper_bound;
    }
    const PhasePortrait *cmp = c.compare_ode ? &*portrait : nullptr;

    report.records.resize(c.samples);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < c.samples; i = next++) {
            try {
                report.records[i] = run_sample(c, i, cmp);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = c.samples;
            }
        }
    };
    const int workers = std::min(c.threads, c.samples);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto &th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    aggregate_report(report);
    if (2 * report.generation_failures > c.samples)
        throw NumericalError("more than half of the graphs could not be generated");
    return report;
}

SampleRecord replay(const SampleRecord &r) {
    ExperimentConfig c;
    c.d = r.d;
    c.n = r.n;
    c.algorithm = r.algorithm;
    c.restart_on_stall = r.restart_on_stall;
    c.base_seed = r.seed;
    return run_sample(c, 0, nullptr);
}

std::vector<double> compare_trajectory(const GreedyTrace &trace, int n, const PhasePortrait &p,
                                       std::optional<int> phase) {
    if (trace.d != p.d) throw PreconditionError("trace and portrait have different d");
    std::vector<double> sup(p.d, 0.0);
    for (const auto &row : trace.rows) {
        const double x = static_cast<double>(row.t) / n;
        if (x > p.x_end) break;
        if (phase && p.phase_at(x) != *phase) continue;
        const auto y = p.types_at(x);
        for (int i = 0; i < p.d; ++i)
            sup[i] = std::max(sup[i], std::abs(static_cast<double>(row.type_counts[i]) / n - y[i]));
    }
    return sup;
}

std::vector<double> compare_portraits(const PhasePortrait &a, const PhasePortrait &b) {
    if (a.d != b.d) throw PreconditionError("portraits have different d");
    std::vector<double> sup(a.d, 0.0);
    for (const auto &ph : a.phases)
        for (double x : ph.x) {
            const auto ya = a.types_at(x), yb = b.types_at(x);
            for (int i = 0; i < a.d; ++i) sup[i] = std::max(sup[i], std::abs(ya[i] - yb[i]));
        }
    return sup;
}

void persist_report(const ExperimentReport &r) {
    if (!r.config.records_path.empty()) {
        std::ofstream os(r.config.records_path);
        if (!os) throw PreconditionError("cannot write " + r.config.records_path);
        write_json_lines(os, r.records);
    }
    if (!r.config.summary_path.empty()) {
        std::ofstream os(r.config.summary_path);
        if (!os) throw PreconditionError("cannot write " + r.config.summary_path);
        os << summary_json(r).dump(2) << '\n';
    }
}

int default_thread_count() {
    if (const char *env = std::getenv("ZF_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

} // namespace zf

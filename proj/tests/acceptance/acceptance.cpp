// Acceptance run. Every criterion prints its checks followed by one
// PASS/FAIL line; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zf/de_solver.hpp"
#include "zf/errors.hpp"
#include "zf/experiments.hpp"
#include "zf/forcing.hpp"
#include "zf/graph.hpp"
#include "zf/greedy.hpp"
#include "zf/hole_bound.hpp"
#include "zf/rng.hpp"
#include "zf/spectral.hpp"

using namespace zf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Records one check and prints it.
class Checks {
public:
    bool near(const std::string &what, double got, double want, double tol) {
        const bool ok = std::abs(got - want) <= tol;
        std::printf("    %-4s %s: %.7g vs %.7g (err %.2e, tol %.1e)\n", ok ? "ok" : "BAD", what.c_str(), got,
                    want, std::abs(got - want), tol);
        return record(ok);
    }
    bool within(const std::string &what, double got, double lo, double hi) {
        const bool ok = got >= lo && got <= hi;
        std::printf("    %-4s %s: %.7g in [%.7g, %.7g]\n", ok ? "ok" : "BAD", what.c_str(), got, lo, hi);
        return record(ok);
    }
    bool below(const std::string &what, double got, double limit) {
        const bool ok = got < limit;
        std::printf("    %-4s %s: %.4g < %.4g\n", ok ? "ok" : "BAD", what.c_str(), got, limit);
        return record(ok);
    }
    bool count(const std::string &what, long failures, long total) {
        const bool ok = failures == 0;
        std::printf("    %-4s %s: %ld failures in %ld\n", ok ? "ok" : "BAD", what.c_str(), failures, total);
        return record(ok);
    }
    bool all_ok() const { return bad_ == 0; }
    int bad() const { return bad_; }

private:
    bool record(bool ok) {
        if (!ok) ++bad_;
        return ok;
    }
    int bad_ = 0;
};

// ---------------------------------------------------------------------------

void plain_table(Checks &c) {
    for (const auto &row : test::kTables) {
        const auto t0 = Clock::now();
        const PhasePortrait p = run_plain(row.d);
        const double secs = seconds_since(t0);
        c.near("d=" + std::to_string(row.d) + " upper bound", p.upper_bound, row.upper, 2e-4);
        c.below("d=" + std::to_string(row.d) + " runtime [s]", secs, 60);
    }
}

void phase_values(Checks &c) {
    const PhasePortrait p3 = run_plain(3);
    c.near("d=3 x_1", p3.boundaries.at(0), 0.47574, 1e-4);
    c.near("d=3 y_0(x_1)", p3.phases.at(0).end_state.y.at(0), 0.49112, 1e-3);
    c.near("d=3 y_2(x_1)", p3.phases.at(0).end_state.y.at(2), 0.15533, 1e-3);
    c.near("d=3 x_2", p3.boundaries.at(1), 0.82929, 1e-4);

    const PhasePortrait p4 = run_plain(4);
    c.near("d=4 x_1", p4.boundaries.at(0), 0.07167, 1e-4);
    c.near("d=4 y_0(x_1)", p4.phases.at(0).end_state.y.at(0), 0.07170, 1e-3);
    c.near("d=4 y_3(x_1)", p4.phases.at(0).end_state.y.at(3), 0.09858, 1e-3);
    c.near("d=4 x_2", p4.boundaries.at(1), 0.40140, 1e-4);
    c.near("d=4 y_0(x_2)", p4.phases.at(1).end_state.y.at(0), 0.41108, 1e-3);
    c.near("d=4 y_2(x_2)", p4.phases.at(1).end_state.y.at(2), 0.16120, 1e-3);
    c.near("d=4 y_3(x_2)", p4.phases.at(1).end_state.y.at(3), 0.08239, 1e-3);
    c.near("d=4 x_3", p4.boundaries.at(2), 0.74672, 1e-4);
}

void smart_bound(Checks &c) {
    const PhasePortrait plain = run_plain(3);
    const PhasePortrait smart = run_smart_d3();
    c.near("smart d=3 upper bound", smart.upper_bound, 0.17057, 2e-4);
    c.near("improvement over plain", plain.upper_bound - smart.upper_bound, 0.00015, 1e-4);
}

void lower_table(Checks &c) {
    for (const auto &row : test::kTables) {
        const auto t0 = Clock::now();
        const HoleBoundResult r = threshold_a(row.d);
        const double secs = seconds_since(t0);
        const std::string d = "d=" + std::to_string(row.d);
        c.near(d + " a", r.a_threshold, row.a, 2e-5);
        c.near(d + " 1-2a", r.lower_bound, row.lower, 4e-5);
        c.below(d + " runtime [s]", secs, 1);
    }
}

void monte_carlo(Checks &c) {
    for (int d : {3, 4}) {
        ExperimentConfig cfg;
        cfg.d = d;
        cfg.n = 200000;
        cfg.samples = 10;
        cfg.base_seed = 1;
        cfg.threads = default_thread_count();
        cfg.compare_ode = true;
        const ExperimentReport rep = mc_run(cfg);
        const std::string tag = "d=" + std::to_string(d);
        c.count(tag + " generation failures", rep.generation_failures, cfg.samples);
        c.near(tag + " mean |B|/n vs ODE", rep.mean_fraction, rep.ode_bound.value_or(NAN), 0.005);
        double sup = 0;
        for (double s : rep.sup_distance_max) sup = std::max(sup, s);
        c.below(tag + " trajectory sup-distance", sup, 0.01);
    }
}

void oracle_suite(Checks &c) {
    const std::vector<Graph> graphs = test::small_connected_graphs(220, 2024);
    long identity_failures = 0, greedy_below = 0, runs = 0;
    for (const Graph &g : graphs) {
        const int z = brute_force_Z(g);
        const int gr = brute_force_grundy(g);
        if (z + gr != g.n()) ++identity_failures;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            for (const GreedyResult &res : {degree_greedy(g, seed), smart_degree_greedy(g, seed)}) {
                ++runs;
                if (static_cast<int>(res.forcing_set_size()) < z) ++greedy_below;
            }
        }
    }
    c.within("graphs in the suite", static_cast<double>(graphs.size()), 200, 1e9);
    c.count("Z + grundy = n", identity_failures, static_cast<long>(graphs.size()));
    c.count("greedy |B| >= Z", greedy_below, runs);
    c.near("Petersen Z", brute_force_Z(petersen_graph()), 5, 0);
}

void witness_validity(Checks &c) {
    const int ds[] = {3, 4, 5, 3};
    const int ns[] = {20, 60, 150, 400};
    long completed = 0, invalid = 0, not_forcing = 0, runs = 0;
    for (int i = 0; i < 1000; ++i) {
        const int d = ds[i % 4];
        const int n = ns[(i / 4) % 4];
        const RegularGraph g = sample_simple(n, d, 9000 + static_cast<std::uint64_t>(i)).graph;
        const GreedyResult res = (i / 16) % 2 == 0 ? degree_greedy(g, static_cast<std::uint64_t>(i))
                                                   : smart_degree_greedy(g, static_cast<std::uint64_t>(i));
        ++runs;
        if (res.status != GreedyStatus::complete) continue;
        ++completed;
        if (!validate_zseq(g, res.record.sequence, res.record.witnesses)) ++invalid;
        if (closure(g, res.record.forcing_set).stalled) ++not_forcing;
    }
    std::printf("    info %ld of %ld runs completed\n", completed, runs);
    c.count("validate_zseq", invalid, completed);
    c.count("closure(V \\ W) = V", not_forcing, completed);
}

void rate_identities(Checks &c) {
    const int states = 10000;
    double worst_plain = 0;
    for (int s = 0; s < states; ++s) {
        const int d = 3 + s % 12;
        const std::vector<double> y = test::random_valid_state(d, 500 + static_cast<unsigned long long>(s));
        const ScaledState st{0.0, y};
        for (int j = 1; j < d; ++j) {
            double sum = 0;
            for (int i = 0; i < d; ++i) sum += rate_f(i, j, st, d);
            worst_plain = std::max(worst_plain, std::abs(sum - j));
        }
    }
    c.below("plain: max |sum_i f_ij - j|", worst_plain, 1e-12);

    Rng rng(77);
    double worst_smart = 0;
    for (int s = 0; s < states; ++s) {
        // A valid aggregated d = 3 state, each type split at random between T1 and T2.
        const std::vector<double> agg = test::random_valid_state(3, 700000 + static_cast<unsigned long long>(s));
        std::vector<double> y(6);
        for (int i = 0; i < 3; ++i) {
            const double share = rng.uniform();
            y[2 * i] = share * agg[i];
            y[2 * i + 1] = agg[i] - y[2 * i];
        }
        const ScaledState st{0.0, y};
        for (int j = 1; j <= 2; ++j)
            for (int l = 1; l <= 2; ++l) {
                double sum = 0;
                for (int i = 0; i < 3; ++i)
                    for (int k = 1; k <= 2; ++k) sum += smart_rate_f(i, j, k, l, st);
                worst_smart = std::max(worst_smart, std::abs(sum - j));
            }
    }
    c.below("smart: max |sum_ik f_ijkl - j|", worst_smart, 1e-12);

    // Types strictly between 0 and the top type of the phase must not accumulate.
    double worst_drift = 0;
    long points = 0;
    for (int d = 3; d <= 14; ++d) {
        const PhasePortrait p = run_plain(d);
        for (const PhaseTrajectory &ph : p.phases) {
            const int top = d - ph.k;
            for (std::size_t r = 0; r < ph.x.size(); ++r) {
                const PhaseDerivative der = phase_derivative(ph.k, ScaledState{ph.x[r], ph.y[r]}, d);
                for (int i = 1; i < top; ++i) worst_drift = std::max(worst_drift, std::abs(der.dy[i]));
                ++points;
            }
        }
    }
    const PhasePortrait smart = run_smart_d3();
    for (const PhaseTrajectory &ph : smart.phases) {
        if (ph.k != 1) continue;
        for (std::size_t r = 0; r < ph.x.size(); ++r) {
            const PhaseDerivative der = smart_phase_derivative(1, ScaledState{ph.x[r], ph.y[r]});
            worst_drift = std::max({worst_drift, std::abs(der.dy[2]), std::abs(der.dy[3])});
            ++points;
        }
    }
    std::printf("    info %ld trajectory points\n", points);
    c.below("max |dy_i/dx| of non-accumulating types", worst_drift, 1e-8);
}

void simplicity(Checks &c) {
    int simple = 0;
    const int pairings = 2000;
    for (int i = 0; i < pairings; ++i)
        if (is_simple(project(new_pairing(1000, 3, 31000 + static_cast<std::uint64_t>(i))))) ++simple;
    c.within("d=3 n=1000 simple fraction", static_cast<double>(simple) / pairings, 0.12, 0.15);

    const int samples = 200;
    double cycles = 0;
    for (int i = 0; i < samples; ++i)
        cycles += cycle_count_2regular(sample_simple(10000, 2, 52000 + static_cast<std::uint64_t>(i)).graph);
    c.within("d=2 n=1e4 mean cycle count", cycles / samples, 3.6, 5.6);
}

void spectral_formulas(Checks &c) {
    for (auto [n, d] : {std::pair{1e6, 100.0}, {1e4, 10.0}, {1e8, 1e4}, {400.0, 3.0}})
        c.near("prop7(n=" + std::to_string(static_cast<long long>(n)) + ", lambda=d)", prop7_bound(n, d, d).exact,
               n, 0);

    const double n = 1e8, d = 1e4;
    const double deficit = 1 - prop7_bound(n, d, 2 * std::sqrt(d)).exact / n;
    c.within("d=1e4 deficit / (ln d / 2d)", deficit / (std::log(d) / (2 * d)), 0.9, 1.1);

    for (double K : {1.0, 2.0, 3.0}) {
        const AsymptoticEstimate e = asymptotic_check(K, 1e6);
        c.near("asymptotic_check K=" + std::to_string(static_cast<int>(K)) + " d=1e6", e.estimate, e.target, 0.3);
    }
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        std::function<void(Checks &)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "upper bound table from the plain ODE", plain_table},
        {2, "phase boundary values for d=3 and d=4", phase_values},
        {3, "smart d=3 bound and improvement", smart_bound},
        {4, "lower bound table from the hole threshold", lower_table},
        {5, "Monte Carlo greedy vs ODE at n=2e5", monte_carlo},
        {6, "oracle suite on small connected graphs", oracle_suite},
        {7, "witness validity over 1000 greedy runs", witness_validity},
        {8, "rate identities and non-accumulation", rate_identities},
        {9, "pairing model simplicity and cycle counts", simplicity},
        {10, "spectral bound formulas", spectral_formulas},
    };

    int failed = 0;
    for (const Criterion &cr : criteria) {
        std::printf("[%d] %s\n", cr.id, cr.name);
        std::fflush(stdout);
        Checks c;
        const auto t0 = Clock::now();
        std::string error;
        try {
            cr.run(c);
        } catch (const std::exception &e) {
            error = e.what();
        }
        const bool ok = error.empty() && c.all_ok();
        if (!ok) ++failed;
        std::printf("%s criterion %d: %s (%d bad checks%s%s, %.1f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.name,
                    c.bad(), error.empty() ? "" : ", exception: ", error.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    // The a.a.s. statements are limits in n; nothing at finite n can assert them.
    std::printf("[11] asymptotic almost-sure statements\n");
    std::printf("    info not asserted at finite n; criteria 5 to 10 are the finite surrogates\n");
    std::printf("PASS criterion 11: asymptotic almost-sure statements (declared, not asserted)\n");

    std::printf("%d of %zu criteria failed\n", failed, criteria.size() + 1);
    return failed == 0 ? 0 : 1;
}

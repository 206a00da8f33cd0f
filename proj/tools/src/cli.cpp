#include "zf_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zf/de_solver.hpp"
#include "zf/errors.hpp"
#include "zf/experiments.hpp"
#include "zf/forcing.hpp"
#include "zf/graph.hpp"
#include "zf/graph_io.hpp"
#include "zf/greedy.hpp"
#include "zf/hole_bound.hpp"
#include "zf/json_io.hpp"
#include "zf/rng.hpp"
#include "zf/spectral.hpp"

namespace zf::cli {

namespace {

struct Common {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out;
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads (default: ZF_THREADS or hardware)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "output file (default: stdout)");
}

// Writes to --out when given, else to the caller's stream.
class Sink {
public:
    Sink(const std::string &path, std::ostream &fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw PreconditionError("cannot write " + path);
            os_ = &file_;
        }
    }
    std::ostream &operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream *os_;
};

Graph load_graph(const std::string &path) { return Graph::from_multigraph(load_edge_list(path)); }

Graph named_graph(const std::string &name) {
    if (name == "petersen") return petersen_graph();
    if (name.size() >= 2) {
        const int k = std::stoi(name.substr(1));
        switch (name[0]) {
        case 'K': return complete_graph(k);
        case 'C': return cycle_graph(k);
        case 'P': return path_graph(k);
        default: break;
        }
    }
    throw PreconditionError("unknown named graph '" + name + "' (petersen, K<n>, C<n>, P<n>)");
}

std::vector<int> parse_d_range(const std::string &s) {
    std::vector<int> out;
    const auto colon = s.find(':');
    const int lo = std::stoi(s.substr(0, colon));
    const int hi = colon == std::string::npos ? lo : std::stoi(s.substr(colon + 1));
    if (lo > hi) throw PreconditionError("empty d range " + s);
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
}

SourcePolicy parse_policy(const std::string &s) {
    if (s == "uniform") return SourcePolicy::uniform;
    if (s == "prefer_t1") return SourcePolicy::prefer_t1;
    if (s == "prefer_t2") return SourcePolicy::prefer_t2;
    throw PreconditionError("unknown policy '" + s + "'");
}

struct GraphSource {
    std::string graph, named;
    int n = 0, d = 0;

    void add(CLI::App *sub) {
        sub->add_option("--graph", graph, "edge-list file");
        sub->add_option("--named", named, "petersen | K<n> | C<n> | P<n>");
        sub->add_option("--n", n, "vertices of a sampled regular graph");
        sub->add_option("--d", d, "degree of a sampled regular graph");
    }
    bool given() const { return !graph.empty() || !named.empty() || (n > 0 && d > 0); }
    Graph load(std::uint64_t seed) const {
        if (!graph.empty()) return load_graph(graph);
        if (!named.empty()) return named_graph(named);
        if (n > 0 && d > 0) return sample_simple(n, d, seed).graph;
        throw PreconditionError("give --graph, --named, or --n and --d");
    }
};

} // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Zero forcing bounds for random regular graphs", "zf"};
    app.require_subcommand(1);
    Common common;
    common.threads = default_thread_count();

    // gen
    auto *gen = app.add_subcommand("gen", "sample a random d-regular graph (or a named graph)");
    int gen_n = 0, gen_d = 0;
    std::string gen_named;
    bool gen_multigraph = false;
    gen->add_option("--n", gen_n, "vertices");
    gen->add_option("--d", gen_d, "degree");
    gen->add_option("--named", gen_named, "petersen | K<n> | C<n> | P<n>");
    gen->add_flag("--multigraph", gen_multigraph, "emit one pairing projection without rejection");
    add_common(gen, common);

    // force
    auto *force = app.add_subcommand("force", "run the zero forcing closure of a set");
    GraphSource force_src;
    std::vector<int> force_set;
    bool force_random = false;
    force_src.add(force);
    force->add_option("--set", force_set, "initial black vertices")->delimiter(',')->required();
    force->add_flag("--random-order", force_random, "apply eligible forces in random order");
    add_common(force, common);

    // greedy
    auto *greedy = app.add_subcommand("greedy", "run the degree-greedy Z-sequence construction");
    GraphSource greedy_src;
    std::string greedy_algo = "plain", greedy_policy = "uniform", greedy_trace;
    bool greedy_restart = false, greedy_verify = false;
    greedy_src.add(greedy);
    greedy->add_option("--algo", greedy_algo, "plain | smart")->capture_default_str();
    greedy->add_option("--policy", greedy_policy, "uniform | prefer_t1 | prefer_t2 (smart)")->capture_default_str();
    greedy->add_flag("--restart", greedy_restart, "restart on exhausted components");
    greedy->add_flag("--verify", greedy_verify, "recount types after every step");
    greedy->add_option("--trace", greedy_trace, "write the type-count trace CSV here");
    add_common(greedy, common);

    // exact
    auto *exact = app.add_subcommand("exact", "exact Z and Z-Grundy domination number of a small graph");
    GraphSource exact_src;
    int exact_max = 16;
    exact_src.add(exact);
    exact->add_option("--max-n", exact_max, "refuse graphs with more vertices")->capture_default_str();
    add_common(exact, common);

    // ode
    auto *ode = app.add_subcommand("ode", "solve the differential equations for the greedy process");
    int ode_d = 3;
    std::string ode_algo = "plain", ode_traj;
    SolverConfig ode_cfg;
    ode->add_option("--d", ode_d, "degree")->capture_default_str();
    ode->add_option("--algo", ode_algo, "plain | smart (d = 3)")->capture_default_str();
    ode->add_option("--rtol", ode_cfg.rtol)->capture_default_str();
    ode->add_option("--atol", ode_cfg.atol)->capture_default_str();
    ode->add_option("--max-step", ode_cfg.max_step)->capture_default_str();
    ode->add_option("--trajectory", ode_traj, "write PREFIX_phase<k>.csv per phase");
    add_common(ode, common);

    // lower-bound
    auto *lower = app.add_subcommand("lower-bound", "bipartite-hole lower bound table");
    std::string lower_d = "3:14";
    double lower_tol = 1e-12;
    bool lower_json = false;
    lower->add_option("--d", lower_d, "degree or range lo:hi")->capture_default_str();
    lower->add_option("--tol", lower_tol, "root tolerance in a")->capture_default_str();
    lower->add_flag("--json", lower_json, "JSON instead of CSV");
    add_common(lower, common);

    // spectral
    auto *spectral = app.add_subcommand("spectral", "spectral upper bound and mixing checks");
    GraphSource spec_src;
    std::optional<double> spec_lambda, spec_friedman;
    bool spec_two_sqrt = false;
    std::optional<int> spec_q;
    spec_src.add(spectral);
    spectral->add_option("--lambda", spec_lambda, "use this lambda instead of computing it");
    spectral->add_option("--friedman", spec_friedman, "use 2 sqrt(d-1) + EPS");
    spectral->add_flag("--two-sqrt-d", spec_two_sqrt, "use lambda = 2 sqrt(d)");
    spectral->add_option("--q", spec_q, "bipartite hole size to search for");
    add_common(spectral, common);

    // mc
    auto *mc = app.add_subcommand("mc", "Monte Carlo runs of the greedy on sampled graphs");
    ExperimentConfig mc_cfg;
    std::string mc_algo = "plain";
    std::optional<int> mc_phase;
    mc->add_option("--d", mc_cfg.d, "degree")->capture_default_str();
    mc->add_option("--n", mc_cfg.n, "vertices")->capture_default_str();
    mc->add_option("--samples", mc_cfg.samples, "graphs to sample (seeds base + i)")->capture_default_str();
    mc->add_option("--algo", mc_algo, "plain | smart")->capture_default_str();
    mc->add_flag("--restart", mc_cfg.restart_on_stall, "restart on exhausted components");
    mc->add_flag("--compare", mc_cfg.compare_ode, "compare each trajectory with the ODE");
    mc->add_option("--phase", mc_phase, "restrict the comparison to phase k");
    mc->add_option("--summary", mc_cfg.summary_path, "summary JSON file");
    add_common(mc, common);

    // compare
    auto *cmp = app.add_subcommand("compare", "sup-distance of a greedy trace from the ODE solution");
    std::string cmp_trace, cmp_algo = "plain";
    std::optional<int> cmp_phase;
    cmp->add_option("--trace", cmp_trace, "trace CSV from `greedy --trace`")->required();
    cmp->add_option("--algo", cmp_algo, "plain | smart")->capture_default_str();
    cmp->add_option("--phase", cmp_phase, "restrict to phase k");
    add_common(cmp, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return ok;
        }
        err << "zf: " << e.what() << "\n\n" << app.help();
        return usage;
    }

    try {
        if (gen->parsed()) {
            Sink sink(common.out, out);
            if (!gen_named.empty()) {
                write_edge_list(*sink, named_graph(gen_named));
            } else if (gen_multigraph) {
                write_edge_list(*sink, project(new_pairing(gen_n, gen_d, common.seed)));
            } else {
                const SampledGraph sg = sample_simple(gen_n, gen_d, common.seed);
                write_edge_list(*sink, sg.graph);
                err << "attempts: " << sg.attempts << '\n';
            }
        } else if (force->parsed()) {
            const Graph g = force_src.load(common.seed);
            VertexSet init(force_set.begin(), force_set.end());
            Rng rng(splitmix64(common.seed));
            const ForcingOutcome o = force_random ? closure_random_order(g, init, rng) : closure(g, init);
            json j = o;
            j["is_forcing_set"] = !o.stalled;
            Sink sink(common.out, out);
            *sink << j.dump() << '\n';
        } else if (greedy->parsed()) {
            const Graph g = greedy_src.load(common.seed);
            GreedyOptions opts;
            opts.restart_on_stall = greedy_restart;
            opts.verify_each_step = greedy_verify;
            opts.policy = parse_policy(greedy_policy);
            const GreedyResult r = parse_algorithm(greedy_algo) == Algorithm::plain
                                       ? degree_greedy(g, common.seed, opts)
                                       : smart_degree_greedy(g, common.seed, opts);
            if (!greedy_trace.empty()) {
                std::ofstream t(greedy_trace);
                if (!t) throw PreconditionError("cannot write " + greedy_trace);
                write_trace_csv(t, r.trace);
            }
            json j = r;
            j["n"] = g.n();
            j["witnesses_valid"] = validate_zseq(g, r.record.sequence, r.record.witnesses);
            Sink sink(common.out, out);
            *sink << j.dump() << '\n';
        } else if (exact->parsed()) {
            const Graph g = exact_src.load(common.seed);
            const int z = brute_force_Z(g, exact_max);
            const int gr = brute_force_grundy(g, exact_max);
            Sink sink(common.out, out);
            *sink << json{{"n", g.n()}, {"Z", z}, {"grundy", gr}, {"sum", z + gr}}.dump() << '\n';
        } else if (ode->parsed()) {
            const Algorithm algo = parse_algorithm(ode_algo);
            if (algo == Algorithm::smart && ode_d != 3) throw PreconditionError("smart system exists for d = 3 only");
            const PhasePortrait p = algo == Algorithm::plain ? run_plain(ode_d, ode_cfg) : run_smart_d3(ode_cfg);
            json j = p;
            if (algo == Algorithm::smart) {
                const double plain = run_plain(3, ode_cfg).upper_bound;
                j["plain_upper_bound"] = plain;
                j["improvement"] = plain - p.upper_bound;
            }
            if (!ode_traj.empty())
                for (std::size_t k = 0; k < p.phases.size(); ++k) {
                    const std::string path = ode_traj + "_phase" + std::to_string(k + 1) + ".csv";
                    std::ofstream f(path);
                    if (!f) throw PreconditionError("cannot write " + path);
                    write_phase_csv(f, p, k);
                }
            Sink sink(common.out, out);
            *sink << j.dump(2) << '\n';
        } else if (lower->parsed()) {
            std::vector<HoleBoundResult> rows;
            for (int d : parse_d_range(lower_d)) rows.push_back(threshold_a(d, lower_tol));
            Sink sink(common.out, out);
            if (lower_json)
                *sink << json(rows).dump(2) << '\n';
            else
                write_hole_csv(*sink, rows);
        } else if (spectral->parsed()) {
            std::optional<Graph> g;
            const bool formula_only = !spec_src.given() ? false
                                      : (spec_src.graph.empty() && spec_src.named.empty() &&
                                         (spec_lambda || spec_friedman || spec_two_sqrt));
            if (!formula_only) g.emplace(spec_src.load(common.seed));
            const int n = g ? g->n() : spec_src.n;
            int d = spec_src.d;
            if (g) {
                const auto rd = g->regular_degree();
                if (!rd) throw PreconditionError("spectral needs a regular graph");
                d = *rd;
            }
            SpectralProfile prof{n, d, 0.0, LambdaSource::user};
            if (spec_lambda) {
                prof.lambda = *spec_lambda;
            } else if (spec_friedman) {
                prof.lambda = friedman_lambda(d, *spec_friedman);
                prof.source = LambdaSource::friedman;
            } else if (spec_two_sqrt) {
                prof.lambda = 2 * std::sqrt(static_cast<double>(d));
                prof.source = LambdaSource::friedman;
            } else {
                prof = computed_profile(RegularGraph(*g));
            }
            json j = prof;
            try {
                const Prop7Bound b = prop7_bound(n, d, prof.lambda);
                j["prop7_exact"] = b.exact;
                j["prop7_asymptotic"] = b.asymptotic;
            } catch (const PreconditionError &e) {
                j["prop7_exact"] = nullptr;
                j["prop7_asymptotic"] = nullptr;
                j["prop7_note"] = e.what();
            }
            const double thr = edge_guarantee_threshold(n, d, prof.lambda);
            j["threshold"] = thr;
            if (g) {
                const int q = spec_q ? *spec_q : static_cast<int>(std::floor(thr)) + 1;
                HoleSearchOptions hopts;
                hopts.seed = common.seed;
                const HoleSearchResult h = find_bipartite_hole(*g, q, hopts);
                j["q"] = q;
                j["holes_found"] = h.hole.has_value();
                j["hole_search_exhaustive"] = h.exhaustive;
                if (h.hole) j["hole"] = {h.hole->first, h.hole->second};
            } else {
                j["holes_found"] = nullptr;
            }
            Sink sink(common.out, out);
            *sink << j.dump(2) << '\n';
        } else if (mc->parsed()) {
            mc_cfg.algorithm = parse_algorithm(mc_algo);
            mc_cfg.base_seed = common.seed;
            mc_cfg.threads = common.threads;
            mc_cfg.compare_phase = mc_phase;
            mc_cfg.records_path = common.out;
            const ExperimentReport rep = mc_run(mc_cfg);
            persist_report(rep);
            out << summary_json(rep).dump(2) << '\n';
        } else if (cmp->parsed()) {
            std::ifstream in(cmp_trace);
            if (!in) throw PreconditionError("cannot read " + cmp_trace);
            const GreedyTrace trace = read_trace_csv(in);
            if (trace.rows.empty()) throw PreconditionError("empty trace");
            long n = trace.rows.front().undominated;
            for (long c : trace.rows.front().type_counts) n += c;
            const Algorithm algo = parse_algorithm(cmp_algo);
            const PhasePortrait p = algo == Algorithm::plain ? run_plain(trace.d) : run_smart_d3();
            const auto sup = compare_trajectory(trace, static_cast<int>(n), p, cmp_phase);
            json j{{"d", trace.d}, {"n", n}, {"sup_distance", sup}};
            j["max"] = *std::max_element(sup.begin(), sup.end());
            Sink sink(common.out, out);
            *sink << j.dump() << '\n';
        }
    } catch (const PreconditionError &e) {
        err << "zf: " << e.what() << '\n';
        return precondition;
    } catch (const NumericalError &e) {
        err << "zf: numerical failure: " << e.what() << '\n';
        return numerical;
    } catch (const json::exception &e) {
        err << "zf: " << e.what() << '\n';
        return precondition;
    } catch (const std::invalid_argument &e) {
        err << "zf: " << e.what() << '\n';
        return precondition;
    } catch (const std::out_of_range &e) {
        err << "zf: " << e.what() << '\n';
        return precondition;
    }
    return ok;
}

} // namespace zf::cli

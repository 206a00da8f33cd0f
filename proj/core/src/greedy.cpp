#include "zf/greedy.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "zf/errors.hpp"
#include "zf/rng.hpp"

namespace zf {

const char *to_string(GreedyStatus s) noexcept {
    switch (s) {
    case GreedyStatus::complete: return "complete";
    case GreedyStatus::component_stalled: return "component_stalled";
    case GreedyStatus::forcing_failed: return "forcing_failed";
    }
    return "unknown";
}

namespace {

// Membership: undominated, or one of the dominated sets. The plain greedy
// keeps every dominated vertex in kT1 and calls it T.
constexpr std::uint8_t kU = 0;
constexpr std::uint8_t kT1 = 1;
constexpr std::uint8_t kT2 = 2;

class GreedyRun {
public:
    GreedyRun(const Graph &g, std::uint64_t seed, const GreedyOptions &options)
        : g_(g), opt_(options), rng_(splitmix64(seed)) {
        dmax_ = 0;
        for (Vertex v = 0; v < g.n(); ++v) dmax_ = std::max(dmax_, g.degree(v));
        cnt_.resize(g.n());
        for (Vertex v = 0; v < g.n(); ++v) cnt_[v] = g.degree(v);
        set_.assign(g.n(), kU);
        cls_.assign(g.n(), -1);
        cls_set_.assign(g.n(), kU);
        pos_.assign(g.n(), -1);
        for (auto &per_set : buckets_) per_set.assign(dmax_ + 1, {});
        type_count_.assign(dmax_ + 1, 0);
        undominated_ = g.n();
        trace_.d = dmax_;
    }

    GreedyResult run_plain();
    GreedyResult run_smart();

private:
    void bucket_insert(Vertex v, int set, int type) {
        auto &b = buckets_[set][type];
        pos_[v] = static_cast<int>(b.size());
        b.push_back(v);
    }
    void bucket_erase(Vertex v, int set, int type) {
        auto &b = buckets_[set][type];
        const Vertex last = b.back();
        b[pos_[v]] = last;
        pos_[last] = pos_[v];
        b.pop_back();
        pos_[v] = -1;
    }

    // Brings v's bucket and type count in line with cnt_ and set_.
    void classify(Vertex v) {
        if (set_[v] == kU) return;
        if (cls_[v] >= 0) {
            --type_count_[cls_[v]];
            if (cls_[v] > 0) bucket_erase(v, cls_set_[v], cls_[v]);
        }
        cls_[v] = cnt_[v];
        cls_set_[v] = set_[v];
        ++type_count_[cls_[v]];
        if (cls_[v] > 0) bucket_insert(v, set_[v], cls_[v]);
    }

    void dominate(std::span<const std::pair<Vertex, std::uint8_t>> moves) {
        touched_.clear();
        for (auto [x, target] : moves) {
            set_[x] = target;
            --undominated_;
            for (Vertex y : g_.neighbours(x)) {
                --cnt_[y];
                touched_.push_back(y);
            }
        }
        for (auto [x, target] : moves) classify(x);
        for (Vertex y : touched_) classify(y);
    }

    void change_set(Vertex v, std::uint8_t target) {
        set_[v] = target;
        classify(v);
    }

    Vertex pick_min_positive() {
        for (int r = 1; r <= dmax_; ++r) {
            const auto n1 = buckets_[kT1][r].size(), n2 = buckets_[kT2][r].size();
            if (n1 + n2 == 0) continue;
            bool from_t1;
            switch (opt_.policy) {
            case SourcePolicy::prefer_t1: from_t1 = n1 > 0; break;
            case SourcePolicy::prefer_t2: from_t1 = n2 == 0; break;
            default: {
                const auto k = rng_.below(n1 + n2);
                if (k < n1) return buckets_[kT1][r][k];
                return buckets_[kT2][r][k - n1];
            }
            }
            const auto &b = from_t1 ? buckets_[kT1][r] : buckets_[kT2][r];
            return b[rng_.below(b.size())];
        }
        return -1;
    }

    // Uniform among undominated vertices of minimum degree.
    Vertex pick_min_degree_undominated() {
        int best = -1;
        std::vector<Vertex> cands;
        for (Vertex v = 0; v < g_.n(); ++v) {
            if (set_[v] != kU) continue;
            if (best < 0 || g_.degree(v) < best) {
                best = g_.degree(v);
                cands.clear();
            }
            if (g_.degree(v) == best) cands.push_back(v);
        }
        return cands.empty() ? -1 : cands[rng_.below(cands.size())];
    }

    std::vector<Vertex> undominated_neighbours(Vertex v) const {
        std::vector<Vertex> out;
        for (Vertex w : g_.neighbours(v))
            if (set_[w] == kU) out.push_back(w);
        return out;
    }

    void record_row(int step_type, std::string source, int witness_score = -1,
                    int best_alternative = -1) {
        TraceRow row;
        row.t = static_cast<long>(trace_.rows.size());
        row.step_type = step_type;
        row.source = std::move(source);
        row.type_counts.assign(type_count_.begin(), type_count_.begin() + dmax_);
        row.undominated = undominated_;
        row.witness_score = witness_score;
        row.best_alternative_score = best_alternative;
        trace_.rows.push_back(std::move(row));
        if (opt_.verify_each_step) verify();
    }

    void verify() const {
        std::vector<long> counts(dmax_ + 1, 0);
        for (Vertex v = 0; v < g_.n(); ++v) {
            int true_cnt = 0;
            for (Vertex w : g_.neighbours(v)) true_cnt += set_[w] == kU;
            if (true_cnt != cnt_[v]) throw std::logic_error("undominated-neighbour count drifted");
            if (set_[v] == kU) continue;
            if (cls_[v] != true_cnt) throw std::logic_error("type bucket out of date");
            ++counts[true_cnt];
        }
        if (counts != type_count_) throw std::logic_error("type counts out of date");
        if (dmax_ > 0 && type_count_[dmax_] != 0)
            throw std::logic_error("dominated vertex of full type after a completed step");
    }

    // Plain greedy: move v (if needed) and N(v) ∩ U into T, append v, witness uniform.
    void process_plain(Vertex v, const char *source) {
        if (set_[v] == kU) {
            const std::pair<Vertex, std::uint8_t> self{v, kT1};
            dominate(std::span(&self, 1));
        }
        const int r = cnt_[v];
        auto nu = undominated_neighbours(v);
        if (nu.empty()) { // isolated vertex: dominated, cannot join S
            record_row(0, source);
            return;
        }
        const Vertex w = nu[rng_.below(nu.size())];
        moves_.clear();
        for (Vertex x : nu) moves_.emplace_back(x, kT1);
        dominate(moves_);
        seq_.push_back(v);
        wit_.push_back(w);
        record_row(r, source);
    }


    const Graph &g_;
    GreedyOptions opt_;
    Rng rng_;
    int dmax_ = 0;
    std::vector<int> cnt_;   // |N(v) ∩ U| for every vertex
    std::vector<std::uint8_t> set_;  // membership
    std::vector<int> cls_;   // type the vertex is filed under, -1 if undominated
    std::vector<std::uint8_t> cls_set_; // set the vertex is filed under
    std::vector<int> pos_;
    std::vector<std::vector<Vertex>> buckets_[3];
    std::vector<long> type_count_;
    long undominated_ = 0;
    std::vector<Vertex> touched_;
    std::vector<std::pair<Vertex, std::uint8_t>> moves_;
    std::vector<Vertex> seq_, wit_;
    GreedyTrace trace_;
};

GreedyResult GreedyRun::run_plain() {
    GreedyResult res;
    if (g_.n() == 0) return res;
    process_plain(pick_min_degree_undominated(), "init");
    while (undominated_ > 0) {
        const Vertex v = pick_min_positive();
        if (v >= 0) {
            process_plain(v, "T");
            continue;
        }
        res.multi_component = true;
        if (!opt_.restart_on_stall) {
            res.status = GreedyStatus::component_stalled;
            break;
        }
        process_plain(pick_min_degree_undominated(), "restart");
    }
    res.record.sequence = seq_;
    res.record.witnesses = wit_;
    res.record.forcing_set = complement(g_.n(), wit_);
    res.algorithm_sequence = seq_;
    res.trace = std::move(trace_);
    return res;
}

GreedyResult GreedyRun::run_smart() {
    GreedyResult res;
    if (g_.n() == 0) return res;
    auto seed_vertex = [&](Vertex v) {
        const std::pair<Vertex, std::uint8_t> self{v, kT1};
        dominate(std::span(&self, 1));
    };
    seed_vertex(pick_min_degree_undominated());
    const char *pending_source = "init";

    std::vector<Vertex> best;
    while (undominated_ > 0) {
        const Vertex v = pick_min_positive();
        if (v < 0) {
            res.multi_component = true;
            if (!opt_.restart_on_stall) {
                res.status = GreedyStatus::component_stalled;
                break;
            }
            const Vertex s = pick_min_degree_undominated();
            seed_vertex(s);
            pending_source = "restart";
            continue;
        }
        const int r = cnt_[v];
        std::string source = pending_source ? pending_source : (set_[v] == kT1 ? "T1" : "T2");
        pending_source = nullptr;

        if (set_[v] == kT1 && r >= 2) {
            for (Vertex u : g_.neighbours(v)) {
                if (set_[u] != kU) continue;
                const auto nbrs = g_.neighbours(u);
                if (!std::all_of(nbrs.begin(), nbrs.end(), [&](Vertex z) { return set_[z] == kT1; }))
                    continue;
                res.algorithm_sequence.push_back(u);
                ++res.insertions;
                change_set(v, kT2);
                const std::pair<Vertex, std::uint8_t> mv{u, kT1};
                dominate(std::span(&mv, 1));
                source += ":insert";
                break;
            }
        }

        auto nu = undominated_neighbours(v);
        std::vector<int> score(nu.size(), 0);
        for (std::size_t i = 0; i < nu.size(); ++i)
            for (Vertex z : g_.neighbours(nu[i]))
                if (set_[z] == kU && z != v && !g_.has_edge(v, z)) ++score[i];
        const int min_score = *std::min_element(score.begin(), score.end());
        best.clear();
        for (std::size_t i = 0; i < nu.size(); ++i)
            if (score[i] == min_score) best.push_back(nu[i]);
        const Vertex w = best[rng_.below(best.size())];
        int alternative = -1;
        for (std::size_t i = 0; i < nu.size(); ++i)
            if (nu[i] != w && (alternative < 0 || score[i] < alternative)) alternative = score[i];

        moves_.clear();
        for (Vertex x : nu) moves_.emplace_back(x, x == w ? kT2 : kT1);
        dominate(moves_);
        res.algorithm_sequence.push_back(v);
        record_row(r, std::move(source), min_score, alternative);
    }

    VertexSet b;
    for (Vertex v = 0; v < g_.n(); ++v)
        if (set_[v] != kT2) b.push_back(v); // T1, plus U after a stall
    ForcingOutcome out = closure(g_, b);
    for (const auto &f : out.forces) {
        res.record.sequence.push_back(f.forcer);
        res.record.witnesses.push_back(f.forced);
    }
    res.record.forcing_set = std::move(b);
    if (out.stalled) res.status = GreedyStatus::forcing_failed;
    res.trace = std::move(trace_);
    return res;
}

} // namespace

GreedyResult degree_greedy(const Graph &g, std::uint64_t seed, const GreedyOptions &options) {
    GreedyRun run(g, seed, options);
    GreedyResult res = run.run_plain();
    res.seed = seed;
    return res;
}

GreedyResult smart_degree_greedy(const Graph &g, std::uint64_t seed,
                                 const GreedyOptions &options) {
    GreedyRun run(g, seed, options);
    GreedyResult res = run.run_smart();
    res.seed = seed;
    return res;
}

std::vector<ScaledRow> trace_to_scaled_series(const GreedyTrace &trace, int n) {
    if (n <= 0) throw PreconditionError("n must be positive");
    const double inv = 1.0 / n;
    std::vector<ScaledRow> out;
    out.reserve(trace.rows.size());
    for (const auto &row : trace.rows) {
        ScaledRow s;
        s.x = row.t * inv;
        s.y.reserve(row.type_counts.size());
        for (long c : row.type_counts) s.y.push_back(c * inv);
        s.u = row.undominated * inv;
        out.push_back(std::move(s));
    }
    return out;
}

void write_trace_csv(std::ostream &out, const GreedyTrace &trace) {
    out << "t,type,source";
    for (int i = 0; i < trace.d; ++i) out << ",T" << i;
    out << ",U\n";
    for (const auto &row : trace.rows) {
        out << row.t << ',' << row.step_type << ',' << row.source;
        for (long c : row.type_counts) out << ',' << c;
        out << ',' << row.undominated << '\n';
    }
}

GreedyTrace read_trace_csv(std::istream &in) {
    auto split = [](const std::string &line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    std::string line;
    if (!std::getline(in, line)) throw PreconditionError("trace csv: missing header");
    const auto header = split(line);
    if (header.size() < 4 || header[0] != "t" || header[1] != "type" || header[2] != "source" ||
        header.back() != "U")
        throw PreconditionError("trace csv: unexpected header");
    GreedyTrace trace;
    trace.d = static_cast<int>(header.size()) - 4;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw PreconditionError("trace csv: ragged row");
        TraceRow row;
        try {
            row.t = std::stol(cells[0]);
            row.step_type = std::stoi(cells[1]);
            row.source = cells[2];
            for (int i = 0; i < trace.d; ++i) row.type_counts.push_back(std::stol(cells[3 + i]));
            row.undominated = std::stol(cells.back());
        } catch (const std::exception &) {
            throw PreconditionError("trace csv: bad number in \"" + line + "\"");
        }
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

} // namespace zf

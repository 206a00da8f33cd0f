#include "zf/forcing.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>

#include "zf/errors.hpp"
#include "zf/rng.hpp"

namespace zf {

namespace {

struct ForcingState {
    std::vector<char> black;
    std::vector<int> white_count; // number of white neighbours
    std::size_t black_total = 0;
};

ForcingState initial_state(const Graph &g, std::span<const Vertex> initial) {
    ForcingState st;
    st.black.assign(g.n(), 0);
    st.white_count.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) st.white_count[v] = g.degree(v);
    for (Vertex v : initial) {
        if (v < 0 || v >= g.n()) throw PreconditionError("vertex out of range");
        if (st.black[v]) continue;
        st.black[v] = 1;
        ++st.black_total;
        for (Vertex w : g.neighbours(v)) --st.white_count[w];
    }
    return st;
}

Vertex white_neighbour(const Graph &g, const ForcingState &st, Vertex v) {
    for (Vertex w : g.neighbours(v))
        if (!st.black[w]) return w;
    return -1;
}

ForcingOutcome finish(const Graph &g, const ForcingState &st, std::vector<Force> forces) {
    ForcingOutcome out;
    for (Vertex v = 0; v < g.n(); ++v)
        if (st.black[v]) out.final_black.push_back(v);
    out.forces = std::move(forces);
    out.stalled = st.black_total != static_cast<std::size_t>(g.n());
    return out;
}

std::vector<std::uint32_t> adjacency_masks(const Graph &g) {
    std::vector<std::uint32_t> adj(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v)
        for (Vertex w : g.neighbours(v)) adj[v] |= 1u << w;
    return adj;
}

std::uint32_t mask_closure(const std::vector<std::uint32_t> &adj, std::uint32_t black) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t rest = black; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const std::uint32_t white = adj[v] & ~black;
            if (white && !(white & (white - 1))) {
                black |= white;
                changed = true;
            }
        }
    }
    return black;
}

} // namespace

VertexSet complement(int n, std::span<const Vertex> s) {
    std::vector<char> in(n, 0);
    for (Vertex v : s) in[v] = 1;
    VertexSet out;
    for (Vertex v = 0; v < n; ++v)
        if (!in[v]) out.push_back(v);
    return out;
}

ForcingOutcome closure(const Graph &g, std::span<const Vertex> initial) {
    ForcingState st = initial_state(g, initial);
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> eligible;
    for (Vertex v = 0; v < g.n(); ++v)
        if (st.black[v] && st.white_count[v] == 1) eligible.push(v);

    std::vector<Force> forces;
    while (!eligible.empty()) {
        const Vertex v = eligible.top();
        eligible.pop();
        if (st.white_count[v] != 1) continue; // stale entry
        const Vertex w = white_neighbour(g, st, v);
        st.black[w] = 1;
        ++st.black_total;
        forces.push_back({v, w});
        for (Vertex x : g.neighbours(w)) {
            if (--st.white_count[x] == 1 && st.black[x]) eligible.push(x);
        }
        if (st.white_count[w] == 1) eligible.push(w);
    }
    return finish(g, st, std::move(forces));
}

ForcingOutcome closure_random_order(const Graph &g, std::span<const Vertex> initial, Rng &rng) {
    ForcingState st = initial_state(g, initial);
    std::vector<Force> forces;
    std::vector<Vertex> eligible;
    for (;;) {
        eligible.clear();
        for (Vertex v = 0; v < g.n(); ++v)
            if (st.black[v] && st.white_count[v] == 1) eligible.push_back(v);
        if (eligible.empty()) break;
        const Vertex v = eligible[rng.below(eligible.size())];
        const Vertex w = white_neighbour(g, st, v);
        st.black[w] = 1;
        ++st.black_total;
        forces.push_back({v, w});
        for (Vertex x : g.neighbours(w)) --st.white_count[x];
    }
    return finish(g, st, std::move(forces));
}

bool is_zero_forcing_set(const Graph &g, std::span<const Vertex> s) {
    return !closure(g, s).stalled;
}

ZSequenceRecord zseq_from_forcing_set(const Graph &g, std::span<const Vertex> b) {
    ForcingOutcome out = closure(g, b);
    if (out.stalled) throw PreconditionError("set is not a zero forcing set");
    ZSequenceRecord rec;
    rec.sequence.reserve(out.forces.size());
    rec.witnesses.reserve(out.forces.size());
    for (const auto &f : out.forces) {
        rec.sequence.push_back(f.forcer);
        rec.witnesses.push_back(f.forced);
    }
    rec.forcing_set.assign(b.begin(), b.end());
    std::sort(rec.forcing_set.begin(), rec.forcing_set.end());
    rec.forcing_set.erase(std::unique(rec.forcing_set.begin(), rec.forcing_set.end()),
                          rec.forcing_set.end());
    return rec;
}

bool validate_zseq(const Graph &g, std::span<const Vertex> s, std::span<const Vertex> w) {
    if (s.size() != w.size()) throw PreconditionError("sequence and witness lengths differ");
    std::vector<char> dominated(g.n(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Vertex v = s[i], x = w[i];
        if (v < 0 || v >= g.n() || x < 0 || x >= g.n()) return false;
        if (dominated[x] || !g.has_edge(v, x)) return false;
        dominated[v] = 1;
        for (Vertex y : g.neighbours(v)) dominated[y] = 1;
    }
    return true;
}

VertexSet forcing_set_from_zseq(const Graph &g, const ZSequenceRecord &rec) {
    if (!validate_zseq(g, rec.sequence, rec.witnesses))
        throw PreconditionError("witness condition violated");
    VertexSet b = complement(g.n(), rec.witnesses);
    if (!is_zero_forcing_set(g, b))
        throw std::logic_error("complement of a witness set failed to force");
    return b;
}

int brute_force_Z(const Graph &g, int max_vertices) {
    const int n = g.n();
    if (n > max_vertices || n > 30)
        throw PreconditionError("brute_force_Z: n = " + std::to_string(n) + " exceeds guard");
    if (n == 0) return 0;
    const auto adj = adjacency_masks(g);
    const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
    for (int k = 0; k <= n; ++k) {
        if (k == 0) {
            if (mask_closure(adj, 0) == all) return 0;
            continue;
        }
        // Gosper's hack over k-subsets of [0, n).
        std::uint32_t s = (1u << k) - 1;
        while (s <= all) {
            if (mask_closure(adj, s) == all) return k;
            const std::uint32_t c = s & -s;
            const std::uint32_t r = s + c;
            if (r == 0 || r > all) break;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return n;
}

int brute_force_grundy(const Graph &g, int max_vertices) {
    const int n = g.n();
    if (n > max_vertices || n > 26)
        throw PreconditionError("brute_force_grundy: n = " + std::to_string(n) + " exceeds guard");
    const auto adj = adjacency_masks(g);
    // memo[D] = longest extension from dominated set D, or -1 when unknown.
    std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
    std::function<int(std::uint32_t)> longest = [&](std::uint32_t dominated) -> int {
        auto &slot = memo[dominated];
        if (slot >= 0) return slot;
        int best = 0;
        for (int v = 0; v < n; ++v) {
            if (!(adj[v] & ~dominated)) continue;
            best = std::max(best, 1 + longest(dominated | adj[v] | (1u << v)));
        }
        slot = static_cast<std::int8_t>(best);
        return best;
    };
    return longest(0);
}

} // namespace zf

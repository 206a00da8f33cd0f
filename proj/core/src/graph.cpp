#include "zf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zf/errors.hpp"
#include "zf/rng.hpp"

namespace zf {

Pairing::Pairing(int n, int d, std::vector<std::pair<std::uint32_t, std::uint32_t>> matches)
    : n_(n), d_(d), matches_(std::move(matches)) {
    if (n < 1 || d < 1) throw PreconditionError("pairing needs n >= 1 and d >= 1");
    const std::size_t points = static_cast<std::size_t>(n) * d;
    if (points % 2 != 0) throw PreconditionError("dn odd");
    if (matches_.size() * 2 != points)
        throw PreconditionError("pairing does not cover every point");
    std::vector<char> seen(points, 0);
    for (auto [a, b] : matches_) {
        if (a >= points || b >= points || a == b || seen[a] || seen[b])
            throw PreconditionError("pairing is not a perfect matching");
        seen[a] = seen[b] = 1;
    }
}

MultiGraph::MultiGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw PreconditionError("negative vertex count");
    for (auto &e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw PreconditionError("edge endpoint out of range");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
}

std::vector<int> MultiGraph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (const auto &e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
    if (n < 0) throw PreconditionError("negative vertex count");
    Graph g;
    g.adjacency_.assign(n, {});
    for (const auto &e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw PreconditionError("edge endpoint out of range");
        if (e.u == e.v) throw PreconditionError("loop at vertex " + std::to_string(e.u));
        g.adjacency_[e.u].push_back(e.v);
        g.adjacency_[e.v].push_back(e.u);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto &adj = g.adjacency_[v];
        std::sort(adj.begin(), adj.end());
        if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
            throw PreconditionError("repeated edge at vertex " + std::to_string(v));
    }
    return g;
}

Graph Graph::from_multigraph(const MultiGraph &g) { return from_edges(g.n(), g.edges()); }

int Graph::min_degree() const noexcept {
    int best = 0;
    for (Vertex v = 0; v < n(); ++v)
        if (v == 0 || degree(v) < best) best = degree(v);
    return best;
}

std::size_t Graph::edge_count() const noexcept {
    std::size_t total = 0;
    for (const auto &adj : adjacency_) total += adj.size();
    return total / 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
    const auto &adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < n(); ++u)
        for (Vertex v : adjacency_[u])
            if (u < v) out.push_back({u, v});
    return out;
}

std::optional<int> Graph::regular_degree() const noexcept {
    if (adjacency_.empty()) return std::nullopt;
    const int d = degree(0);
    for (Vertex v = 1; v < n(); ++v)
        if (degree(v) != d) return std::nullopt;
    return d;
}

RegularGraph::RegularGraph(Graph g) : Graph(std::move(g)) {
    auto d = regular_degree();
    if (!d) throw PreconditionError("graph is not regular");
    d_ = *d;
}

Pairing new_pairing(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1) throw PreconditionError("pairing needs n >= 1 and d >= 1");
    const std::size_t points = static_cast<std::size_t>(n) * d;
    if (points % 2 != 0) throw PreconditionError("dn odd");
    if (points > UINT32_MAX) throw PreconditionError("too many configuration points");

    // pool holds the unmatched points; where[p] is p's index in pool.
    std::vector<std::uint32_t> pool(points);
    std::iota(pool.begin(), pool.end(), 0u);
    std::vector<std::uint32_t> where(pool);
    auto take = [&](std::uint32_t p) {
        const std::uint32_t i = where[p];
        const std::uint32_t last = pool.back();
        pool[i] = last;
        where[last] = i;
        pool.pop_back();
    };
    std::vector<char> matched(points, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> matches;
    matches.reserve(points / 2);

    Rng rng(seed);
    for (std::uint32_t p = 0; p < points; ++p) {
        if (matched[p]) continue;
        take(p);
        const std::uint32_t q = pool[rng.below(pool.size())];
        take(q);
        matched[p] = matched[q] = 1;
        matches.emplace_back(p, q);
    }
    return Pairing(n, d, std::move(matches));
}

MultiGraph project(const Pairing &p) {
    std::vector<Edge> edges;
    edges.reserve(p.matches().size());
    for (auto [a, b] : p.matches()) {
        Vertex u = p.point(a).bucket, v = p.point(b).bucket;
        if (u > v) std::swap(u, v);
        edges.push_back({u, v});
    }
    return MultiGraph(p.n(), std::move(edges));
}

bool is_simple(const MultiGraph &g) {
    std::vector<Edge> sorted = g.edges();
    for (const auto &e : sorted)
        if (e.u == e.v) return false;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

int default_max_attempts(int d) {
    const double expected = std::exp((static_cast<double>(d) * d - 1.0) / 4.0);
    const double attempts = 10.0 * std::ceil(expected);
    return attempts > 1e6 ? 1'000'000 : static_cast<int>(attempts);
}

SampledGraph sample_simple(int n, int d, std::uint64_t seed, std::optional<int> max_attempts) {
    if (n < 1 || d < 1) throw PreconditionError("sample_simple needs n >= 1 and d >= 1");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw PreconditionError("dn odd");
    if (d >= n) throw PreconditionError("sample_simple needs d < n");
    const int cap = max_attempts.value_or(default_max_attempts(d));
    if (cap < 1) throw PreconditionError("max_attempts must be positive");

    // Attempt k uses an independent stream derived from (seed, k).
    for (int attempt = 1; attempt <= cap; ++attempt) {
        const auto stream = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(attempt)));
        MultiGraph mg = project(new_pairing(n, d, stream));
        if (is_simple(mg)) return {RegularGraph(Graph::from_multigraph(mg)), attempt};
    }
    throw NumericalError("no simple pairing after " + std::to_string(cap) + " attempts (n=" +
                         std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

std::vector<VertexSet> components(const Graph &g) {
    std::vector<VertexSet> out;
    std::vector<char> seen(g.n(), 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbours(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

int cycle_count_2regular(const RegularGraph &g) {
    if (g.d() != 2) throw PreconditionError("cycle count requires a 2-regular graph");
    return static_cast<int>(components(g).size());
}

Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
    return Graph::from_edges(n, edges);
}

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph::from_edges(n, edges);
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});     // outer cycle
        edges.push_back({i, static_cast<Vertex>(i + 5)});           // spokes
        edges.push_back({static_cast<Vertex>(i + 5), static_cast<Vertex>((i + 2) % 5 + 5)}); // inner star
    }
    for (auto &e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    return Graph::from_edges(10, edges);
}

Graph disjoint_union(const Graph &a, const Graph &b) {
    std::vector<Edge> edges = a.edges();
    for (const auto &e : b.edges()) edges.push_back({e.u + a.n(), e.v + a.n()});
    return Graph::from_edges(a.n() + b.n(), edges);
}

} // namespace zf

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace zf {

using Vertex = std::int32_t;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

/// One configuration point: slot `slot` of bucket `bucket`.
struct Point {
    Vertex bucket;
    int slot;
    friend bool operator==(const Point &, const Point &) = default;
};

/// Perfect matching on the d*n configuration points of n buckets of size d.
/// Points are identified internally by `bucket * d + slot`.
class Pairing {
public:
    Pairing(int n, int d, std::vector<std::pair<std::uint32_t, std::uint32_t>> matches);

    int n() const noexcept { return n_; }
    int d() const noexcept { return d_; }
    std::size_t point_count() const noexcept { return static_cast<std::size_t>(n_) * d_; }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> &matches() const noexcept {
        return matches_;
    }
    Point point(std::uint32_t id) const noexcept {
        return {static_cast<Vertex>(id / d_), static_cast<int>(id % d_)};
    }

    friend bool operator==(const Pairing &, const Pairing &) = default;

private:
    int n_;
    int d_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> matches_;
};

/// Unordered edge with u <= v. A loop has u == v.
struct Edge {
    Vertex u;
    Vertex v;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Multigraph on [0, n); loops and parallel edges allowed.
class MultiGraph {
public:
    MultiGraph(int n, std::vector<Edge> edges);

    int n() const noexcept { return n_; }
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    /// Degree with loops counted twice.
    std::vector<int> degrees() const;

private:
    int n_;
    std::vector<Edge> edges_;
};

/// Simple undirected graph with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    /// Throws PreconditionError on loops, repeated edges or out-of-range endpoints.
    static Graph from_edges(int n, std::span<const Edge> edges);
    static Graph from_multigraph(const MultiGraph &g);

    int n() const noexcept { return static_cast<int>(adjacency_.size()); }
    std::span<const Vertex> neighbours(Vertex v) const noexcept { return adjacency_[v]; }
    int degree(Vertex v) const noexcept { return static_cast<int>(adjacency_[v].size()); }
    int min_degree() const noexcept;
    std::size_t edge_count() const noexcept;
    bool has_edge(Vertex u, Vertex v) const noexcept;
    /// All edges, u < v, sorted.
    std::vector<Edge> edges() const;
    /// Common degree when every vertex has the same degree.
    std::optional<int> regular_degree() const noexcept;

    friend bool operator==(const Graph &, const Graph &) = default;

protected:
    std::vector<std::vector<Vertex>> adjacency_;
};

/// Simple graph in which every vertex has degree d.
class RegularGraph : public Graph {
public:
    /// Throws PreconditionError if `g` is not regular (or is empty).
    explicit RegularGraph(Graph g);
    int d() const noexcept { return d_; }

private:
    int d_ = 0;
};

/// Uniformly random pairing, built by repeatedly matching the lowest unmatched
/// point with a uniformly random other unmatched point.
Pairing new_pairing(int n, int d, std::uint64_t seed);

/// The multigraph G(P): one edge per pair, endpoints are the buckets.
MultiGraph project(const Pairing &p);

bool is_simple(const MultiGraph &g);

struct SampledGraph {
    RegularGraph graph;
    int attempts;
};

/// 10 * ceil(exp((d^2 - 1) / 4)), capped at 1e6.
int default_max_attempts(int d);

/// Rejection-samples pairings until the projection is simple. The result is
/// uniform over simple d-regular graphs on n labelled vertices.
/// Throws NumericalError after `max_attempts` rejections.
SampledGraph sample_simple(int n, int d, std::uint64_t seed,
                           std::optional<int> max_attempts = std::nullopt);

/// Connected components, each sorted; components ordered by smallest vertex.
std::vector<VertexSet> components(const Graph &g);

/// Number of cycles of a 2-regular graph. Throws PreconditionError when d != 2.
int cycle_count_2regular(const RegularGraph &g);

// Named graphs used by tests, examples and the CLI.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph petersen_graph();
Graph disjoint_union(const Graph &a, const Graph &b);

} // namespace zf

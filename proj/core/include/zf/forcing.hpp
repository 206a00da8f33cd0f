#pragma once

#include <span>
#include <vector>

#include "zf/graph.hpp"

namespace zf {

class Rng;

struct Force {
    Vertex forcer;
    Vertex forced;
    friend bool operator==(const Force &, const Force &) = default;
};

/// Result of running the colour-change rule to a fixed point.
struct ForcingOutcome {
    VertexSet final_black;
    std::vector<Force> forces; ///< chronological list of forces
    bool stalled = false;      ///< true iff final_black != V
};

/// A Z-sequence S with witness sequence W and the zero forcing set B = V \ W.
struct ZSequenceRecord {
    std::vector<Vertex> sequence;
    std::vector<Vertex> witnesses;
    VertexSet forcing_set;
};

/// Zero forcing closure of `initial`. At every step the lowest-index black vertex
/// with exactly one white neighbour forces. Duplicates in `initial` are ignored.
ForcingOutcome closure(const Graph &g, std::span<const Vertex> initial);

/// Same closure with a uniformly random eligible forcer at every step. The final
/// black set is the same as closure(); the force list generally is not.
ForcingOutcome closure_random_order(const Graph &g, std::span<const Vertex> initial, Rng &rng);

bool is_zero_forcing_set(const Graph &g, std::span<const Vertex> s);

/// S = forcers and W = forced vertices of closure(b), in chronological order.
/// Throws PreconditionError if b is not a zero forcing set.
ZSequenceRecord zseq_from_forcing_set(const Graph &g, std::span<const Vertex> b);

/// Index-by-index witness condition: w_i in N(v_i) \ (N[v_1] u ... u N[v_{i-1}]).
/// Throws PreconditionError when the lengths differ.
bool validate_zseq(const Graph &g, std::span<const Vertex> s, std::span<const Vertex> w);

/// V \ W. Throws PreconditionError if the witness condition fails.
VertexSet forcing_set_from_zseq(const Graph &g, const ZSequenceRecord &rec);

/// Exact zero forcing number by enumerating subsets in increasing size.
/// Throws PreconditionError when n > max_vertices (hard limit 30).
int brute_force_Z(const Graph &g, int max_vertices = 20);

/// Exact Z-Grundy domination number: longest Z-sequence, found by depth-first
/// search memoised on the dominated set. Throws PreconditionError when
/// n > max_vertices (hard limit 26).
int brute_force_grundy(const Graph &g, int max_vertices = 16);

/// Sorted copy of V \ s.
VertexSet complement(int n, std::span<const Vertex> s);

} // namespace zf

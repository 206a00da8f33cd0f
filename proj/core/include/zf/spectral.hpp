#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "zf/graph.hpp"

namespace zf {

enum class LambdaSource { computed, friedman, user };
const char *to_string(LambdaSource s) noexcept;

struct SpectralProfile {
    int n = 0;
    int d = 0;
    double lambda = 0; ///< bound on |lambda_i| for i >= 2
    LambdaSource source = LambdaSource::user;
};

/// max_{i >= 2} |lambda_i| of the adjacency matrix of a regular graph.
/// Lanczos run orthogonal to the all-ones vector; full reorthogonalisation up to n = 4000.
double second_eigenvalue(const RegularGraph &g, double tol = 1e-10, int max_iterations = 0);

SpectralProfile computed_profile(const RegularGraph &g, double tol = 1e-10);

/// Ordered-pair edge count between U and W (edges inside U and W count twice).
long long edge_count_between(const Graph &g, const VertexSet &U, const VertexSet &W);

/// lambda sqrt(|U||W|(1-|U|/n)(1-|W|/n)) - |d|U||W|/n - e(U,W)|; >= 0 when the
/// expander mixing inequality holds for (U, W).
double mixing_check(const RegularGraph &g, const VertexSet &U, const VertexSet &W, double lambda);

/// Disjoint sets strictly larger than lambda n / (d + lambda) must share an edge.
double edge_guarantee_threshold(double n, double d, double lambda);

struct Prop7Bound {
    double exact;
    double asymptotic;
};

/// Upper bound on Z for a connected (n, d, lambda) graph.
Prop7Bound prop7_bound(double n, double d, double lambda);

/// Step at which a_t = (1 - (d+lambda)/n) a_{t-1} - lambda, a_1 = n, first drops
/// to lambda n / (d + lambda): iterated and closed-form values.
struct RecursionDrop {
    long long iterated;
    double closed_form;
};
RecursionDrop recursion_drop(double n, double d, double lambda);

double friedman_lambda(int d, double epsilon = 0.0);

struct HoleSearchOptions {
    int exhaustive_limit = 24; ///< exhaustive mode for n at most this
    bool allow_random = true;  ///< otherwise larger n is an error
    long long random_trials = 100000;
    std::uint64_t seed = 0;
};

struct HoleSearchResult {
    std::optional<std::pair<VertexSet, VertexSet>> hole;
    bool exhaustive = false; ///< a miss in exhaustive mode certifies Z >= n - 2q
};

HoleSearchResult find_bipartite_hole(const Graph &g, int q, const HoleSearchOptions &opts = {});

} // namespace zf

#pragma once

#include <iosfwd>
#include <vector>

namespace zf {

/// x ln x with g(0) = 0.
double entropy_g(double x);

/// First-moment exponent for (an)-bipartite holes whose sides span b d n
/// edges between them; the expected count is exp(f n + o(n)).
double exponent_f(double a, double b, double d);

/// Stationary point of f in b.
double b_star(double a, double d);

/// Interval of b for which every term of exponent_f is defined.
struct BRange {
    double lo, hi;
};
BRange b_domain(double a, double d);

/// max over b of f(a, b, d): the stationary point compared against the ends.
double max_exponent(double a, double d, double *argmax = nullptr);

struct HoleBoundResult {
    int d = 0;
    double a_threshold = 0;
    double b_at_threshold = 0;
    double f_at_threshold = 0;
    double lower_bound = 0; ///< 1 - 2a
};

HoleBoundResult threshold_a(int d, double root_tol = 1e-12);

struct AsymptoticEstimate {
    double K, d;
    double estimate; ///< f(K ln d / d, b*, d) d / ln^2 d
    double target;   ///< K (2 - K)
};

AsymptoticEstimate asymptotic_check(double K, double d);

/// "d,a,lower_bound"
void write_hole_csv(std::ostream &os, const std::vector<HoleBoundResult> &rows);

} // namespace zf

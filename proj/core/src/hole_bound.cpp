#include "zf/hole_bound.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "zf/errors.hpp"

namespace zf {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Arguments a hair below zero from cancellation are treated as zero.
double g_arg(double v, double scale, const char *name) {
    if (v >= 0) return v;
    if (v >= -1e-12 * scale) return 0;
    std::ostringstream msg;
    msg << "exponent_f domain violation: " << name << " = " << v;
    throw PreconditionError(msg.str());
}

} // namespace

double entropy_g(double x) {
    if (x < 0) throw PreconditionError("entropy_g needs x >= 0");
    return x == 0 ? 0.0 : x * std::log(x);
}

double exponent_f(double a, double b, double d) {
    if (!(d > 0)) throw PreconditionError("exponent_f needs d > 0");
    const double s = d;
    const double t_da = g_arg(d * a, s, "da");
    const double t_d2da = g_arg(d - 2 * d * a, s, "d-2da");
    const double t_d2da2b = g_arg(d - 2 * d * a + 2 * b, s, "d-2da+2b");
    const double t_a = g_arg(a, 1, "a");
    const double t_12a = g_arg(1 - 2 * a, 1, "1-2a");
    const double t_da2b = g_arg(d * a - 2 * b, s, "da-2b");
    const double t_b = g_arg(b, s, "b");
    const double t_d3da2b = g_arg(d - 3 * d * a + 2 * b, s, "d-3da+2b");
    return entropy_g(t_da) + entropy_g(t_d2da) + entropy_g(t_d2da2b) + entropy_g(d / 2) -
           2 * entropy_g(t_a) - entropy_g(t_12a) - entropy_g(t_da2b) - entropy_g(t_b) -
           entropy_g(t_d3da2b) - entropy_g(t_d2da2b / 2) - entropy_g(d) + t_da2b * kLn2;
}

double b_star(double a, double d) {
    if (!(a > 0 && a < 0.5)) throw PreconditionError("b_star needs 0 < a < 1/2");
    const double p = 2 * d * a - d;
    return (p + std::sqrt(p * p + 4 * d * d * a * a)) / 4;
}

BRange b_domain(double a, double d) {
    return {std::max(0.0, (3 * a - 1) * d / 2), d * a / 2};
}

double max_exponent(double a, double d, double *argmax) {
    const BRange r = b_domain(a, d);
    if (r.lo > r.hi) throw PreconditionError("empty b domain");
    double best_b = std::clamp(b_star(a, d), r.lo, r.hi);
    double best = exponent_f(a, best_b, d);
    for (double b : {r.lo, r.hi}) {
        const double v = exponent_f(a, b, d);
        if (v > best) {
            best = v;
            best_b = b;
        }
    }
    if (argmax) *argmax = best_b;
    return best;
}

HoleBoundResult threshold_a(int d, double root_tol) {
    if (d < 3) throw PreconditionError("threshold_a needs d >= 3");
    const double dd = d;
    auto h = [dd](double a) { return max_exponent(a, dd); };

    // Coarse scan from the top for the largest sign change.
    constexpr int kGrid = 4000;
    const double lo0 = 1e-6, hi0 = 0.5 - 1e-6;
    double hi = hi0, f_hi = h(hi);
    double lo = hi, f_lo = f_hi;
    bool found = false;
    for (int i = kGrid - 1; i >= 0; --i) {
        lo = lo0 + (hi0 - lo0) * i / kGrid;
        f_lo = h(lo);
        if ((f_lo > 0) != (f_hi > 0)) {
            found = true;
            break;
        }
        hi = lo;
        f_hi = f_lo;
    }
    if (!found) throw NumericalError("threshold_a: no sign change in (0, 1/2)");

    while (hi - lo > root_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h(mid);
        if ((fm > 0) == (f_lo > 0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    // Secant polish inside the final bracket.
    double a = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if (!(a >= lo && a <= hi)) a = 0.5 * (lo + hi);

    HoleBoundResult out;
    out.d = d;
    out.a_threshold = a;
    out.f_at_threshold = max_exponent(a, dd, &out.b_at_threshold);
    out.lower_bound = 1 - 2 * a;
    return out;
}

AsymptoticEstimate asymptotic_check(double K, double d) {
    const double L = std::log(d);
    const double a = K * L / d;
    const double f = exponent_f(a, b_star(a, d), d);
    return {K, d, f * d / (L * L), K * (2 - K)};
}

void write_hole_csv(std::ostream &os, const std::vector<HoleBoundResult> &rows) {
    os << "d,a,lower_bound\n";
    const auto old = os.precision(10);
    for (const auto &r : rows) os << r.d << ',' << r.a_threshold << ',' << r.lower_bound << '\n';
    os.precision(old);
}

} // namespace zf

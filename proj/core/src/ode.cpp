#include "zf/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zf {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Stepper {
public:
    Stepper(const OdeRhs &rhs, std::size_t n) : rhs_(rhs), n_(n) {
        for (auto &k : k_) k.resize(n);
        tmp_.resize(n);
    }

    // One step of size h from (x, y). Writes the 5th-order result to `out` and
    // returns the scaled error norm. Throws DomainError from the rhs.
    double step(double x, std::span<const double> y, double h, std::vector<double> &out,
                const SolverConfig &cfg) {
        auto stage = [&](int idx, double cx, auto combine) {
            for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * combine(i);
            rhs_(x + cx * h, tmp_, k_[idx]);
        };
        rhs_(x, y, k_[0]);
        stage(1, c2, [&](std::size_t i) { return a21 * k_[0][i]; });
        stage(2, c3, [&](std::size_t i) { return a31 * k_[0][i] + a32 * k_[1][i]; });
        stage(3, c4, [&](std::size_t i) { return a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i]; });
        stage(4, c5, [&](std::size_t i) {
            return a51 * k_[0][i] + a52 * k_[1][i] + a53 * k_[2][i] + a54 * k_[3][i];
        });
        stage(5, 1.0, [&](std::size_t i) {
            return a61 * k_[0][i] + a62 * k_[1][i] + a63 * k_[2][i] + a64 * k_[3][i] +
                   a65 * k_[4][i];
        });
        out.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            out[i] = y[i] + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i] + b5 * k_[4][i] +
                                 b6 * k_[5][i]);
        rhs_(x + h, out, k_[6]);
        double err = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double e = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] + e5 * k_[4][i] +
                                  e6 * k_[5][i] + e7 * k_[6][i]);
            const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(out[i]));
            err = std::max(err, std::abs(e) / scale);
        }
        return err;
    }

private:
    const OdeRhs &rhs_;
    std::size_t n_;
    std::vector<double> k_[7];
    std::vector<double> tmp_;
};

} // namespace

OdeSolution integrate_until(const OdeRhs &rhs, double x0, std::vector<double> y0, double x_max,
                            const std::vector<OdeEvent> &events, const SolverConfig &cfg) {
    OdeSolution sol;
    const std::size_t n = y0.size();
    Stepper stepper(rhs, n);

    std::vector<char> armed(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) armed[e] = events[e].g(x0, y0) > cfg.start_grace;

    // Index of the first armed event with g <= 0 at (x, y), or -1.
    auto fired = [&](double x, std::span<const double> y) {
        int hit = -1;
        double lowest = 0;
        for (std::size_t e = 0; e < events.size(); ++e) {
            if (!armed[e]) continue;
            const double g = events[e].g(x, y);
            if (g <= 0 && (hit < 0 || g < lowest)) {
                hit = static_cast<int>(e);
                lowest = g;
            }
        }
        return hit;
    };

    double x = x0;
    std::vector<double> y = std::move(y0), next;
    sol.xs.push_back(x);
    sol.ys.push_back(y);
    double h = cfg.max_step;

    for (long steps = 0; steps < cfg.max_steps; ++steps) {
        if (x >= x_max) return sol;
        h = std::min({h, cfg.max_step, x_max - x});

        // Error-controlled trial step; a domain failure just halves h.
        double err;
        bool domain_failure = false;
        try {
            err = stepper.step(x, y, h, next, cfg);
        } catch (const DomainError &) {
            domain_failure = true;
            err = 0;
        }
        if (!domain_failure && err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < cfg.min_step) throw NumericalError("step size underflow at x = " + std::to_string(x));
            continue;
        }

        const int hit = domain_failure ? -2 : fired(x + h, next);
        if (hit == -1) {
            x += h;
            y.swap(next);
            for (std::size_t e = 0; e < events.size(); ++e)
                if (!armed[e] && events[e].g(x, y) > cfg.start_grace) armed[e] = 1;
            sol.xs.push_back(x);
            sol.ys.push_back(y);
            h *= err > 0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
            continue;
        }

        // Something happened inside (x, x + h]: bisect on the step length.
        double lo = 0, hi = h;
        int event = hit;
        std::vector<double> y_lo = y;
        while (hi - lo > cfg.event_tol) {
            const double mid = 0.5 * (lo + hi);
            int mid_hit;
            try {
                stepper.step(x, y, mid, next, cfg);
                mid_hit = fired(x + mid, next);
            } catch (const DomainError &) {
                mid_hit = -2;
            }
            if (mid_hit == -1) {
                lo = mid;
                y_lo = next;
            } else {
                hi = mid;
                event = mid_hit;
            }
        }
        if (event == -2) {
            // The rhs left its domain before any event function crossed; attribute
            // it to the armed event closest to zero at the last good state.
            double lowest = 0;
            for (std::size_t e = 0; e < events.size(); ++e) {
                const double g = events[e].g(x + lo, y_lo);
                if (event == -2 || g < lowest) {
                    event = static_cast<int>(e);
                    lowest = g;
                }
            }
            if (event < 0)
                throw NumericalError("right-hand side left its domain at x = " + std::to_string(x + lo));
        }
        if (lo > 0) {
            sol.xs.push_back(x + lo);
            sol.ys.push_back(y_lo);
        }
        sol.event = event;
        sol.event_name = events[event].name;
        sol.x_end = x + 0.5 * (lo + hi);
        if (events[event].abort) {
            std::ostringstream msg;
            msg << "abort event '" << events[event].name << "' at x = " << sol.x_end;
            throw NumericalError(msg.str());
        }
        return sol;
    }
    throw NumericalError("integration exceeded max_steps");
}

} // namespace zf

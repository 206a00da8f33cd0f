#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zf/errors.hpp"

namespace zf {

/// Thrown by a right-hand side evaluated outside its domain (for example past
/// u = 0). The integrator treats it as "the step went too far" and shortens it.
class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

struct SolverConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 1e-3;     ///< also the output spacing of trajectories
    double min_step = 1e-15;
    double event_tol = 1e-12;   ///< bisection width for event location in x
    double start_grace = 1e-12; ///< events whose function starts below this are armed later
    long max_steps = 20'000'000;
};

using OdeRhs = std::function<void(double x, std::span<const double> y, std::span<double> dydx)>;

/// An event fires when `g` drops to <= 0 after having been above the grace band.
/// Abort events turn into a NumericalError once located.
struct OdeEvent {
    std::string name;
    std::function<double(double x, std::span<const double> y)> g;
    bool abort = false;
};

struct OdeSolution {
    std::vector<double> xs;
    std::vector<std::vector<double>> ys;
    int event = -1;         ///< index into the events list, -1 if x_max reached
    std::string event_name;
    double x_end = 0;       ///< event location (midpoint of the final bracket)
};

/// Adaptive Dormand-Prince 5(4) from (x0, y0) until the first event or x_max.
/// The returned trajectory ends at the last state before the event.
OdeSolution integrate_until(const OdeRhs &rhs, double x0, std::vector<double> y0, double x_max,
                            const std::vector<OdeEvent> &events, const SolverConfig &config);

} // namespace zf

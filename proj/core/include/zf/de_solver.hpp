#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zf/ode.hpp"

namespace zf {

/// Scaled process state: x = t/n and y_i = T_i/n. For the smart d = 3 system
/// y has six entries, y[2*i + (k-1)] = T_{i,k}/n.
struct ScaledState {
    double x = 0;
    std::vector<double> y;

    double u() const;
};

/// Expected one-step change of T_i for a type-j step in the n -> infinity limit.
double rate_f(int i, int j, const ScaledState &s, int d);

/// Full rate table, F[i][j] for 0 <= i < d and 1 <= j < d (column 0 unused).
std::vector<std::vector<double>> rate_table(const ScaledState &s, int d);

/// Mixing proportions tau_1..tau_{d-k} for phase k. Components within
/// [-tol, 0) are clamped to 0; anything lower throws NumericalError.
std::vector<double> solve_tau(int k, const ScaledState &s, int d, double tol = 1e-9);

struct PhaseDerivative {
    std::vector<double> dy;
    double du = 0;
    std::vector<double> tau;
};

PhaseDerivative phase_derivative(int k, const ScaledState &s, int d);

struct PhaseTrajectory {
    int k = 0;
    std::vector<double> x;
    std::vector<std::vector<double>> y;
    std::vector<std::vector<double>> tau;
    double x_end = 0;
    std::string end_event; ///< "tau", "u" (process complete)
    ScaledState end_state;
};

PhaseTrajectory integrate_phase(int k, const ScaledState &initial, int d, const SolverConfig &config = {});

enum class DeSystem { plain, smart_d3 };

struct PhasePortrait {
    int d = 0;
    DeSystem system = DeSystem::plain;
    std::vector<PhaseTrajectory> phases;
    std::vector<double> boundaries; ///< x_1, ..., the last one equals x_end
    double x_end = 0;
    double upper_bound = 0;
    std::vector<std::string> diagnostics;
    SolverConfig config;

    /// y_0..y_{d-1} (aggregated over sets for the smart system) at x, by
    /// linear interpolation on the trajectory grid. x past x_end clamps.
    std::vector<double> types_at(double x) const;
    /// Phase index k containing x.
    int phase_at(double x) const;
};

PhasePortrait run_plain(int d, const SolverConfig &config = {});

/// Smart d = 3 rate for type (i, set k) under a type-j step drawn from set l.
double smart_rate_f(int i, int j, int k, int l, const ScaledState &s);

/// Smart d = 3 tau for the given phase. Phase 1 returns (tau_{1,1}, tau_{1,2},
/// tau_{2,1}, tau_{2,2}), phase 2 returns (tau_{1,1}, tau_{1,2}), indexed (j, l).
std::vector<double> solve_smart_tau(int phase, const ScaledState &s, double tol = 1e-9);

PhaseDerivative smart_phase_derivative(int phase, const ScaledState &s);

PhasePortrait run_smart_d3(const SolverConfig &config = {});

/// "x,y0,...,y{d-1},u,tau1,...,tau{d-k}" (smart: y{i}_{k} and tau{j}_{l} columns).
void write_phase_csv(std::ostream &os, const PhasePortrait &portrait, std::size_t phase_index);

} // namespace zf

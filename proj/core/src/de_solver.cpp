#include "zf/de_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

namespace zf {

namespace {

constexpr double kPTol = 1e-9;
constexpr double kSingular = 1e-14;

double binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double clamp_probability(double p) {
    if (!(p >= -kPTol && p <= 1 + kPTol)) {
        std::ostringstream msg;
        msg << "P = " << p << " outside [0,1]";
        throw DomainError(msg.str());
    }
    return std::clamp(p, 0.0, 1.0);
}

double checked_u(const ScaledState &s) {
    const double u = s.u();
    if (!(u > 0)) throw DomainError("u <= 0");
    return u;
}

void check_plain(const ScaledState &s, int d) {
    if (d < 2) throw PreconditionError("d must be at least 2");
    if (static_cast<int>(s.y.size()) != d) throw PreconditionError("state must have d type counts");
}

struct TauRaw {
    std::vector<double> tau;
    double rcond;
};

TauRaw solve_dense(const Eigen::MatrixXd &a, const Eigen::VectorXd &b) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const double rc = lu.rcond();
    if (!(rc > kSingular)) {
        std::ostringstream msg;
        msg << "singular tau system (rcond = " << rc << ")";
        throw NumericalError(msg.str());
    }
    Eigen::VectorXd x = lu.solve(b);
    return {std::vector<double>(x.data(), x.data() + x.size()), rc};
}

TauRaw plain_tau_raw(int k, const std::vector<std::vector<double>> &f, int d) {
    const int m = d - k;
    Eigen::MatrixXd a(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    a.row(0).setOnes();
    b(0) = 1;
    for (int i = 1; i < m; ++i)
        for (int j = 1; j <= m; ++j) a(i, j - 1) = f[i][j];
    return solve_dense(a, b);
}

void clamp_tau(std::vector<double> &tau, double tol, std::size_t skip_from) {
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (tau[i] >= 0) continue;
        if (tau[i] >= -tol) {
            tau[i] = 0;
        } else if (i < skip_from) {
            std::ostringstream msg;
            msg << "tau component " << i + 1 << " = " << tau[i] << " is negative";
            throw NumericalError(msg.str());
        }
    }
}

using SmartTable = std::array<double, 24>;

constexpr int sidx(int i, int j, int k, int l) { return ((i * 2 + (j - 1)) * 2 + (k - 1)) * 2 + (l - 1); }

double Y(const ScaledState &s, int i, int k) { return i > 2 ? 0.0 : s.y[2 * i + (k - 1)]; }

SmartTable smart_table(const ScaledState &s) {
    if (s.y.size() != 6) throw PreconditionError("smart state must have six components");
    const double u = checked_u(s);
    double yi[3];
    for (int i = 0; i < 3; ++i) yi[i] = Y(s, i, 1) + Y(s, i, 2);
    const double den = yi[1] + 2 * yi[2];
    const double P = clamp_probability(den / (3 * u));
    // Share of U-adjacent half-edges in T that sit on T1 vertices. It only
    // multiplies terms carrying a positive power of P, so 0 is safe at den = 0.
    const double Q = den > 0 ? std::clamp((Y(s, 1, 1) + 2 * Y(s, 2, 1)) / den, 0.0, 1.0) : 0.0;
    auto Pab = [&](int a, int b) {
        return (a != b ? 2.0 : 1.0) * binom(2, a) * binom(2, b) * std::pow(P, 4 - a - b) *
               std::pow(1 - P, a + b);
    };

    SmartTable F{};
    for (int j = 1; j <= 2; ++j)
        for (int l = 1; l <= 2; ++l)
            for (int i = 0; i < 3; ++i)
                for (int k = 1; k <= 2; ++k) {
                    auto D = [&](int ii, int kk) {
                        return ((ii < 0 || i == ii) && (kk < 0 || k == kk)) ? 1.0 : 0.0;
                    };
                    double v = 2.0 * j * ((i + 1) * Y(s, i + 1, k) - i * Y(s, i, k)) / (3 * u);
                    if (j == 1) {
                        v += D(0, l) - D(1, l) + D(-1, 2) * binom(2, i) * std::pow(P, 2 - i) * std::pow(1 - P, i);
                    } else {
                        double acc = 0;
                        // Both neighbours already in T: witness vertex a goes to T1, the other to T2.
                        for (int a = 1; a <= 2; ++a)
                            for (int b = 1; b <= a; ++b)
                                acc += Pab(a, b) * (D(a, 1) + D(b, 2) + D(0, l) - D(2, l));
                        // One neighbour has N(.) within T1 with probability Q^2: the swap branch.
                        const double t = l == 1 ? Q * Q : 0.0;
                        for (int a = 1; a <= 2; ++a)
                            acc += Pab(a, 0) * (t * (D(a, 2) + D(0, 1) + D(0, 2) - D(2, 1)) +
                                                (1 - t) * (D(a, 1) + D(0, 2) + D(0, l) - D(2, l)));
                        const double t2 = l == 1 ? 1 - std::pow(1 - Q * Q, 2) : 0.0;
                        acc += Pab(0, 0) * (t2 * (D(0, -1) + D(0, 2) - D(2, 1)) +
                                            (1 - t2) * (D(0, -1) + D(0, l) - D(2, l)));
                        v += acc;
                    }
                    F[sidx(i, j, k, l)] = v;
                }
    return F;
}

TauRaw smart_tau_raw(int phase, const ScaledState &s, const SmartTable &F) {
    if (phase == 1) {
        constexpr int cols[4][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
        Eigen::MatrixXd a(4, 4);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(4);
        a.row(0).setOnes();
        b(0) = 1;
        for (int c = 0; c < 4; ++c) {
            a(1, c) = F[sidx(1, cols[c][0], 1, cols[c][1])];
            a(2, c) = F[sidx(1, cols[c][0], 2, cols[c][1])];
        }
        const double y21 = Y(s, 2, 1), y22 = Y(s, 2, 2);
        if (y21 + y22 < kSingular)
            a.row(3) << 0, 0, 1, -1;
        else
            a.row(3) << 0, 0, y22, -y21;
        return solve_dense(a, b);
    }
    if (phase == 2) {
        double w1 = Y(s, 1, 1), w2 = Y(s, 1, 2);
        if (w1 + w2 < 1e-10) {
            // Degenerate start: split by the rates at which type-1 vertices appear in each set.
            w1 = std::max(0.0, F[sidx(1, 1, 1, 2)]);
            w2 = std::max(0.0, F[sidx(1, 1, 2, 1)]);
            if (w1 + w2 <= 0) w1 = w2 = 1;
        }
        const double share = w1 / (w1 + w2);
        return {{share, 1 - share}, 1.0};
    }
    throw PreconditionError("smart system has phases 1 and 2 only");
}

PhaseDerivative smart_derivative_raw(int phase, const ScaledState &s, double tol) {
    const SmartTable F = smart_table(s);
    TauRaw t = smart_tau_raw(phase, s, F);
    for (int c = 0; c < 2; ++c)
        if (phase == 1 && t.tau[c] < -tol) throw DomainError("type-1 step proportion negative");
    constexpr int cols[4][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    PhaseDerivative out;
    out.dy.assign(6, 0.0);
    for (std::size_t c = 0; c < t.tau.size(); ++c) {
        const int j = cols[c][0], l = cols[c][1];
        for (int i = 0; i < 3; ++i)
            for (int k = 1; k <= 2; ++k) out.dy[2 * i + (k - 1)] += t.tau[c] * F[sidx(i, j, k, l)];
        out.du -= j * t.tau[c];
    }
    out.tau = std::move(t.tau);
    return out;
}

PhaseDerivative plain_derivative_raw(int k, const ScaledState &s, int d, double tol) {
    const auto f = rate_table(s, d);
    TauRaw t = plain_tau_raw(k, f, d);
    const int m = d - k;
    for (int j = 0; j + 1 < m; ++j)
        if (t.tau[j] < -tol) throw DomainError("non-top step proportion negative");
    PhaseDerivative out;
    out.dy.assign(d, 0.0);
    for (int j = 1; j <= m; ++j) {
        for (int i = 0; i < d; ++i) out.dy[i] += t.tau[j - 1] * f[i][j];
        out.du -= j * t.tau[j - 1];
    }
    out.tau = std::move(t.tau);
    return out;
}

struct PhaseDef {
    int k;
    std::function<PhaseDerivative(const ScaledState &)> deriv;
    std::function<double(const ScaledState &)> top; ///< empty for the final phase
    std::function<double(const ScaledState &)> top_mass;
};

PhaseTrajectory run_phase(const PhaseDef &def, const ScaledState &initial, const SolverConfig &cfg) {
    const double tol = 1e-9;
    auto state = [](double x, std::span<const double> y) {
        return ScaledState{x, std::vector<double>(y.begin(), y.end())};
    };
    OdeRhs rhs = [&](double x, std::span<const double> y, std::span<double> dy) {
        const auto der = def.deriv(state(x, y));
        std::copy(der.dy.begin(), der.dy.end(), dy.begin());
    };
    std::vector<OdeEvent> events;
    if (def.top) {
        events.push_back({"tau", [&](double x, std::span<const double> y) {
                              try {
                                  return def.top(state(x, y));
                              } catch (const DomainError &) {
                                  return 1.0;
                              }
                          }});
    }
    events.push_back({"u", [&](double x, std::span<const double> y) { return state(x, y).u(); }});
    events.push_back({"backwards", [&](double x, std::span<const double> y) { return def.top_mass(state(x, y)) + tol; },
                      true});

    if (def.top) {
        const double g0 = def.top(initial);
        if (g0 < -cfg.start_grace) {
            std::ostringstream msg;
            msg << "phase " << def.k << " starts with negative top-type proportion " << g0;
            throw NumericalError(msg.str());
        }
    }

    OdeSolution sol = integrate_until(rhs, initial.x, initial.y, initial.x + 2.0, events, cfg);
    if (sol.event < 0) throw NumericalError("phase did not terminate");

    PhaseTrajectory tr;
    tr.k = def.k;
    tr.x = std::move(sol.xs);
    tr.y = std::move(sol.ys);
    tr.tau.reserve(tr.x.size());
    for (std::size_t p = 0; p < tr.x.size(); ++p) {
        try {
            tr.tau.push_back(def.deriv({tr.x[p], tr.y[p]}).tau);
        } catch (const DomainError &) {
            tr.tau.push_back(tr.tau.empty() ? std::vector<double>{} : tr.tau.back());
        }
    }
    tr.x_end = sol.x_end;
    tr.end_event = sol.event_name;
    tr.end_state = {tr.x_end, tr.y.back()};
    if (tr.end_event == "u") {
        // Near u = 0 the rates lose precision (P -> 1 as 0/0), so the bisection
        // stops a little early; finish with one linear step, exact when tau is constant.
        const double u = tr.end_state.u();
        if (!(std::abs(u) <= 1e-6)) throw NumericalError("u-event located with u far from 0");
        const double du = def.deriv(tr.end_state).du;
        if (du < 0) tr.x_end = tr.x.back() + u / -du;
        tr.end_state.x = tr.x_end;
    }
    return tr;
}

std::vector<double> aggregate(const PhasePortrait &p, const std::vector<double> &y) {
    if (p.system == DeSystem::plain) return y;
    std::vector<double> out(3);
    for (int i = 0; i < 3; ++i) out[i] = y[2 * i] + y[2 * i + 1];
    return out;
}

} // namespace

double ScaledState::u() const { return 1.0 - std::accumulate(y.begin(), y.end(), 0.0); }

std::vector<std::vector<double>> rate_table(const ScaledState &s, int d) {
    check_plain(s, d);
    const double u = checked_u(s);
    double mass = 0;
    for (int l = 1; l < d; ++l) mass += l * s.y[l];
    const double P = clamp_probability(mass / (d * u));
    std::vector<std::vector<double>> f(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) {
        const double next = i + 1 < d ? s.y[i + 1] : 0.0;
        const double binom_term = binom(d - 1, i) * std::pow(P, d - 1 - i) * std::pow(1 - P, i);
        const double migration = (d - 1) * ((i + 1) * next - i * s.y[i]) / (d * u);
        for (int j = 1; j < d; ++j)
            f[i][j] = j * binom_term + j * migration - (i == j ? 1.0 : 0.0) + (i == 0 ? 1.0 : 0.0);
    }
    return f;
}

double rate_f(int i, int j, const ScaledState &s, int d) {
    if (i < 0 || i >= d) throw PreconditionError("type index out of range");
    if (j < 1 || j >= d) throw PreconditionError("step type out of range");
    return rate_table(s, d)[i][j];
}

std::vector<double> solve_tau(int k, const ScaledState &s, int d, double tol) {
    if (k < 1 || k >= d) throw PreconditionError("phase must be in 1..d-1");
    TauRaw t = plain_tau_raw(k, rate_table(s, d), d);
    clamp_tau(t.tau, tol, t.tau.size());
    return t.tau;
}

PhaseDerivative phase_derivative(int k, const ScaledState &s, int d) {
    PhaseDerivative out;
    out.tau = solve_tau(k, s, d);
    const auto f = rate_table(s, d);
    out.dy.assign(d, 0.0);
    for (std::size_t j = 1; j <= out.tau.size(); ++j) {
        for (int i = 0; i < d; ++i) out.dy[i] += out.tau[j - 1] * f[i][j];
        out.du -= static_cast<double>(j) * out.tau[j - 1];
    }
    return out;
}

PhaseTrajectory integrate_phase(int k, const ScaledState &initial, int d, const SolverConfig &config) {
    check_plain(initial, d);
    if (k < 1 || k >= d) throw PreconditionError("phase must be in 1..d-1");
    for (double v : initial.y)
        if (v < -1e-9) throw PreconditionError("initial type counts must be nonnegative");
    if (k == 1 && std::any_of(initial.y.begin(), initial.y.end(), [](double v) { return v != 0; }))
        throw PreconditionError("phase 1 starts from y = 0");
    const int top = d - k;
    PhaseDef def;
    def.k = k;
    def.deriv = [k, d](const ScaledState &s) { return plain_derivative_raw(k, s, d, 1e-9); };
    if (k < d - 1)
        def.top = [k, d](const ScaledState &s) { return plain_tau_raw(k, rate_table(s, d), d).tau.back(); };
    def.top_mass = [top](const ScaledState &s) { return s.y[top]; };
    return run_phase(def, initial, config);
}

PhasePortrait run_plain(int d, const SolverConfig &config) {
    if (d < 3) throw PreconditionError("run_plain needs d >= 3");
    PhasePortrait p;
    p.d = d;
    p.system = DeSystem::plain;
    p.config = config;
    ScaledState s{0.0, std::vector<double>(d, 0.0)};
    for (int k = 1; k < d; ++k) {
        PhaseTrajectory tr = integrate_phase(k, s, d, config);
        p.boundaries.push_back(tr.x_end);
        p.diagnostics.push_back("phase " + std::to_string(k) + ": " + tr.end_event + "-event");
        s = tr.end_state;
        const bool done = tr.end_event == "u";
        p.phases.push_back(std::move(tr));
        if (done) break;
    }
    p.x_end = p.boundaries.back();
    p.upper_bound = 1.0 - p.x_end;
    if (p.phases.size() == static_cast<std::size_t>(d - 1) && d >= 3) {
        // Final phase runs at tau_1 = 1, so x_end = x_{d-2} + u(x_{d-2}).
        const auto &prev = p.phases[d - 3].end_state;
        const double gap = std::abs(p.x_end - (prev.x + prev.u()));
        std::ostringstream msg;
        msg << "final-phase consistency gap " << gap;
        p.diagnostics.push_back(msg.str());
    } else {
        p.diagnostics.push_back("process completed before the final phase");
    }
    return p;
}

double smart_rate_f(int i, int j, int k, int l, const ScaledState &s) {
    if (i < 0 || i > 2 || j < 1 || j > 2 || k < 1 || k > 2 || l < 1 || l > 2)
        throw PreconditionError("smart rate index out of range");
    return smart_table(s)[sidx(i, j, k, l)];
}

std::vector<double> solve_smart_tau(int phase, const ScaledState &s, double tol) {
    TauRaw t = smart_tau_raw(phase, s, smart_table(s));
    clamp_tau(t.tau, tol, phase == 1 ? 2 : t.tau.size());
    return t.tau;
}

PhaseDerivative smart_phase_derivative(int phase, const ScaledState &s) {
    PhaseDerivative out = smart_derivative_raw(phase, s, 1e-9);
    clamp_tau(out.tau, 1e-9, out.tau.size());
    return out;
}

PhasePortrait run_smart_d3(const SolverConfig &config) {
    PhasePortrait p;
    p.d = 3;
    p.system = DeSystem::smart_d3;
    p.config = config;
    ScaledState s{0.0, std::vector<double>(6, 0.0)};
    for (int phase = 1; phase <= 2; ++phase) {
        PhaseDef def;
        def.k = phase;
        def.deriv = [phase](const ScaledState &st) { return smart_derivative_raw(phase, st, 1e-9); };
        if (phase == 1)
            def.top = [](const ScaledState &st) {
                const auto t = smart_tau_raw(1, st, smart_table(st)).tau;
                return t[2] + t[3];
            };
        const int top = 3 - phase;
        def.top_mass = [top](const ScaledState &st) { return Y(st, top, 1) + Y(st, top, 2); };
        PhaseTrajectory tr = run_phase(def, s, config);
        p.boundaries.push_back(tr.x_end);
        p.diagnostics.push_back("phase " + std::to_string(phase) + ": " + tr.end_event + "-event");
        s = tr.end_state;
        const bool done = tr.end_event == "u";
        p.phases.push_back(std::move(tr));
        if (done) break;
    }
    p.x_end = p.boundaries.back();
    // The forcing set is T1, whose mass is the sum of y_{i,1} once U is empty.
    p.upper_bound = Y(s, 0, 1) + Y(s, 1, 1) + Y(s, 2, 1);
    return p;
}

std::vector<double> PhasePortrait::types_at(double x) const {
    if (phases.empty()) throw PreconditionError("empty portrait");
    const PhaseTrajectory *tr = &phases.back();
    for (const auto &ph : phases)
        if (x <= ph.x.back()) {
            tr = &ph;
            break;
        }
    const auto &xs = tr->x;
    if (x <= xs.front()) return aggregate(*this, tr->y.front());
    if (x >= xs.back()) return aggregate(*this, tr->y.back());
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin()), lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    std::vector<double> y(tr->y[lo].size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (1 - w) * tr->y[lo][i] + w * tr->y[hi][i];
    return aggregate(*this, y);
}

int PhasePortrait::phase_at(double x) const {
    for (const auto &ph : phases)
        if (x <= ph.x_end) return ph.k;
    return phases.empty() ? 0 : phases.back().k;
}

void write_phase_csv(std::ostream &os, const PhasePortrait &p, std::size_t phase_index) {
    const PhaseTrajectory &tr = p.phases.at(phase_index);
    os << "x";
    if (p.system == DeSystem::plain) {
        for (int i = 0; i < p.d; ++i) os << ",y" << i;
    } else {
        for (int i = 0; i < 3; ++i)
            for (int k = 1; k <= 2; ++k) os << ",y" << i << '_' << k;
    }
    os << ",u";
    const std::size_t ntau = tr.tau.empty() ? 0 : tr.tau.front().size();
    if (p.system == DeSystem::plain) {
        for (std::size_t j = 1; j <= ntau; ++j) os << ",tau" << j;
    } else {
        for (std::size_t c = 0; c < ntau; ++c) os << ",tau" << (c / 2 + 1) << '_' << (c % 2 + 1);
    }
    os << '\n';
    os.precision(12);
    for (std::size_t r = 0; r < tr.x.size(); ++r) {
        os << tr.x[r];
        double sum = 0;
        for (double v : tr.y[r]) {
            os << ',' << v;
            sum += v;
        }
        os << ',' << 1 - sum;
        for (std::size_t c = 0; c < ntau; ++c) os << ',' << (c < tr.tau[r].size() ? tr.tau[r][c] : 0.0);
        os << '\n';
    }
}

} // namespace zf

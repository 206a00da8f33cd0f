#include "zf/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "zf/errors.hpp"
#include "zf/rng.hpp"

namespace zf {

const char *to_string(LambdaSource s) noexcept {
    switch (s) {
    case LambdaSource::computed: return "computed";
    case LambdaSource::friedman: return "friedman";
    case LambdaSource::user: return "user";
    }
    return "?";
}

namespace {

void apply_adjacency(const Graph &g, const std::vector<double> &x, std::vector<double> &y) {
    const int n = g.n();
    for (int v = 0; v < n; ++v) {
        double s = 0;
        for (Vertex w : g.neighbours(v)) s += x[w];
        y[v] = s;
    }
}

// Remove the mean, i.e. the component along the all-ones vector.
void deflate_ones(std::vector<double> &x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    for (double &v : x) v -= mean;
}

double norm(const std::vector<double> &x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void orthogonalise(std::vector<double> &w, const std::vector<std::vector<double>> &basis) {
    for (int pass = 0; pass < 2; ++pass) {
        deflate_ones(w);
        for (const auto &q : basis) {
            const double c = dot(w, q);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
        }
    }
}

} // namespace

double second_eigenvalue(const RegularGraph &g, double tol, int max_iterations) {
    const int n = g.n();
    if (n < 2) throw PreconditionError("second_eigenvalue needs n >= 2");
    const int dim = n - 1; // dimension of the complement of the all-ones vector
    // Above this size the Krylov basis is not stored. Extreme Ritz values still
    // converge under the plain recurrence; lost orthogonality only adds ghost copies.
    constexpr int kFullReorthMax = 4000;
    const bool full = n <= kFullReorthMax;
    int cap = max_iterations > 0 ? max_iterations : (full ? dim : 6000);
    cap = std::min(cap, dim);

    Rng rng(0x5eed5eedULL + static_cast<std::uint64_t>(n));
    std::vector<std::vector<double>> Q;
    auto random_start = [&] {
        std::vector<double> v(n);
        for (double &x : v) x = rng.uniform() - 0.5;
        orthogonalise(v, Q);
        return v;
    };

    std::vector<double> alpha, beta; // beta[j] couples q_j and q_{j+1}
    std::vector<double> q = random_start(), q_prev(n, 0.0), w(n);
    double nq = norm(q);
    for (double &x : q) x /= nq;

    double prev_lo = 0, prev_hi = 0;
    bool have_prev = false;
    for (int m = 1;; ++m) {
        if (full) Q.push_back(q);
        apply_adjacency(g, q, w);
        const double a = dot(w, q);
        alpha.push_back(a);
        if (full) {
            orthogonalise(w, Q);
        } else {
            const double b_prev = beta.empty() ? 0.0 : beta.back();
            for (int i = 0; i < n; ++i) w[i] -= a * q[i] + b_prev * q_prev[i];
            deflate_ones(w);
        }
        const double b = norm(w);
        const double scale0 = std::max(1.0, std::abs(a));
        const bool breakdown = b < 1e-10 * scale0;

        // The tridiagonal solve grows with m; run it on a sparse schedule.
        const int stride = std::max(5, m / 20);
        const bool check = m <= 10 || m % stride == 0 || m >= cap || breakdown;
        if (check) {
            Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
            Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1))
                                        : Eigen::VectorXd();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(diag, sub, full ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
            const auto &ev = es.eigenvalues();
            const double lo = ev(0), hi = ev(m - 1);
            const double estimate = std::max(std::abs(lo), std::abs(hi));
            const double scale = std::max(1.0, estimate);
            if (full && m == dim) return estimate;

            bool converged = have_prev && std::abs(lo - prev_lo) < tol * scale && std::abs(hi - prev_hi) < tol * scale;
            double residual = 0;
            if (full) {
                const double r_lo = std::abs(b * es.eigenvectors()(m - 1, 0));
                const double r_hi = std::abs(b * es.eigenvectors()(m - 1, m - 1));
                residual = std::max(r_lo, r_hi);
                converged = converged && residual < tol * scale;
            }
            if (converged) return estimate;
            if (m >= cap) {
                if (have_prev && std::abs(estimate - std::max(std::abs(prev_lo), std::abs(prev_hi))) <
                                     std::sqrt(tol) * scale &&
                    residual < std::sqrt(tol) * scale)
                    return estimate;
                throw NumericalError("second_eigenvalue did not converge");
            }
            prev_lo = lo;
            prev_hi = hi;
            have_prev = true;
            if (breakdown) {
                // Invariant subspace found; continue in a fresh direction.
                q_prev.assign(n, 0.0);
                q = random_start();
                nq = norm(q);
                if (nq < 1e-12) return estimate;
                for (double &x : q) x /= nq;
                beta.push_back(0.0);
                continue;
            }
        }
        q_prev.swap(q);
        for (int i = 0; i < n; ++i) q[i] = w[i] / b;
        beta.push_back(b);
    }
}

SpectralProfile computed_profile(const RegularGraph &g, double tol) {
    return {g.n(), g.d(), second_eigenvalue(g, tol), LambdaSource::computed};
}

long long edge_count_between(const Graph &g, const VertexSet &U, const VertexSet &W) {
    std::vector<char> inW(g.n(), 0);
    for (Vertex w : W) inW.at(w) = 1;
    long long e = 0;
    for (Vertex u : U)
        for (Vertex x : g.neighbours(u)) e += inW[x];
    return e;
}

double mixing_check(const RegularGraph &g, const VertexSet &U, const VertexSet &W, double lambda) {
    const double n = g.n(), u = static_cast<double>(U.size()), w = static_cast<double>(W.size());
    const double bound = lambda * std::sqrt(std::max(0.0, u * w * (1 - u / n) * (1 - w / n)));
    const double e = static_cast<double>(edge_count_between(g, U, W));
    return bound - std::abs(g.d() * u * w / n - e);
}

double edge_guarantee_threshold(double n, double d, double lambda) {
    if (lambda < 0) throw PreconditionError("lambda must be nonnegative");
    return lambda * n / (d + lambda);
}

Prop7Bound prop7_bound(double n, double d, double lambda) {
    if (!(lambda > 0)) throw PreconditionError("prop7_bound needs lambda > 0");
    if (lambda > d) throw PreconditionError("prop7_bound needs lambda <= d");
    if (d < 3 || d * d > n) throw PreconditionError("prop7_bound needs 3 <= d <= sqrt(n)");
    if (d + lambda >= n) throw PreconditionError("prop7_bound needs d + lambda < n");
    const double c = (d + lambda) / n;
    const double exact = n - std::log(2 * lambda / (d + lambda)) / std::log1p(-c);
    const double asymptotic = n - std::log((d + lambda) / (2 * lambda)) * n / (d + lambda);
    return {exact, asymptotic};
}

RecursionDrop recursion_drop(double n, double d, double lambda) {
    if (!(lambda > 0) || d + lambda >= n) throw PreconditionError("recursion_drop needs 0 < lambda, d + lambda < n");
    const double c = (d + lambda) / n;
    const double target = lambda * n / (d + lambda);
    double a = n;
    long long t = 1;
    while (a > target) {
        a = (1 - c) * a - lambda;
        ++t;
        if (t > 1'000'000'000LL) throw NumericalError("recursion did not drop");
    }
    const double closed = 1 + std::log(2 * lambda / (d + 2 * lambda)) / std::log1p(-c);
    return {t, closed};
}

double friedman_lambda(int d, double epsilon) {
    if (d < 3) throw PreconditionError("friedman_lambda needs d >= 3");
    if (epsilon < 0) throw PreconditionError("epsilon must be nonnegative");
    return 2 * std::sqrt(static_cast<double>(d - 1)) + epsilon;
}

namespace {

using Mask = std::uint32_t;

VertexSet from_mask(Mask m) {
    VertexSet out;
    for (int v = 0; m; ++v, m >>= 1)
        if (m & 1) out.push_back(v);
    return out;
}

struct Exhaustive {
    int n, q;
    std::vector<Mask> closed; // N[v]
    std::optional<std::pair<VertexSet, VertexSet>> found;

    // U chosen so far as a mask; `free` = V \ N[U], the vertices W may use.
    bool search(int next, int size, Mask U, Mask free) {
        if (std::popcount(free) < q) return false;
        if (size == q) {
            Mask W = 0;
            for (int v = 0, k = 0; v < n && k < q; ++v)
                if (free >> v & 1) {
                    W |= Mask{1} << v;
                    ++k;
                }
            found.emplace(from_mask(U), from_mask(W));
            return true;
        }
        for (int v = next; v <= n - (q - size); ++v)
            if (search(v + 1, size + 1, U | Mask{1} << v, free & ~closed[v])) return true;
        return false;
    }
};

} // namespace

HoleSearchResult find_bipartite_hole(const Graph &g, int q, const HoleSearchOptions &opts) {
    const int n = g.n();
    if (q < 0) throw PreconditionError("q must be nonnegative");
    HoleSearchResult res;
    if (2 * q > n) {
        res.exhaustive = true;
        return res;
    }
    if (q == 0) {
        res.hole.emplace();
        res.exhaustive = true;
        return res;
    }
    if (n <= std::min(opts.exhaustive_limit, 31)) {
        Exhaustive ex{n, q, std::vector<Mask>(n), std::nullopt};
        for (int v = 0; v < n; ++v) {
            Mask m = Mask{1} << v;
            for (Vertex w : g.neighbours(v)) m |= Mask{1} << w;
            ex.closed[v] = m;
        }
        const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
        ex.search(0, 0, 0, all);
        res.hole = std::move(ex.found);
        res.exhaustive = true;
        return res;
    }
    if (!opts.allow_random)
        throw PreconditionError("graph too large for exhaustive hole search");

    // Randomised: grow U greedily from a random start, keeping V \ N[U] large.
    Rng rng(splitmix64(opts.seed));
    std::vector<char> blocked(n);
    std::vector<int> order(n);
    for (long long trial = 0; trial < opts.random_trials; ++trial) {
        std::iota(order.begin(), order.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        std::fill(blocked.begin(), blocked.end(), 0);
        VertexSet U;
        int free = n;
        for (int v : order) {
            if (static_cast<int>(U.size()) == q) break;
            U.push_back(v);
            if (!blocked[v]) {
                blocked[v] = 1;
                --free;
            }
            for (Vertex w : g.neighbours(v))
                if (!blocked[w]) {
                    blocked[w] = 1;
                    --free;
                }
            if (free < q) break;
        }
        if (static_cast<int>(U.size()) < q || free < q) continue;
        VertexSet W;
        for (int v = 0; v < n && static_cast<int>(W.size()) < q; ++v)
            if (!blocked[v]) W.push_back(v);
        std::sort(U.begin(), U.end());
        res.hole.emplace(std::move(U), std::move(W));
        return res;
    }
    return res;
}

} // namespace zf

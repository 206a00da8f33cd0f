#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "zf/errors.hpp"
#include "zf/hole_bound.hpp"

using namespace zf;

TEST_CASE("entropy_g") {
    CHECK(entropy_g(0) == 0);
    CHECK(entropy_g(1) == 0);
    CHECK(entropy_g(std::exp(1.0)) == doctest::Approx(std::exp(1.0)));
    CHECK_THROWS_AS(entropy_g(-1e-3), PreconditionError);
}

TEST_CASE("exponent_f vanishes at the cubic threshold") {
    const double a = 0.46504;
    CHECK(std::abs(exponent_f(a, b_star(a, 3), 3)) < 5e-5);
}

TEST_CASE("holes are plentiful for small a and absent for large a") {
    CHECK(exponent_f(0.40, b_star(0.40, 3), 3) > 0);
    CHECK(exponent_f(0.48, b_star(0.48, 3), 3) < 0);
}

TEST_CASE("exponent_f names the violated term") {
    try {
        exponent_f(0.3, 1.0, 3); // da - 2b < 0
        FAIL("expected a domain error");
    } catch (const PreconditionError &e) {
        CHECK(std::string(e.what()).find("da-2b") != std::string::npos);
    }
    CHECK_THROWS_AS(exponent_f(0.6, 0.1, 3), PreconditionError);
    CHECK_THROWS_AS(exponent_f(0.45, 0.0, 3), PreconditionError); // d-3da+2b < 0
}

TEST_CASE("b_star solves the stationarity quadratic and is a maximiser") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> A(0.01, 0.49);
    std::uniform_int_distribution<int> D(3, 14);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = A(gen), d = D(gen);
        const double b = b_star(a, d);
        CHECK(std::abs(d * d * a * a + 4 * d * a * b - 4 * b * b - 2 * d * b) < 1e-10);
        const BRange r = b_domain(a, d);
        REQUIRE(b >= r.lo);
        REQUIRE(b <= r.hi);
        const double fb = exponent_f(a, b, d);
        const double h = 1e-7;
        if (b - h > r.lo && b + h < r.hi)
            CHECK(std::abs((exponent_f(a, b + h, d) - exponent_f(a, b - h, d)) / (2 * h)) < 1e-5);
        const double delta = 1e-3 * d * a;
        if (b - delta > r.lo) CHECK(exponent_f(a, b - delta, d) < fb);
        if (b + delta < r.hi) CHECK(exponent_f(a, b + delta, d) < fb);
    }
}

TEST_CASE("grid search never beats b_star") {
    for (int d : {3, 7, 14})
        for (double a : {0.05, 0.2, 0.35, 0.45}) {
            const BRange r = b_domain(a, d);
            const double best = exponent_f(a, b_star(a, d), d);
            for (int k = 0; k <= 10000; ++k) {
                const double b = r.lo + (r.hi - r.lo) * k / 10000.0;
                CHECK(exponent_f(a, b, d) <= best + 1e-9);
            }
        }
}

TEST_CASE("b_star small-a asymptotics") {
    const double d = 1e6;
    for (double K : {1.0, 2.0, 3.0}) {
        const double a = K * std::log(d) / d;
        const double ratio = b_star(a, d) / (0.5 * d * a * a);
        CHECK(ratio >= 0.99);
        CHECK(ratio <= 1.01);
    }
    CHECK_THROWS_AS(b_star(0.5, 3), PreconditionError);
}

TEST_CASE("threshold table") {
    double prev = 1;
    for (const auto &row : test::kTables) {
        const HoleBoundResult r = threshold_a(row.d);
        CHECK(std::abs(r.a_threshold - row.a) < 2e-5);
        CHECK(std::abs(r.lower_bound - row.one_minus_2a) < 4e-5);
        CHECK(std::abs(r.lower_bound - row.lower) < 4e-5);
        CHECK(std::abs(r.f_at_threshold) < 1e-9);
        CHECK(r.a_threshold < prev);
        prev = r.a_threshold;
        const HoleBoundResult tight = threshold_a(row.d, 1e-13);
        CHECK(std::abs(tight.a_threshold - r.a_threshold) < 1e-12);
    }
    CHECK_THROWS_AS(threshold_a(2), PreconditionError);
}

TEST_CASE("asymptotic estimate is finite and ordered in K") {
    const auto e1 = asymptotic_check(1, 1e6), e2 = asymptotic_check(2, 1e6), e3 = asymptotic_check(3, 1e6);
    CHECK(e1.target == 1);
    CHECK(e2.target == 0);
    CHECK(e3.target == -3);
    CHECK(e1.estimate > e2.estimate);
    CHECK(e2.estimate > e3.estimate);
    CHECK(e1.estimate > 0);
}

TEST_CASE("hole csv") {
    std::stringstream ss;
    write_hole_csv(ss, {threshold_a(3), threshold_a(4)});
    std::string line;
    std::getline(ss, line);
    CHECK(line == "d,a,lower_bound");
    std::getline(ss, line);
    CHECK(line.rfind("3,0.46503", 0) == 0);
}

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "semiwave/oracle.hpp"

using namespace semiwave;

// c(a0 = 1, mu = 1), frozen from the first run of this bisection and checked
// against an independent adaptive integration of the same boundary problem.
static const double kPinnedSpeed = 0.36437072331505616;
static const double kPinnedSpeedMu2 = 0.54768523077347630;

TEST_SUITE("oracle") {

TEST_CASE("shot profile ends on the boundary values") {
    auto prof = shoot_profile(1.0, 0.5);
    CHECK(prof.q.back() == 0.0);
    CHECK(prof.q.front() == doctest::Approx(1.0 - 1e-6).epsilon(1e-12));
    CHECK(prof.slope0 < 0.0);
}

TEST_CASE("shot profile decreases monotonically") {
    auto prof = shoot_profile(1.0, 1.2);
    for (std::size_t i = 0; i + 1 < prof.q.size(); ++i)
        CHECK(prof.q[i + 1] < prof.q[i] + 1e-12);
}

TEST_CASE("slope converges at fourth order in the ODE step") {
    const double s1 = shoot_profile(1.0, 0.8, 80.0, 4e-3).slope0;
    const double s2 = shoot_profile(1.0, 0.8, 80.0, 2e-3).slope0;
    const double s3 = shoot_profile(1.0, 0.8, 80.0, 1e-3).slope0;
    const double ratio = std::abs(s1 - s2) / std::abs(s2 - s3);
    CHECK(ratio > 8.0);
    CHECK(ratio < 40.0);
}

TEST_CASE("pinned speed for a0 = 1, mu = 1") {
    auto res = solve_speed(1.0, 1.0);
    CHECK(res.c == doctest::Approx(kPinnedSpeed).epsilon(1e-8));
    CHECK(res.residual <= 1e-10);
    CHECK(res.c > 0.0);
    CHECK(res.c < 2.0);
    CHECK(res.slope0 == doctest::Approx(-res.c).epsilon(1e-9));  // mu = 1
}

TEST_CASE("pinned speed for a0 = 1, mu = 2") {
    auto res = solve_speed(1.0, 2.0);
    CHECK(res.c == doctest::Approx(kPinnedSpeedMu2).epsilon(1e-8));
}

TEST_CASE("speed increases with mu and stays below 2 sqrt(a0)") {
    double prev = 0.0;
    for (double mu : {0.25, 0.5, 1.0, 2.0, 4.0, 16.0}) {
        auto res = solve_speed(1.0, mu, 1e-9);
        CHECK(res.c > prev);
        CHECK(res.c < 2.0);
        prev = res.c;
    }
}

TEST_CASE("scaling law c(a0, mu) = sqrt(a0) c(1, a0 mu)") {
    auto direct = solve_speed(2.0, 1.0, 1e-11);
    auto scaled = solve_speed(1.0, 2.0, 1e-11);
    CHECK(direct.c == doctest::Approx(std::sqrt(2.0) * scaled.c).epsilon(1e-7));
}

TEST_CASE("profile interpolation hits the endpoints") {
    auto res = solve_speed(1.0, 1.0);
    CHECK(res.q_at(0.0) == 0.0);
    CHECK(res.q_at(-1000.0) == 1.0);
    CHECK(res.q_at(res.q_xi0 + 5.0) > 0.9);
    CHECK(res.q_at(-0.5) > 0.0);
}

TEST_CASE("rejects speeds outside the existence range") {
    CHECK_THROWS_AS(shoot_profile(1.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(shoot_profile(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(shoot_profile(1.0, 0.5, 3.0), std::runtime_error);  // L_far too short
}

}  // TEST_SUITE

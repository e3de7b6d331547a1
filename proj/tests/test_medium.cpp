#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "semiwave/medium.hpp"

using namespace semiwave;

namespace {
const double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

Medium quasi() { return Medium(1.5, {{0.3, 1.0, 0.0}, {0.2, kSqrt2, 0.0}}); }
}  // namespace

TEST_SUITE("medium") {

TEST_CASE("eval at zero argument sums base and amplitudes") {
    CHECK(quasi().eval(0.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("eval picks up cos pi = -1") {
    Medium m(1.5, {{0.3, 1.0, 0.0}});
    CHECK(m.eval(kPi) == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("shift equivariance on random samples") {
    Medium m = quasi();
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 500; ++i) {
        const double s = dist(rng), x = dist(rng);
        CHECK(m.shifted(s).eval(x) == doctest::Approx(m.eval(x + s)).epsilon(1e-12));
    }
}

TEST_CASE("shifted is a group action") {
    Medium m = quasi();
    CHECK(m.shifted(0.0) == m);
    Medium a = m.shifted(1.25).shifted(-3.5);
    Medium b = m.shifted(1.25 - 3.5);
    for (double x = -20.0; x <= 20.0; x += 0.625)
        CHECK(a.eval(x) == doctest::Approx(b.eval(x)).epsilon(1e-13));
}

TEST_CASE("single-mode medium is exactly 2 pi / omega periodic") {
    Medium m(1.0, {{0.5, 1.0, -kPi / 2}});  // 1 + 0.5 sin x
    Medium s = m.shifted(2.0 * kPi);
    for (double x = -9.0; x <= 9.0; x += 0.375) {
        CHECK(s.eval(x) == doctest::Approx(m.eval(x)).epsilon(1e-12));
        CHECK(m.eval(x + 2.0 * kPi) == doctest::Approx(m.eval(x)).epsilon(1e-12));
    }
}

TEST_CASE("bounds from amplitude arithmetic") {
    auto b = quasi().bounds();
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-15));

    auto c = Medium(2.0).bounds();
    CHECK(c.lower == 2.0);
    CHECK(c.upper == 2.0);

    CHECK_THROWS_AS(Medium(1.0, {{0.6, 1.0, 0.0}, {0.5, kSqrt2, 0.0}}), std::invalid_argument);
}

TEST_CASE("eval stays within bounds") {
    Medium m = quasi();
    auto b = m.bounds();
    for (double x = -100.0; x <= 100.0; x += 0.17) {
        const double v = m.eval(x);
        CHECK(v >= b.lower - 1e-12);
        CHECK(v <= b.upper + 1e-12);
    }
}

TEST_CASE("grid sampler agrees with direct evaluation") {
    Medium m = quasi().shifted(0.7);
    std::vector<double> grid;
    for (double xi = -30.0; xi <= 0.0; xi += 0.25) grid.push_back(xi);
    MediumGridSampler sampler(m, grid);
    std::vector<double> out(grid.size());
    for (double offset : {0.0, 3.7, 141.21}) {
        sampler.sample(offset, out);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(out[i] == doctest::Approx(m.eval(grid[i] + offset)).epsilon(1e-12));
    }
}

TEST_CASE("spec string round-trips") {
    Medium m(1.5, {{0.3, 1.0, 0.25}, {0.2, kSqrt2, -1.0}}, 2.5);
    CHECK(Medium::parse(m.spec_string()) == m);

    Medium plain = Medium::parse("base=2; shift=0");
    CHECK(plain == Medium(2.0));
}

TEST_CASE("parse rejects malformed specs") {
    CHECK_THROWS_WITH_AS(Medium::parse("shift=1"), doctest::Contains("base"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(Medium::parse("base=1; mode=0.1,2"), doctest::Contains("mode"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(Medium::parse("base=abc"), doctest::Contains("base"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(Medium::parse("base=1; wobble=3"), doctest::Contains("wobble"),
                         std::invalid_argument);
}

}  // TEST_SUITE

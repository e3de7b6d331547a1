#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "semiwave/diagnostics.hpp"
#include "test_helpers.hpp"

using namespace semiwave;
using namespace testutil;

namespace {

// v2 = -xi e^xi on a grid over [-L, 0]; vanishes at 0 with slope -1
std::vector<double> reference_slice(double L, double dx) {
    const auto n = static_cast<std::size_t>(std::llround(L / dx)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = -L + dx * static_cast<double>(i);
        v[i] = -xi * std::exp(xi);
    }
    v.back() = 0.0;
    return v;
}

Trajectory synthetic_trajectory(const std::vector<double>& h, const std::vector<double>& f,
                                double dt = 1.0) {
    Trajectory traj;
    traj.medium = constant_medium();
    for (std::size_t k = 0; k < h.size(); ++k) {
        traj.t.push_back(dt * static_cast<double>(k));
        traj.h.push_back(h[k]);
        traj.hprime.push_back(f[k]);
    }
    return traj;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("rho of identical slices is one") {
    auto v = reference_slice(10.0, 0.05);
    CHECK(rho(v, v, 0.05) == 1.0);
}

TEST_CASE("rho of proportional slices is the factor") {
    auto v2 = reference_slice(10.0, 0.05);
    auto v1 = v2;
    for (double& x : v1) x *= 0.5;
    CHECK(rho(v1, v2, 0.05) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("the boundary slope ratio can realize the infimum") {
    const double L = 10.0, dx = 0.05;
    auto v2 = reference_slice(L, dx);
    auto v1 = v2;
    // quadratic bump with zero slope at the front: the interior ratio exceeds
    // 0.9 at every node while the slope ratio stays at 0.9 (the stencil is
    // exact on quadratics)
    for (std::size_t i = 0; i < v1.size(); ++i) {
        const double xi = -L + dx * static_cast<double>(i);
        v1[i] = 0.9 * v2[i] + 0.05 * xi * xi / (L * L);
    }
    v1.back() = 0.0;
    const double r = rho(v1, v2, dx);
    CHECK(r == doctest::Approx(0.9).epsilon(1e-4));
    double interior = 1e300;
    for (std::size_t i = 0; i + 1 < v1.size(); ++i) interior = std::min(interior, v1[i] / v2[i]);
    CHECK(interior > r);
}

TEST_CASE("rho is invariant under joint scaling") {
    auto v2 = reference_slice(10.0, 0.05);
    auto v1 = v2;
    for (std::size_t i = 0; i < v1.size(); ++i) v1[i] *= 0.8 + 0.1 * std::sin(0.3 * i);
    const double base = rho(v1, v2, 0.05);
    auto w1 = v1, w2 = v2;
    for (double& x : w1) x *= 7.5;
    for (double& x : w2) x *= 7.5;
    CHECK(rho(w1, w2, 0.05) == doctest::Approx(base).epsilon(1e-14));
}

TEST_CASE("rho rejects nonpositive denominators") {
    auto v2 = reference_slice(10.0, 0.05);
    auto v1 = v2;
    v2[5] = 0.0;
    CHECK_THROWS_AS(rho(v1, v2, 0.05), std::invalid_argument);
}

TEST_CASE("rho series of a profile against itself is flat one") {
    Profile p;
    p.medium = constant_medium();
    p.mu = 1.0;
    const double L = 10.0, dx = 0.05;
    for (double xi = -L; xi <= 1e-12; xi += dx) p.xi.push_back(xi);
    p.xi.back() = 0.0;
    for (int j = 0; j < 6; ++j) {
        p.tau.push_back(j);
        p.v.push_back(reference_slice(L, dx));
    }
    auto series = rho_series(p, p);
    for (double v : series.value) CHECK(v == 1.0);
    CHECK(series.max_backward_step == 0.0);
    CHECK(series.screening.max_order_violation == 0.0);

    SUBCASE("reversed ordering is screened but still computed") {
        Profile above = p;
        for (auto& row : above.v)
            for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] *= 1.1;
        auto rev = rho_series(above, p);
        CHECK(rev.screening.max_order_violation > 0.0);
        CHECK(rev.value.size() == p.tau.size());
        CHECK(rev.value.front() > 1.0);
    }
}

TEST_CASE("speed law tabulates and interpolates") {
    std::vector<double> h, f;
    for (int k = 0; k <= 100; ++k) {
        h.push_back(0.1 * k);
        f.push_back(0.8);
    }
    auto traj = synthetic_trajectory(h, f, 0.05);
    auto law = speed_law(traj, 1.0);
    CHECK(law.h_min() >= 2.0 - 1e-12);  // transient trimmed
    CHECK(law(3.7) == 0.8);

    SUBCASE("positions deduplicated when the front stalls") {
        auto h2 = h;
        h2[50] = h2[49];  // repeated position drops out
        auto law2 = speed_law(synthetic_trajectory(h2, f, 0.05), 0.0);
        CHECK(law2.positions().size() == h2.size() - 1);
    }

    SUBCASE("empty post-transient window throws") {
        CHECK_THROWS_AS(speed_law(traj, 100.0), std::invalid_argument);
    }
}

TEST_CASE("average speed of a constant law is the constant") {
    std::vector<double> h{0.0, 1.0, 2.5, 7.0}, f{0.8, 0.8, 0.8, 0.8};
    SpeedLaw law(std::move(h), std::move(f));
    CHECK(average_speed(law, 0.0, 7.0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(average_speed(law, 0.3, 5.1) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("average speed is the harmonic mean by h-measure") {
    // f = 0.5 on the first half, 1.0 on the second, sharp transition
    const double eps = 1e-9;
    SpeedLaw law({0.0, 1.0 - eps, 1.0 + eps, 2.0}, {0.5, 0.5, 1.0, 1.0});
    CHECK(average_speed(law, 0.0, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("average speed rejects windows beyond the table") {
    SpeedLaw law({0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(average_speed(law, -1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(average_speed(law, 0.5, 2.0), std::invalid_argument);
}

TEST_CASE("almost periods of a periodic series are the period multiples") {
    const double P = 5.0;
    std::vector<double> xs, ys;
    for (double x = 0.0; x <= 100.0; x += 0.05) {
        xs.push_back(x);
        ys.push_back(std::sin(2.0 * kPi * x / P));
    }
    auto scan = almost_period_scan(xs, ys, 0.02, 20.0, 0.05);
    REQUIRE(!scan.shifts.empty());
    CHECK(scan.max_gap == doctest::Approx(P).epsilon(0.05));
    for (double T : scan.shifts) {
        const double frac = std::fmod(T, P);
        CHECK(std::min(frac, P - frac) < 0.1);
    }
}

TEST_CASE("every shift qualifies on a constant series") {
    std::vector<double> xs, ys;
    for (double x = 0.0; x <= 50.0; x += 0.1) {
        xs.push_back(x);
        ys.push_back(2.0);
    }
    auto scan = almost_period_scan(xs, ys, 1e-12, 10.0, 0.1);
    CHECK(scan.shifts.size() == 100);
    CHECK(scan.max_gap == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("two-frequency series has relatively dense almost periods") {
    std::vector<double> xs, ys;
    for (double x = 0.0; x <= 420.0; x += 0.05) {
        xs.push_back(x);
        ys.push_back(std::cos(x) + std::cos(kSqrt2 * x));
    }
    // at eps = 0.2 the first simultaneous near-return of both phases sits at
    // 24 pi (12 periods of the integer mode, phase error 0.18 rad in the other)
    auto scan = almost_period_scan(xs, ys, 0.2, 100.0, 0.05);
    CHECK(!scan.shifts.empty());
    CHECK(scan.shifts.front() == doctest::Approx(24.0 * kPi).epsilon(0.01));
    CHECK(scan.max_gap < 80.0);

    // verify the returned shifts against a finer sampling of the closed form
    for (std::size_t i = 0; i < scan.shifts.size(); i += 7) {
        const double T = scan.shifts[i];
        double sup = 0.0;
        for (double x = 0.0; x + T <= 420.0; x += 0.01) {
            const double a = std::cos(x) + std::cos(kSqrt2 * x);
            const double b = std::cos(x + T) + std::cos(kSqrt2 * (x + T));
            sup = std::max(sup, std::abs(b - a));
        }
        CHECK(sup <= 0.2 + 0.02);
    }

    SUBCASE("tightening eps never enlarges the set") {
        auto tight = almost_period_scan(xs, ys, 0.1, 100.0, 0.05);
        CHECK(tight.shifts.size() <= scan.shifts.size());
        for (double T : tight.shifts)
            CHECK(std::find(scan.shifts.begin(), scan.shifts.end(), T) != scan.shifts.end());
    }
}

TEST_CASE("scan demands a window of at least four max shifts") {
    std::vector<double> xs{0.0, 1.0, 2.0}, ys{0.0, 1.0, 0.0};
    CHECK_THROWS_AS(almost_period_scan(xs, ys, 0.1, 10.0, 0.5), std::invalid_argument);
}

TEST_CASE("speed bounds report the band and flag bad windows") {
    std::vector<double> h, f;
    for (int k = 0; k <= 100; ++k) {
        h.push_back(0.1 * k);
        f.push_back(0.9 + 0.05 * std::sin(0.4 * k));
    }
    auto traj = synthetic_trajectory(h, f, 0.1);
    auto band = speed_bounds(traj, 2.0);
    CHECK(!band.violation);
    CHECK(band.m > 0.8);
    CHECK(band.M < 1.0);

    auto empty = speed_bounds(traj, 1e9);
    CHECK(empty.violation);
}

}  // TEST_SUITE

#include "semiwave/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace semiwave {

namespace {

struct PhasePoint {
    double q, p;  // p = q'
};

// q'' = -c q' - q (a0 - q)
inline PhasePoint deriv(double c, double a0, PhasePoint y) {
    return {y.p, -c * y.p - y.q * (a0 - y.q)};
}

inline PhasePoint rk4_step(double c, double a0, PhasePoint y, double h) {
    PhasePoint k1 = deriv(c, a0, y);
    PhasePoint k2 = deriv(c, a0, {y.q + 0.5 * h * k1.q, y.p + 0.5 * h * k1.p});
    PhasePoint k3 = deriv(c, a0, {y.q + 0.5 * h * k2.q, y.p + 0.5 * h * k2.p});
    PhasePoint k4 = deriv(c, a0, {y.q + h * k3.q, y.p + h * k3.p});
    return {y.q + h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
            y.p + h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

}  // namespace

ShootProfileResult shoot_profile(double a0, double c, double L_far, double ode_dx, double delta) {
    if (!(a0 > 0.0)) throw std::invalid_argument("shoot_profile: a0 must be > 0");
    if (!(c > 0.0 && c < 2.0 * std::sqrt(a0)))
        throw std::invalid_argument("shoot_profile: need 0 < c < 2 sqrt(a0)");

    const double lambda_plus = 0.5 * (std::sqrt(c * c + 4.0 * a0) - c);
    PhasePoint y{a0 - delta, -delta * lambda_plus};

    ShootProfileResult out;
    out.q.push_back(y.q);

    const long max_steps = static_cast<long>(L_far / ode_dx) + 1;
    for (long k = 0; k < max_steps; ++k) {
        PhasePoint yn = rk4_step(c, a0, y, ode_dx);
        if (yn.q > a0 + 1e-9)
            throw std::runtime_error("shoot_profile: q exceeded a0 (off the wave manifold)");
        if (yn.q <= 0.0) {
            // bisect the final substep so the last sample lands on q = 0
            double lo = 0.0, hi = ode_dx;
            PhasePoint ym = yn;
            for (int it = 0; it < 60 && hi - lo > 0.0; ++it) {
                double mid = 0.5 * (lo + hi);
                ym = rk4_step(c, a0, y, mid);
                (ym.q <= 0.0 ? hi : lo) = mid;
            }
            const double cross = 0.5 * (lo + hi);
            ym = rk4_step(c, a0, y, cross);
            out.q.push_back(0.0);
            out.slope0 = ym.p;
            // translate: crossing at xi = 0; samples k' < last sit at -(k*ode_dx + cross - k'*ode_dx)
            out.q_xi0 = -(static_cast<double>(k) * ode_dx + cross);
            return out;
        }
        y = yn;
        out.q.push_back(y.q);
    }
    throw std::runtime_error("shoot_profile: no zero crossing within L_far = " + std::to_string(L_far));
}

ShootingResult solve_speed(double a0, double mu, double tol, double L_far, double ode_dx) {
    if (!(a0 > 0.0) || !(mu > 0.0)) throw std::invalid_argument("solve_speed: a0, mu must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_speed: tol must be > 0");

    const double cmax = 2.0 * std::sqrt(a0);
    const double eps = 1e-6 * cmax;

    auto phi = [&](double c) -> double {
        // Past the existence range the trajectory never reaches zero; treat
        // that as the negative side of the root (front relation unsatisfiable).
        try {
            return -mu * shoot_profile(a0, c, L_far, ode_dx).slope0 - c;
        } catch (const std::runtime_error&) {
            return -1.0;
        }
    };

    double lo = eps, hi = cmax - eps;
    double phi_lo = phi(lo), phi_hi = phi(hi);
    if (phi_lo * phi_hi > 0.0)
        throw std::runtime_error("solve_speed: no sign change in bracket; Phi(" +
                                 std::to_string(lo) + ") = " + std::to_string(phi_lo) + ", Phi(" +
                                 std::to_string(hi) + ") = " + std::to_string(phi_hi));

    double mid = 0.5 * (lo + hi), phi_mid = phi(mid);
    for (int it = 0; it < 200 && std::abs(phi_mid) > tol; ++it) {
        if (phi_mid * phi_lo > 0.0) {
            lo = mid;
            phi_lo = phi_mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        phi_mid = phi(mid);
        if (hi - lo < 1e-15 * cmax) break;
    }
    if (std::abs(phi_mid) > tol)
        throw std::runtime_error("solve_speed: bisection stalled with |Phi| = " +
                                 std::to_string(std::abs(phi_mid)));

    auto prof = shoot_profile(a0, mid, L_far, ode_dx);
    ShootingResult res;
    res.a0 = a0;
    res.mu = mu;
    res.c = mid;
    res.slope0 = prof.slope0;
    res.residual = std::abs(mid + mu * prof.slope0);
    res.q = std::move(prof.q);
    res.q_xi0 = prof.q_xi0;
    res.ode_dx = ode_dx;
    return res;
}

double ShootingResult::q_at(double xi) const {
    if (xi >= 0.0) return 0.0;
    if (xi <= q_xi0) return a0;
    // samples 0..n-2 are spaced ode_dx from q_xi0; the last lies at 0 exactly
    const double s = (xi - q_xi0) / ode_dx;
    const auto n = q.size();
    auto i = static_cast<std::size_t>(s);
    if (i >= n - 1) return q[n - 1];
    double x_i = q_xi0 + static_cast<double>(i) * ode_dx;
    double x_next = (i + 2 == n) ? 0.0 : x_i + ode_dx;
    double th = (xi - x_i) / (x_next - x_i);
    return q[i] + th * (q[i + 1] - q[i]);
}

}  // namespace semiwave

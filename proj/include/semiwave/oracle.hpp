#pragma once

#include <vector>

namespace semiwave {

// Semi-wave profile of the constant-coefficient problem obtained by shooting:
//   q'' + c q' + q (a0 - q) = 0 on (-inf, 0],  q(-inf) = a0,  q(0) = 0, q' < 0,
// with the front relation c = -mu q'(0).
struct ShootingResult {
    double a0 = 0.0;
    double mu = 0.0;
    double c = 0.0;        // selected speed, 0 < c < 2 sqrt(a0)
    double slope0 = 0.0;   // q'(0)
    double residual = 0.0; // |c + mu * slope0|

    // q samples spaced ode_dx apart; q_xi0 is the coordinate of q.front(),
    // translated so the zero crossing sits at xi = 0 (last sample).
    std::vector<double> q;
    double q_xi0 = 0.0;
    double ode_dx = 0.0;

    double q_at(double xi) const;  // linear interpolation; a0 left of the samples, 0 right of 0
};

struct ShootProfileResult {
    std::vector<double> q;  // samples from the manifold start to the crossing
    double q_xi0 = 0.0;     // coordinate of q.front() after translation
    double slope0 = 0.0;    // q'(0) at the crossing
};

// Integrates the profile ODE with fixed-step RK4 starting on the unstable
// manifold of q = a0 (exit rate (sqrt(c^2 + 4 a0) - c)/2, offset delta) until
// q crosses zero, then locates the crossing by step bisection. Throws if q
// leaves (0, a0] the wrong way or no crossing occurs within length L_far.
ShootProfileResult shoot_profile(double a0, double c, double L_far = 80.0, double ode_dx = 1e-3,
                                 double delta = 1e-6);

// Bisection on c in (eps, 2 sqrt(a0) - eps) for the root of
// Phi(c) = -mu q_c'(0) - c; |Phi| <= tol at the returned speed.
ShootingResult solve_speed(double a0, double mu, double tol = 1e-10, double L_far = 80.0,
                           double ode_dx = 1e-3);

}  // namespace semiwave

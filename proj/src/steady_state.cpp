#include "semiwave/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "semiwave/tridiag.hpp"

namespace semiwave {

namespace {

long grid_count(double L, double dx, const char* what) {
    const double ratio = 2.0 * L / dx;
    const double nearest = std::round(ratio);
    if (!(dx > 0.0) || !(L > 0.0) || std::abs(ratio - nearest) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument(std::string(what) + ": L/dx must be integral");
    return static_cast<long>(nearest) + 1;
}

// marches u_t = u_xx + u (g - u), diffusion implicit, reaction explicit,
// zero-slope ends, until the steady residual drops below the target
std::vector<double> march(const std::vector<double>& g, double start, double dx, double dt,
                          double target, long max_steps, double floor_ok, double ceil_ok) {
    const std::size_t n = g.size();
    const double r = dt / (dx * dx);

    std::vector<double> sub(n, -r), diag(n, 1.0 + 2.0 * r), sup(n, -r);
    diag[0] = 1.0 + r;      // ghost reflection at x = -L
    diag[n - 1] = 1.0 + r;  // and at x = +L
    TridiagFactor lu(sub, diag, sup);

    std::vector<double> u(n, start), rhs(n);
    for (long step = 0; step < max_steps; ++step) {
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = u[i] + dt * u[i] * (g[i] - u[i]);
        lu.solve(rhs, u);

        double res = 0.0, umin = u[0], umax = u[0];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (dx * dx);
            res = std::max(res, std::abs(lap + u[i] * (g[i] - u[i])));
            umin = std::min(umin, u[i]);
            umax = std::max(umax, u[i]);
        }
        if (umin < floor_ok || umax > ceil_ok || !std::isfinite(res))
            throw std::runtime_error("compute_steady_state: iterate left the bracket [" +
                                     std::to_string(floor_ok) + ", " + std::to_string(ceil_ok) + "]");
        if (res < target) return u;
    }
    throw std::runtime_error("compute_steady_state: no convergence within max_steps");
}

}  // namespace

SteadyState::SteadyState(Medium medium, SteadyStateConfig cfg, std::vector<double> values,
                         double residual_norm, double sandwich_gap)
    : medium_(std::move(medium)),
      cfg_(cfg),
      values_(std::move(values)),
      residual_norm_(residual_norm),
      sandwich_gap_(sandwich_gap) {}

double SteadyState::value_at(double x) const {
    const double s = (x + cfg_.L) / cfg_.dx;
    if (s <= 0.0) return values_.front();
    const auto last = static_cast<double>(values_.size() - 1);
    if (s >= last) return values_.back();
    const auto i = static_cast<std::size_t>(s);
    const double th = s - static_cast<double>(i);
    return values_[i] + th * (values_[i + 1] - values_[i]);
}

SteadyState compute_steady_state(const Medium& m, const SteadyStateConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("compute_steady_state: tol must be > 0");
    const long n = grid_count(cfg.L, cfg.dx, "compute_steady_state");

    std::vector<double> g(n);
    for (long i = 0; i < n; ++i) g[i] = m.eval(-cfg.L + cfg.dx * static_cast<double>(i));

    const auto [s, S] = m.bounds();
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.2 / S;

    // stop well under tol so the samples, not just the residual, are settled
    const double target = 0.05 * cfg.tol;
    const double floor_ok = s * (1.0 - cfg.tol) - cfg.tol;
    const double ceil_ok = S * (1.0 + cfg.tol) + cfg.tol;

    std::vector<double> from_upper = march(g, S, cfg.dx, dt, target, cfg.max_steps, floor_ok, ceil_ok);
    std::vector<double> from_lower = march(g, s, cfg.dx, dt, target, cfg.max_steps, floor_ok, ceil_ok);

    double gap = 0.0;
    for (long i = 0; i < n; ++i) gap = std::max(gap, std::abs(from_upper[i] - from_lower[i]));
    if (gap > 2.0 * cfg.tol)
        throw std::runtime_error("compute_steady_state: upper/lower marches disagree by " +
                                 std::to_string(gap));

    const double res = steady_residual(from_upper, m, cfg.L, cfg.dx);
    return SteadyState(m, cfg, std::move(from_upper), res, gap);
}

std::vector<double> march_from_constant(const Medium& m, const SteadyStateConfig& cfg, double u0) {
    if (!(u0 > 0.0)) throw std::invalid_argument("march_from_constant: u0 must be > 0");
    const long n = grid_count(cfg.L, cfg.dx, "march_from_constant");
    std::vector<double> g(n);
    for (long i = 0; i < n; ++i) g[i] = m.eval(-cfg.L + cfg.dx * static_cast<double>(i));
    const auto [s, S] = m.bounds();
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.2 / std::max(S, u0);
    const double lo = std::min(u0, s) * (1.0 - cfg.tol) - cfg.tol;
    const double hi = std::max(u0, S) * (1.0 + cfg.tol) + cfg.tol;
    return march(g, u0, cfg.dx, dt, 0.05 * cfg.tol, cfg.max_steps, lo, hi);
}

double steady_residual(std::span<const double> u, const Medium& m, double L, double dx) {
    double res = 0.0;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        const double x = -L + dx * static_cast<double>(i);
        const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (dx * dx);
        res = std::max(res, std::abs(lap + u[i] * (m.eval(x) - u[i])));
    }
    return res;
}

}  // namespace semiwave

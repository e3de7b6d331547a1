#include "semiwave/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace semiwave {

namespace {

double lerp_on_grid(std::span<const double> w, double L, double dx, double xi) {
    const double s = (xi + L) / dx;
    if (s <= 0.0) return w.front();
    const auto last = static_cast<double>(w.size() - 1);
    if (s >= last) return w.back();
    const auto i = static_cast<std::size_t>(s);
    const double th = s - static_cast<double>(i);
    return w[i] + th * (w[i + 1] - w[i]);
}

}  // namespace

void SolverConfig::validate() const {
    if (!(dx > 0.0)) throw std::invalid_argument("solver config: dx must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("solver config: dt must be > 0");
    if (dt > 0.5 * dx * dx * (1.0 + 1e-12))
        throw std::invalid_argument("solver config: dt must satisfy dt <= 0.5 dx^2");
    if (!(L >= 20.0)) throw std::invalid_argument("solver config: L must be >= 20");
    const double ratio = L / dx;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw std::invalid_argument("solver config: L/dx must be integral");
    if (!(mu > 0.0)) throw std::invalid_argument("solver config: mu must be > 0");
    if (flux_order != 1 && flux_order != 2)
        throw std::invalid_argument("solver config: flux_order must be 1 or 2");
    if (snapshot_stride < 0) throw std::invalid_argument("solver config: snapshot_stride < 0");
    if (!(transient_cutoff >= 0.0))
        throw std::invalid_argument("solver config: transient_cutoff must be >= 0");
}

long SolverConfig::grid_points() const {
    return static_cast<long>(std::round(L / dx)) + 1;
}

FreeBoundarySolver::FreeBoundarySolver(Medium medium, std::shared_ptr<const SteadyState> steady,
                                       SolverConfig cfg)
    : medium_(std::move(medium)), steady_(std::move(steady)), cfg_(cfg),
      xi_(), sampler_(medium_, {}) {
    cfg_.validate();
    if (!steady_) throw std::invalid_argument("solver: steady state required");
    if (!(steady_->medium() == medium_))
        throw std::invalid_argument("solver: steady state was computed for a different medium");

    const long n = cfg_.grid_points();
    xi_.resize(n);
    for (long i = 0; i < n; ++i) xi_[i] = -cfg_.L + cfg_.dx * static_cast<double>(i);
    xi_.back() = 0.0;
    sampler_ = MediumGridSampler(medium_, xi_);

    const double r = cfg_.dt / (cfg_.dx * cfg_.dx);
    std::vector<double> sub(n, -r), diag(n, 1.0 + 2.0 * r), sup(n, -r);
    if (cfg_.left_bc == LeftBc::ZeroSlope) {
        diag[0] = 1.0;
        sup[0] = -1.0;  // w0 = w1
    } else {
        diag[0] = 1.0;
        sup[0] = 0.0;  // w0 pinned to u*(-L + h)
    }
    sub[n - 1] = 0.0;
    diag[n - 1] = 1.0;  // w(0) = 0
    lu_ = TridiagFactor(sub, diag, sup);
}

FrontState FreeBoundarySolver::init_cutoff(double h0, int n) const {
    if (n < 1) throw std::invalid_argument("init_cutoff: n must be >= 1");
    FrontState s;
    s.t = 0.0;
    s.h = h0;
    s.w.resize(xi_.size());
    for (std::size_t i = 0; i < xi_.size(); ++i) {
        const double arg = static_cast<double>(n) * xi_[i];
        const double ramp = arg <= -1.0 ? 1.0 : -arg;
        s.w[i] = ramp * steady_->value_at(xi_[i] + h0);
    }
    s.w.back() = 0.0;
    return s;
}

double FreeBoundarySolver::boundary_flux(const FrontState& s) const {
    const auto n = s.w.size();
    if (n < 3) throw std::invalid_argument("boundary_flux: need at least 3 grid points");
    if (cfg_.flux_order == 2)
        return (-4.0 * s.w[n - 2] + s.w[n - 3]) / (2.0 * cfg_.dx);
    return -s.w[n - 2] / cfg_.dx;
}

double FreeBoundarySolver::step_once(FrontState& s, Scratch& sc) const {
    const auto n = xi_.size();
    const double dx = cfg_.dx, dt = cfg_.dt;

    const double flux = boundary_flux(s);
    const double hp = -cfg_.mu * flux;
    if (!std::isfinite(hp)) throw std::runtime_error("step: front speed is not finite");
    if (std::abs(hp) * dt > dx)
        throw std::runtime_error("step: advection CFL violated, |h'| dt = " +
                                 std::to_string(std::abs(hp) * dt) + " > dx = " + std::to_string(dx) +
                                 " at t = " + std::to_string(s.t));

    sc.g.resize(n);
    sc.rhs.resize(n);
    sampler_.sample(s.h, sc.g);

    const double* w = s.w.data();
    const double* g = sc.g.data();
    double* rhs = sc.rhs.data();
    const double adv = hp * dt / dx;
    if (hp >= 0.0) {
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs[i] = w[i] + adv * (w[i + 1] - w[i]) + dt * w[i] * (g[i] - w[i]);
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs[i] = w[i] + adv * (w[i] - w[i - 1]) + dt * w[i] * (g[i] - w[i]);
    }

    const double h_new = s.h + dt * hp;
    rhs[0] = cfg_.left_bc == LeftBc::PinToSteadyState ? steady_->value_at(-cfg_.L + h_new) : 0.0;
    rhs[n - 1] = 0.0;
    lu_.solve(sc.rhs, s.w);

    s.t += dt;
    s.h = h_new;
    return hp;
}

void FreeBoundarySolver::step(FrontState& s) const {
    Scratch sc;
    step_once(s, sc);
    double cap = std::max(medium_.bounds().upper, *std::max_element(s.w.begin(), s.w.end()));
    for (double& v : s.w) {
        if (!std::isfinite(v)) throw std::runtime_error("step: non-finite value in w");
        if (v < 0.0) {
            if (v < -1e-10 * cap) throw std::runtime_error("step: negativity beyond roundoff");
            v = 0.0;
        }
    }
}

Trajectory FreeBoundarySolver::evolve(FrontState s, const StopCondition& stop) const {
    if (!stop.t_end && !stop.h_end)
        throw std::invalid_argument("evolve: a stop condition (t_end or h_end) is required");
    if (s.w.size() != xi_.size())
        throw std::invalid_argument("evolve: state grid does not match the solver grid");
    if (s.w.back() != 0.0) throw std::invalid_argument("evolve: w(0) must be 0");

    double w0max = *std::max_element(s.w.begin(), s.w.end());
    double w0min = *std::min_element(s.w.begin(), s.w.end());
    if (w0max <= 0.0)
        throw std::invalid_argument("evolve: initial data is identically zero; the front cannot move");
    if (w0min < 0.0) throw std::invalid_argument("evolve: initial data must be nonnegative");
    const double cap = std::max(medium_.bounds().upper, w0max) * (1.0 + 1e-12) + 1e-12;

    Trajectory traj;
    traj.config = cfg_;
    traj.medium = medium_;
    traj.transient_cutoff = cfg_.transient_cutoff;

    Scratch sc;
    const long max_steps = 50'000'000;
    long k = 0;
    auto reached = [&]() {
        if (stop.t_end && s.t >= *stop.t_end - 1e-12) return true;
        if (stop.h_end && s.h >= *stop.h_end) return true;
        return false;
    };
    auto snap_wanted = [&]() {
        return cfg_.snapshot_stride > 0 && k % cfg_.snapshot_stride == 0 &&
               s.h >= cfg_.snap_h_min && s.h <= cfg_.snap_h_max;
    };

    while (!reached()) {
        if (k >= max_steps) throw std::runtime_error("evolve: exceeded the step budget");
        if (snap_wanted()) traj.snapshots.push_back({s.t, s.h, s.w});

        const double t0 = s.t, h0 = s.h;
        const double hp = step_once(s, sc);
        traj.t.push_back(t0);
        traj.h.push_back(h0);
        traj.hprime.push_back(hp);
        ++k;

        // invariant scan: finite, nonnegative up to roundoff, below the cap
        double wmin = 0.0, wmax = 0.0;
        for (double& v : s.w) {
            if (v < wmin) wmin = v;
            if (v > wmax) wmax = v;
        }
        if (!std::isfinite(wmin) || !std::isfinite(wmax) || !std::isfinite(s.h))
            throw std::runtime_error("evolve: solution lost finiteness at t = " + std::to_string(s.t));
        if (wmax > cap)
            throw std::runtime_error("evolve: solution exceeded the maximum-principle cap at t = " +
                                     std::to_string(s.t));
        if (wmin < -1e-10 * cap)
            throw std::runtime_error("evolve: solution went negative at t = " + std::to_string(s.t));
        if (wmin < 0.0)
            for (double& v : s.w)
                if (v < 0.0) v = 0.0;
    }

    if (snap_wanted()) traj.snapshots.push_back({s.t, s.h, s.w});
    traj.t.push_back(s.t);
    traj.h.push_back(s.h);
    traj.hprime.push_back(-cfg_.mu * boundary_flux(s));

    bool any = false;
    double m = 0.0, M = 0.0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        if (traj.t[i] < cfg_.transient_cutoff) continue;
        if (!any) {
            m = M = traj.hprime[i];
            any = true;
        } else {
            m = std::min(m, traj.hprime[i]);
            M = std::max(M, traj.hprime[i]);
        }
    }
    traj.speed_min = m;
    traj.speed_max = M;
    traj.speed_violation = any && m <= 0.0;
    traj.final_state = std::move(s);
    return traj;
}

OrderingReport compare_ordered(const Trajectory& lower, const Trajectory& upper) {
    OrderingReport rep;
    const std::size_t K = std::min(lower.t.size(), upper.t.size());
    for (std::size_t k = 0; k < K; ++k) {
        if (std::abs(lower.t[k] - upper.t[k]) > 1e-9)
            throw std::invalid_argument("compare_ordered: trajectories use different time grids");
        rep.max_h_violation = std::max(rep.max_h_violation, lower.h[k] - upper.h[k]);
    }
    rep.compared_steps = K;

    const double L = lower.config.L, dx = lower.config.dx;
    std::size_t j = 0;
    for (const auto& sa : lower.snapshots) {
        while (j < upper.snapshots.size() && upper.snapshots[j].t < sa.t - 1e-9) ++j;
        if (j == upper.snapshots.size()) break;
        const auto& sb = upper.snapshots[j];
        if (std::abs(sb.t - sa.t) > 1e-9) continue;
        const double x_hi = std::min(sa.h, sb.h);
        const double x_lo = std::max(sa.h, sb.h) - L;
        for (double x = x_hi; x >= x_lo; x -= dx) {
            const double ua = lerp_on_grid(sa.w, L, dx, x - sa.h);
            const double ub = lerp_on_grid(sb.w, L, dx, x - sb.h);
            rep.max_u_violation = std::max(rep.max_u_violation, ua - ub);
        }
        ++rep.compared_snapshots;
    }
    return rep;
}

}  // namespace semiwave

#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "semiwave/medium.hpp"
#include "semiwave/steady_state.hpp"
#include "semiwave/tridiag.hpp"

namespace semiwave {

enum class LeftBc { PinToSteadyState, ZeroSlope };

struct SolverConfig {
    double dx = 0.02;
    double dt = 2e-4;  // requires dt <= 0.5 dx^2 plus a per-step advection CFL check
    double L = 30.0;   // moving-frame depth, xi in [-L, 0]; at least 20
    double mu = 1.0;
    LeftBc left_bc = LeftBc::PinToSteadyState;
    int flux_order = 2;            // one-sided stencil for w_xi(0): 1 or 2
    double transient_cutoff = 5.0; // time after which speed diagnostics begin
    long snapshot_stride = 0;      // steps between stored frames; 0 = none
    double snap_h_min = -std::numeric_limits<double>::infinity();
    double snap_h_max = std::numeric_limits<double>::infinity();

    void validate() const;  // throws std::invalid_argument
    long grid_points() const;

    bool operator==(const SolverConfig&) const = default;
};

// Moving-frame state: w(xi, t) = u(xi + h(t), t) on xi in [-L, 0], w(0) = 0.
struct FrontState {
    double t = 0.0;
    double h = 0.0;
    std::vector<double> w;
};

struct Snapshot {
    double t = 0.0;
    double h = 0.0;
    std::vector<double> w;
};

struct StopCondition {
    std::optional<double> t_end;
    std::optional<double> h_end;
};

struct Trajectory {
    // per-step series, one entry per step start plus the final state
    std::vector<double> t, h, hprime;
    std::vector<Snapshot> snapshots;

    // empirical speed band over t >= transient_cutoff
    double speed_min = 0.0;
    double speed_max = 0.0;
    bool speed_violation = false;  // front speed <= 0 after the transient

    double transient_cutoff = 0.0;
    SolverConfig config;
    Medium medium{1.0};
    FrontState final_state;
};

struct OrderingReport {
    double max_h_violation = 0.0;  // max over matched records of h1 - h2
    double max_u_violation = 0.0;  // max over matched snapshots of u1 - u2 on the lab-frame overlap
    std::size_t compared_steps = 0;
    std::size_t compared_snapshots = 0;
};

// Time-steps w_t = w_xixi + h'(t) w_xi + w (g(xi + h(t)) - w), w(0, t) = 0,
// h'(t) = -mu w_xi(0, t). Diffusion is implicit (fixed tridiagonal solve),
// advection is first-order upwind and reaction explicit; h advances by
// explicit Euler at the same dt.
class FreeBoundarySolver {
public:
    FreeBoundarySolver(Medium medium, std::shared_ptr<const SteadyState> steady, SolverConfig cfg);

    // w(xi) = H(n xi) u*(xi + h0) with H the unit cutoff ramp (1 below -1,
    // -x on (-1, 0]); w(0) = 0.
    FrontState init_cutoff(double h0, int n) const;

    double boundary_flux(const FrontState& s) const;  // one-sided w_xi(0)

    void step(FrontState& s) const;

    Trajectory evolve(FrontState s, const StopCondition& stop) const;

    const SolverConfig& config() const { return cfg_; }
    const Medium& medium() const { return medium_; }
    const SteadyState& steady() const { return *steady_; }
    std::span<const double> xi_grid() const { return xi_; }

private:
    struct Scratch {
        std::vector<double> g, rhs;
    };
    double step_once(FrontState& s, Scratch& scratch) const;  // returns the h' used

    Medium medium_;
    std::shared_ptr<const SteadyState> steady_;
    SolverConfig cfg_;
    std::vector<double> xi_;
    MediumGridSampler sampler_;
    TridiagFactor lu_;
    double w_cap_ = 0.0;  // discrete maximum-principle ceiling
};

// Pointwise ordering of two runs with identical configuration: h1 <= h2 per
// step and u1 <= u2 in the lab frame at matched snapshots. Report only.
OrderingReport compare_ordered(const Trajectory& lower, const Trajectory& upper);

}  // namespace semiwave

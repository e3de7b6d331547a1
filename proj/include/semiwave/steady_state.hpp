#pragma once

#include <span>
#include <vector>

#include "semiwave/medium.hpp"

namespace semiwave {

struct SteadyStateConfig {
    double L = 60.0;   // domain [-L, L]; L/dx must be integral
    double dx = 0.02;
    double tol = 1e-8; // inf-norm target for the discrete steady residual
    double dt = 0.0;   // 0 = pick from the reaction stability bound
    long max_steps = 2'000'000;

    bool operator==(const SteadyStateConfig&) const = default;
};

// The bounded positive steady state of u_t = u_xx + u (g - u) on [-L, L]
// with zero-slope ends, obtained by time-marching down from the constant
// upper solution. Samples extend flat beyond the grid.
class SteadyState {
public:
    SteadyState(Medium medium, SteadyStateConfig cfg, std::vector<double> values,
                double residual_norm, double sandwich_gap);

    double value_at(double x) const;  // linear interpolation, clamped to the ends

    std::span<const double> values() const { return values_; }
    double x_at(std::size_t i) const { return -cfg_.L + cfg_.dx * static_cast<double>(i); }
    std::size_t size() const { return values_.size(); }

    const Medium& medium() const { return medium_; }
    double L() const { return cfg_.L; }
    double dx() const { return cfg_.dx; }
    double tol() const { return cfg_.tol; }
    double residual_norm() const { return residual_norm_; }

    // inf-norm distance between the marches from the upper and lower solutions
    double sandwich_gap() const { return sandwich_gap_; }

private:
    Medium medium_;
    SteadyStateConfig cfg_;
    std::vector<double> values_;
    double residual_norm_;
    double sandwich_gap_;
};

SteadyState compute_steady_state(const Medium& m, const SteadyStateConfig& cfg);

// Same march from an arbitrary constant start; the global stability of the
// steady state means any positive constant lands on the same limit.
std::vector<double> march_from_constant(const Medium& m, const SteadyStateConfig& cfg, double u0);

// Inf-norm of the discrete residual u_xx + u (g - u) over interior nodes,
// central second differences, grid x_i = -L + i dx.
double steady_residual(std::span<const double> u, const Medium& m, double L, double dx);

}  // namespace semiwave

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semiwave/free_boundary.hpp"
#include "semiwave/medium.hpp"
#include "semiwave/steady_state.hpp"

namespace semiwave {

struct LadderConfig {
    std::vector<int> n_list{1, 2, 4, 8};
    std::vector<double> h0_list{-10.0, -20.0, -40.0};
    int n = 2;        // single-run cutoff index
    double h0 = 0.0;  // single-run initial front

    bool operator==(const LadderConfig&) const = default;
};

struct ProfileWindowConfig {
    double tau_min = 0.0;
    double tau_max = 0.0;  // 0 = derived from stop_h
    double dtau = 0.2;

    bool operator==(const ProfileWindowConfig&) const = default;
};

struct DiagnosticsConfig {
    double window_r = 0.0;  // average-speed window; (0, 0) = full tabulated range
    double window_s = 0.0;
    double eps_rel = 0.05;       // almost-period epsilon as a fraction of mean f
    double scan_max_shift = 100.0;
    double scan_step = 0.05;
    double resample_step = 0.05;  // uniform h-resampling of the speed law

    bool operator==(const DiagnosticsConfig&) const = default;
};

struct OutputConfig {
    long series_stride = 20;  // row thinning for the speed series CSV

    bool operator==(const OutputConfig&) const = default;
};

struct OracleConfig {
    double a0 = 1.0;
    std::vector<double> mu_list{1.0};
    double tol = 1e-10;

    bool operator==(const OracleConfig&) const = default;
};

// Key=value configuration with section headers; see configs/ for examples.
struct ExperimentConfig {
    Medium medium{1.0};
    SteadyStateConfig steady{.L = 0.0, .dx = 0.0, .tol = 1e-8};  // 0 = sized automatically
    SolverConfig solver;
    std::optional<double> stop_t;
    std::optional<double> stop_h;
    LadderConfig ladder;
    ProfileWindowConfig profile;
    DiagnosticsConfig diag;
    OutputConfig output;
    OracleConfig oracle;

    static ExperimentConfig load(const std::string& path);
    static ExperimentConfig parse(const std::string& text, const std::string& origin = "<config>");
    std::string serialize() const;  // canonical form; parse(serialize()) == *this
    void save(const std::string& path) const;

    // Steady-state configuration with the domain sized to cover the planned
    // runs (deepest h0 and stop_h) plus a 10-unit margin, snapped to the grid.
    SteadyStateConfig sized_steady(double h_start, double h_stop) const;

    bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace semiwave

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "semiwave/free_boundary.hpp"
#include "semiwave/medium.hpp"
#include "semiwave/steady_state.hpp"

namespace semiwave {

// Semi-wave profile v(xi, tau): the moving-frame solution reparameterized by
// front position tau, so v(xi, tau) = u(xi + tau, t) with h(t) = tau.
struct Profile {
    std::vector<double> xi;               // [-L, 0]
    std::vector<double> tau;              // strictly increasing front positions
    std::vector<std::vector<double>> v;   // v[j][i] = v(xi[i], tau[j])
    Medium medium{1.0};
    double mu = 1.0;

    std::span<const double> slice(std::size_t j) const { return v[j]; }
    double dxi() const { return xi[1] - xi[0]; }
};

// Inverts tau = h(t) over the stored snapshots: brackets each target in the
// snapshot front positions and interpolates the frames linearly in t.
// Requires h strictly increasing across the bracketing snapshots.
Profile extract_profile(const Trajectory& traj, std::span<const double> tau_grid);

struct ResidualField {
    std::vector<double> xi, tau;          // trimmed interior coordinates
    std::vector<std::vector<double>> values;
    double inf_norm = 0.0;
};

// Residual of the pulled-back front equation
//   mu (-v_xi(0,tau)) (-v_xi + v_tau) = v_xixi + v (g(xi+tau) - v)
// with central differences on the trimmed interior. include_mu = false drops
// the mu factor from the left-hand side.
ResidualField veq_residual(const Profile& p, const Medium& m, double mu, bool include_mu = true);

// sup over tau of |v(xi, tau) - u*(xi + tau)| for each xi.
std::vector<double> tail_gap(const Profile& p, const SteadyState& steady);

struct MonotoneTimeReport {
    double min_increment = 0.0;  // min over pairs and x of u(x, t2) - u(x, t1), t1 < t2
    std::size_t pairs = 0;
};

// Lab-frame monotonicity in time: consecutive snapshots compared on
// x <= h(t1) by resampling the moving-frame data.
MonotoneTimeReport monotone_in_time_check(const Trajectory& traj);

struct AlignmentResult {
    double shift = 0.0;     // tau shift applied to the first profile
    double sup_diff = 0.0;  // inf-norm of the aligned difference over the overlap
};

// Minimizes the sup distance over integer tau-grid shifts within
// [-search_window, search_window]. Profiles must share xi and tau spacing.
AlignmentResult align_profiles(const Profile& a, const Profile& b, double search_window);

struct TauWindow {
    double tau_min = 0.0;
    double tau_max = 0.0;
    double dtau = 0.1;
    std::vector<double> grid() const;
};

struct LadderEntry {
    int n = 0;
    double h0 = 0.0;
    double sup_diff = 0.0;  // against the next rung (n) or the deepest run (h0)
};

struct SemiwaveReport {
    std::vector<LadderEntry> n_ladder;   // consecutive-n profile distances at the deepest h0
    std::vector<LadderEntry> h0_ladder;  // aligned distances between h0 runs at the finest n
    double max_n_monotonicity_violation = 0.0;
    bool construction_violated = false;  // decrease in n beyond tolerance
    Profile profile;                     // finest run (largest n, deepest h0)
};

// Runs the cutoff ladder: for each n at the deepest h0 checks the monotone
// construction and Cauchy decay, then checks h0-independence at the finest n.
SemiwaveReport build_semiwave(const Medium& m, std::shared_ptr<const SteadyState> steady,
                              const SolverConfig& cfg, std::span<const int> n_list,
                              std::span<const double> h0_list, const TauWindow& window,
                              int jobs = 1);

}  // namespace semiwave

#pragma once

#include <span>
#include <vector>

#include "semiwave/free_boundary.hpp"
#include "semiwave/profile.hpp"
#include "semiwave/steady_state.hpp"

namespace semiwave {

// Comparison functional rho = inf over xi < 0 of v1/v2, with the boundary
// value realized as the one-sided slope ratio at xi = 0 (both slices vanish
// there). Returns the smaller of the interior minimum and the slope ratio.
// Throws if v2 is nonpositive at an interior node.
double rho(std::span<const double> v1, std::span<const double> v2, double dx);

struct RhoScreening {
    double max_order_violation = 0.0;   // max of v1 - v2 (hypothesis v1 <= v2)
    double max_upper_violation = 0.0;   // max of v2 - u*(xi+tau), if a steady state is supplied
    double min_transport = 0.0;         // min of -(v2)_xi + (v2)_tau over the interior
    bool screened_upper = false;
};

struct RhoSeries {
    std::vector<double> tau;
    std::vector<double> value;
    double max_backward_step = 0.0;  // max of value[j] - value[j+1]
    RhoScreening screening;
};

// rho(tau) over the common tau grid, with the hypotheses of the comparison
// lemma screened numerically and reported (never fatal).
RhoSeries rho_series(const Profile& v1, const Profile& v2, const SteadyState* steady = nullptr);

// Tabulated instantaneous speed as a function of front position,
// piecewise linear in h.
class SpeedLaw {
public:
    SpeedLaw(std::vector<double> h, std::vector<double> f);

    double operator()(double pos) const;
    std::span<const double> positions() const { return h_; }
    std::span<const double> speeds() const { return f_; }
    double h_min() const { return h_.front(); }
    double h_max() const { return h_.back(); }

private:
    std::vector<double> h_, f_;
};

// Tabulates (h, h') over t >= transient_cutoff, deduplicating by front
// position; h' comes from the recorded step values, not re-differencing.
SpeedLaw speed_law(const Trajectory& traj, double transient_cutoff);

// |s - r| / (trapezoid of 1/f over [r, s]); exact for constant laws.
double average_speed(const SpeedLaw& law, double r, double s);

struct AlmostPeriodScan {
    std::vector<double> shifts;     // qualifying eps-almost periods, ascending
    std::vector<double> sup_diffs;  // sup |F(.+T) - F| for each qualifying shift
    double max_gap = 0.0;           // largest gap between consecutive qualifying shifts,
                                    // including the lead-in from zero
    double eps = 0.0;
    double step = 0.0;
};

// Bohr criterion on a sampled series: T qualifies when sup over the overlap
// of |F(. + T) - F| <= eps. The series is resampled uniformly at `step`
// (linear interpolation) and shifts are the grid multiples up to max_shift.
// Requires the window to span at least 4 max_shift.
AlmostPeriodScan almost_period_scan(std::span<const double> xs, std::span<const double> ys,
                                    double eps, double max_shift, double step);

// Same criterion for a vector-valued series (sup over components), e.g.
// profile slices as a function of tau.
AlmostPeriodScan almost_period_scan_multi(std::span<const double> xs,
                                          const std::vector<std::vector<double>>& ys, double eps,
                                          double max_shift, double step);

struct SpeedBand {
    double m = 0.0;
    double M = 0.0;
    bool violation = false;  // m <= 0 or no post-transient samples
};

SpeedBand speed_bounds(const Trajectory& traj, double transient_cutoff);

}  // namespace semiwave

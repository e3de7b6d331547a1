#include "semiwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace semiwave {

double rho(std::span<const double> v1, std::span<const double> v2, double dx) {
    const auto n = v1.size();
    if (n != v2.size() || n < 4) throw std::invalid_argument("rho: slice size mismatch");
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(v2[i] > 0.0))
            throw std::invalid_argument("rho: v2 nonpositive at interior node " + std::to_string(i));
        r = std::min(r, v1[i] / v2[i]);
    }
    const double s1 = (-4.0 * v1[n - 2] + v1[n - 3]) / (2.0 * dx);
    const double s2 = (-4.0 * v2[n - 2] + v2[n - 3]) / (2.0 * dx);
    if (s2 != 0.0) r = std::min(r, s1 / s2);
    return r;
}

RhoSeries rho_series(const Profile& p1, const Profile& p2, const SteadyState* steady) {
    if (p1.tau.size() != p2.tau.size() || p1.xi.size() != p2.xi.size())
        throw std::invalid_argument("rho_series: profiles use different grids");

    RhoSeries out;
    out.tau = p1.tau;
    out.value.reserve(p1.tau.size());

    const double dxi = p1.dxi();
    const auto nx = p1.xi.size();
    const auto nt = p1.tau.size();

    bool first_transport = true;
    for (std::size_t j = 0; j < nt; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            out.screening.max_order_violation =
                std::max(out.screening.max_order_violation, p1.v[j][i] - p2.v[j][i]);
            if (steady)
                out.screening.max_upper_violation =
                    std::max(out.screening.max_upper_violation,
                             p2.v[j][i] - steady->value_at(p1.xi[i] + p1.tau[j]));
        }
        if (j > 0 && j + 1 < nt) {
            const double dtau_c = p1.tau[j + 1] - p1.tau[j - 1];
            for (std::size_t i = 1; i + 1 < nx; ++i) {
                const double vxi = (p2.v[j][i + 1] - p2.v[j][i - 1]) / (2.0 * dxi);
                const double vtau = (p2.v[j + 1][i] - p2.v[j - 1][i]) / dtau_c;
                const double tr = -vxi + vtau;
                if (first_transport || tr < out.screening.min_transport) {
                    out.screening.min_transport = tr;
                    first_transport = false;
                }
            }
        }
        out.value.push_back(rho(p1.v[j], p2.v[j], dxi));
    }
    out.screening.screened_upper = steady != nullptr;

    for (std::size_t j = 0; j + 1 < out.value.size(); ++j)
        out.max_backward_step = std::max(out.max_backward_step, out.value[j] - out.value[j + 1]);
    return out;
}

SpeedLaw::SpeedLaw(std::vector<double> h, std::vector<double> f)
    : h_(std::move(h)), f_(std::move(f)) {
    if (h_.size() != f_.size() || h_.size() < 2)
        throw std::invalid_argument("SpeedLaw: need matching samples, at least two");
    for (std::size_t i = 0; i < h_.size(); ++i) {
        if (i > 0 && !(h_[i] > h_[i - 1]))
            throw std::invalid_argument("SpeedLaw: positions must be strictly increasing");
        if (!(f_[i] > 0.0)) throw std::invalid_argument("SpeedLaw: speeds must be positive");
    }
}

double SpeedLaw::operator()(double pos) const {
    if (pos <= h_.front()) return f_.front();
    if (pos >= h_.back()) return f_.back();
    const auto it = std::upper_bound(h_.begin(), h_.end(), pos);
    const auto i = static_cast<std::size_t>(it - h_.begin()) - 1;
    const double th = (pos - h_[i]) / (h_[i + 1] - h_[i]);
    return f_[i] + th * (f_[i + 1] - f_[i]);
}

SpeedLaw speed_law(const Trajectory& traj, double transient_cutoff) {
    std::vector<double> h, f;
    h.reserve(traj.t.size());
    f.reserve(traj.t.size());
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        if (traj.t[k] < transient_cutoff) continue;
        if (!h.empty() && !(traj.h[k] > h.back())) continue;  // dedupe by front position
        h.push_back(traj.h[k]);
        f.push_back(traj.hprime[k]);
    }
    if (h.size() < 2) throw std::invalid_argument("speed_law: empty post-transient window");
    return SpeedLaw(std::move(h), std::move(f));
}

double average_speed(const SpeedLaw& law, double r, double s) {
    if (!(s > r)) throw std::invalid_argument("average_speed: need s > r");
    if (r < law.h_min() - 1e-12 || s > law.h_max() + 1e-12)
        throw std::invalid_argument("average_speed: window [" + std::to_string(r) + ", " +
                                    std::to_string(s) + "] exceeds the tabulated range");
    const auto h = law.positions();
    const auto f = law.speeds();
    // trapezoid of 1/f over the tabulated nodes inside [r, s] plus the ends
    double integral = 0.0;
    double x_prev = r, y_prev = 1.0 / law(r);
    const auto begin = std::upper_bound(h.begin(), h.end(), r);
    for (auto it = begin; it != h.end() && *it < s; ++it) {
        const auto i = static_cast<std::size_t>(it - h.begin());
        integral += 0.5 * (y_prev + 1.0 / f[i]) * (*it - x_prev);
        x_prev = *it;
        y_prev = 1.0 / f[i];
    }
    integral += 0.5 * (y_prev + 1.0 / law(s)) * (s - x_prev);
    return (s - r) / integral;
}

namespace {

AlmostPeriodScan scan_uniform(const std::vector<std::vector<double>>& series, double eps,
                              double max_shift, double step) {
    AlmostPeriodScan out;
    out.eps = eps;
    out.step = step;
    const auto n = series.size();
    const auto kmax = static_cast<std::size_t>(std::floor(max_shift / step + 1e-9));

    double prev = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        double d = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) {
            const auto& a = series[i + k];
            const auto& b = series[i];
            for (std::size_t c = 0; c < a.size(); ++c)
                d = std::max(d, std::abs(a[c] - b[c]));
        }
        const double T = static_cast<double>(k) * step;
        if (d <= eps) {
            out.max_gap = std::max(out.max_gap, T - prev);
            prev = T;
            out.shifts.push_back(T);
            out.sup_diffs.push_back(d);
        }
    }
    out.max_gap = std::max(out.max_gap, static_cast<double>(kmax) * step - prev);
    return out;
}

std::vector<std::vector<double>> resample_uniform(std::span<const double> xs,
                                                  const std::vector<std::vector<double>>& ys,
                                                  double step, double max_shift) {
    if (xs.size() < 2) throw std::invalid_argument("almost_period_scan: series too short");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument("almost_period_scan: abscissae must be increasing");
    const double span_len = xs.back() - xs.front();
    if (span_len < 4.0 * max_shift)
        throw std::invalid_argument("almost_period_scan: window must span at least 4x max shift");

    const auto m = static_cast<std::size_t>(std::floor(span_len / step + 1e-9)) + 1;
    std::vector<std::vector<double>> out(m);
    std::size_t lo = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = xs.front() + static_cast<double>(i) * step;
        while (lo + 2 < xs.size() && xs[lo + 1] <= x) ++lo;
        const double th = std::clamp((x - xs[lo]) / (xs[lo + 1] - xs[lo]), 0.0, 1.0);
        const auto& a = ys[lo];
        const auto& b = ys[lo + 1];
        out[i].resize(a.size());
        for (std::size_t c = 0; c < a.size(); ++c) out[i][c] = a[c] + th * (b[c] - a[c]);
    }
    return out;
}

}  // namespace

AlmostPeriodScan almost_period_scan(std::span<const double> xs, std::span<const double> ys,
                                    double eps, double max_shift, double step) {
    if (xs.size() != ys.size()) throw std::invalid_argument("almost_period_scan: size mismatch");
    std::vector<std::vector<double>> cols(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) cols[i] = {ys[i]};
    return scan_uniform(resample_uniform(xs, cols, step, max_shift), eps, max_shift, step);
}

AlmostPeriodScan almost_period_scan_multi(std::span<const double> xs,
                                          const std::vector<std::vector<double>>& ys, double eps,
                                          double max_shift, double step) {
    if (xs.size() != ys.size()) throw std::invalid_argument("almost_period_scan: size mismatch");
    return scan_uniform(resample_uniform(xs, ys, step, max_shift), eps, max_shift, step);
}

SpeedBand speed_bounds(const Trajectory& traj, double transient_cutoff) {
    SpeedBand band;
    bool any = false;
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        if (traj.t[k] < transient_cutoff) continue;
        if (!any) {
            band.m = band.M = traj.hprime[k];
            any = true;
        } else {
            band.m = std::min(band.m, traj.hprime[k]);
            band.M = std::max(band.M, traj.hprime[k]);
        }
    }
    band.violation = !any || band.m <= 0.0;
    return band;
}

}  // namespace semiwave

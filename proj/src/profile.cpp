#include "semiwave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <future>
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

double sup_diff(const Profile& a, const Profile& b) {
    if (a.tau.size() != b.tau.size() || a.xi.size() != b.xi.size())
        throw std::invalid_argument("profile sup_diff: grids differ");
    double d = 0.0;
    for (std::size_t j = 0; j < a.tau.size(); ++j)
        for (std::size_t i = 0; i < a.xi.size(); ++i)
            d = std::max(d, std::abs(a.v[j][i] - b.v[j][i]));
    return d;
}

}  // namespace

std::vector<double> TauWindow::grid() const {
    if (!(dtau > 0.0) || !(tau_max > tau_min))
        throw std::invalid_argument("tau window: need tau_max > tau_min and dtau > 0");
    std::vector<double> g;
    const auto count = static_cast<long>(std::floor((tau_max - tau_min) / dtau + 1e-9)) + 1;
    g.reserve(count);
    for (long j = 0; j < count; ++j) g.push_back(tau_min + dtau * static_cast<double>(j));
    return g;
}

Profile extract_profile(const Trajectory& traj, std::span<const double> tau_grid) {
    const auto& snaps = traj.snapshots;
    if (snaps.size() < 2) throw std::invalid_argument("extract_profile: need at least 2 snapshots");

    Profile p;
    p.medium = traj.medium;
    p.mu = traj.config.mu;
    const double L = traj.config.L, dx = traj.config.dx;
    p.xi.resize(traj.config.grid_points());
    for (std::size_t i = 0; i < p.xi.size(); ++i)
        p.xi[i] = -L + dx * static_cast<double>(i);
    p.xi.back() = 0.0;

    p.tau.assign(tau_grid.begin(), tau_grid.end());
    p.v.reserve(p.tau.size());

    std::size_t lo = 0;
    for (double tau : p.tau) {
        if (tau < snaps.front().h || tau > snaps.back().h)
            throw std::invalid_argument("extract_profile: tau = " + std::to_string(tau) +
                                        " outside the recorded front range [" +
                                        std::to_string(snaps.front().h) + ", " +
                                        std::to_string(snaps.back().h) + "]");
        while (lo + 2 < snaps.size() && snaps[lo + 1].h <= tau) ++lo;
        const auto& A = snaps[lo];
        const auto& B = snaps[lo + 1];
        if (!(B.h > A.h))
            throw std::invalid_argument("extract_profile: front positions not strictly increasing "
                                        "around tau = " + std::to_string(tau));
        const double th = (tau - A.h) / (B.h - A.h);
        std::vector<double> row(A.w.size());
        for (std::size_t i = 0; i < row.size(); ++i)
            row[i] = A.w[i] + th * (B.w[i] - A.w[i]);
        row.back() = 0.0;
        p.v.push_back(std::move(row));
    }
    return p;
}

ResidualField veq_residual(const Profile& p, const Medium& m, double mu, bool include_mu) {
    const auto nt = p.tau.size();
    const auto nx = p.xi.size();
    if (nt < 3) throw std::invalid_argument("veq_residual: need at least 3 tau samples");
    if (nx < 4) throw std::invalid_argument("veq_residual: need at least 4 xi samples");

    const double dxi = p.dxi();
    ResidualField out;
    out.xi.assign(p.xi.begin() + 1, p.xi.end() - 1);
    out.tau.assign(p.tau.begin() + 1, p.tau.end() - 1);
    out.values.reserve(nt - 2);

    for (std::size_t j = 1; j + 1 < nt; ++j) {
        const double dtau_c = p.tau[j + 1] - p.tau[j - 1];
        const auto& v = p.v[j];
        const double vxi0 = (-4.0 * v[nx - 2] + v[nx - 3]) / (2.0 * dxi);
        const double front = (include_mu ? mu : 1.0) * (-vxi0);
        std::vector<double> row(nx - 2);
        for (std::size_t i = 1; i + 1 < nx; ++i) {
            const double vxi = (v[i + 1] - v[i - 1]) / (2.0 * dxi);
            const double vtau = (p.v[j + 1][i] - p.v[j - 1][i]) / dtau_c;
            const double vxx = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (dxi * dxi);
            const double g = m.eval(p.xi[i] + p.tau[j]);
            row[i - 1] = front * (-vxi + vtau) - vxx - v[i] * (g - v[i]);
            out.inf_norm = std::max(out.inf_norm, std::abs(row[i - 1]));
        }
        out.values.push_back(std::move(row));
    }
    return out;
}

std::vector<double> tail_gap(const Profile& p, const SteadyState& steady) {
    if (!(steady.medium() == p.medium))
        throw std::invalid_argument("tail_gap: profile and steady state use different media");
    std::vector<double> gap(p.xi.size(), 0.0);
    for (std::size_t j = 0; j < p.tau.size(); ++j)
        for (std::size_t i = 0; i < p.xi.size(); ++i)
            gap[i] = std::max(gap[i], std::abs(p.v[j][i] - steady.value_at(p.xi[i] + p.tau[j])));
    return gap;
}

MonotoneTimeReport monotone_in_time_check(const Trajectory& traj) {
    const auto& snaps = traj.snapshots;
    MonotoneTimeReport rep;
    if (snaps.size() < 2) return rep;
    const double L = traj.config.L, dx = traj.config.dx;
    bool first = true;
    for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
        const auto& A = snaps[k];
        const auto& B = snaps[k + 1];
        // compare on x <= h(t1) where both frames carry data
        const double x_hi = A.h;
        const double x_lo = std::max(A.h, B.h) - L;
        for (double x = x_hi; x >= x_lo; x -= dx) {
            const double ua = lerp_on_grid(A.w, L, dx, x - A.h);
            const double ub = lerp_on_grid(B.w, L, dx, x - B.h);
            const double inc = ub - ua;
            if (first || inc < rep.min_increment) rep.min_increment = inc;
            first = false;
        }
        ++rep.pairs;
    }
    return rep;
}

AlignmentResult align_profiles(const Profile& a, const Profile& b, double search_window) {
    if (a.xi.size() != b.xi.size())
        throw std::invalid_argument("align_profiles: xi grids differ");
    const double dtau = a.tau.size() > 1 ? a.tau[1] - a.tau[0] : 1.0;
    const double dtau_b = b.tau.size() > 1 ? b.tau[1] - b.tau[0] : 1.0;
    if (std::abs(dtau - dtau_b) > 1e-9 * dtau)
        throw std::invalid_argument("align_profiles: tau spacings differ");

    const long kmax = static_cast<long>(std::floor(search_window / dtau + 1e-9));
    AlignmentResult best;
    bool first = true;
    for (long k = -kmax; k <= kmax; ++k) {
        // compare a.v[j + k] against b.v[j] over the overlapping rows
        const long j_lo = std::max<long>(0, -k);
        const long j_hi = std::min<long>(static_cast<long>(b.tau.size()),
                                         static_cast<long>(a.tau.size()) - k);
        if (j_hi - j_lo < static_cast<long>(b.tau.size()) / 2) continue;  // demand a real overlap
        double d = 0.0;
        for (long j = j_lo; j < j_hi; ++j) {
            const auto& ra = a.v[static_cast<std::size_t>(j + k)];
            const auto& rb = b.v[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < ra.size(); ++i)
                d = std::max(d, std::abs(ra[i] - rb[i]));
        }
        if (first || d < best.sup_diff) {
            best.sup_diff = d;
            best.shift = static_cast<double>(k) * dtau;
            first = false;
        }
    }
    if (first) throw std::invalid_argument("align_profiles: no admissible overlap in the window");
    return best;
}

SemiwaveReport build_semiwave(const Medium& m, std::shared_ptr<const SteadyState> steady,
                              const SolverConfig& cfg, std::span<const int> n_list,
                              std::span<const double> h0_list, const TauWindow& window, int jobs) {
    if (n_list.empty() || h0_list.empty())
        throw std::invalid_argument("build_semiwave: n_list and h0_list must be nonempty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("build_semiwave: n_list must be increasing");
    for (std::size_t i = 1; i < h0_list.size(); ++i)
        if (h0_list[i] >= h0_list[i - 1])
            throw std::invalid_argument("build_semiwave: h0_list must be decreasing");

    const double h_deep = h0_list.back();
    const auto taus = window.grid();
    if (window.tau_min <= h0_list.front())
        throw std::invalid_argument("build_semiwave: tau window must start past the shallowest h0");

    SolverConfig run_cfg = cfg;
    if (run_cfg.snapshot_stride <= 0) run_cfg.snapshot_stride = 16;
    run_cfg.snap_h_min = window.tau_min - 1.0;
    run_cfg.snap_h_max = window.tau_max + 1.0;

    FreeBoundarySolver solver(m, steady, run_cfg);
    StopCondition stop;
    stop.h_end = window.tau_max + 0.5;

    struct Job {
        int n;
        double h0;
    };
    std::vector<Job> run_list;
    for (int n : n_list) run_list.push_back({n, h_deep});
    for (std::size_t i = 0; i + 1 < h0_list.size(); ++i)
        run_list.push_back({n_list.back(), h0_list[i]});

    std::vector<Profile> profiles(run_list.size());
    auto run_one = [&](std::size_t idx) {
        const auto& job = run_list[idx];
        Trajectory traj = solver.evolve(solver.init_cutoff(job.h0, job.n), stop);
        profiles[idx] = extract_profile(traj, taus);
    };
    if (jobs > 1) {
        std::vector<std::future<void>> fs;
        std::size_t next = 0;
        while (next < run_list.size()) {
            fs.clear();
            for (int j = 0; j < jobs && next < run_list.size(); ++j, ++next)
                fs.push_back(std::async(std::launch::async, run_one, next));
            for (auto& f : fs) f.get();
        }
    } else {
        for (std::size_t i = 0; i < run_list.size(); ++i) run_one(i);
    }

    SemiwaveReport rep;
    const double mono_tol = 2.0 * cfg.dx * m.bounds().upper;
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
        const Profile& lo = profiles[i];
        const Profile& hi = profiles[i + 1];
        double viol = 0.0;
        for (std::size_t j = 0; j < lo.tau.size(); ++j)
            for (std::size_t q = 0; q < lo.xi.size(); ++q)
                viol = std::max(viol, lo.v[j][q] - hi.v[j][q]);
        rep.max_n_monotonicity_violation = std::max(rep.max_n_monotonicity_violation, viol);
        rep.n_ladder.push_back({n_list[i], h_deep, sup_diff(lo, hi)});
    }
    rep.construction_violated = rep.max_n_monotonicity_violation > mono_tol;

    const Profile& finest = profiles[n_list.size() - 1];
    for (std::size_t i = 0; i + 1 < h0_list.size(); ++i) {
        const Profile& other = profiles[n_list.size() + i];
        auto aligned = align_profiles(other, finest, 2.0 * 3.141592653589793);
        rep.h0_ladder.push_back({n_list.back(), h0_list[i], aligned.sup_diff});
    }
    rep.profile = finest;
    return rep;
}

}  // namespace semiwave

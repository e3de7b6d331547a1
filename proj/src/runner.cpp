#include "semiwave/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <stdexcept>

#include "semiwave/csv.hpp"
#include "semiwave/diagnostics.hpp"
#include "semiwave/oracle.hpp"
#include "semiwave/profile.hpp"
#include "semiwave/state_io.hpp"

namespace semiwave {

namespace {

namespace fs = std::filesystem;

// key=value summary with named pass/fail flags; deterministic bytes
class Summary {
public:
    explicit Summary(std::string path) : path_(std::move(path)) {}

    void set(const std::string& key, double v) { lines_.push_back(key + "=" + fmt_g17(v)); }
    void set(const std::string& key, const std::string& v) { lines_.push_back(key + "=" + v); }
    void flag(const std::string& name, bool ok) {
        lines_.push_back("pass." + name + "=" + (ok ? "1" : "0"));
        all_ok_ = all_ok_ && ok;
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    }
    bool all_ok() const { return all_ok_; }

    ~Summary() {
        try {
            std::ofstream out(path_, std::ios::binary);
            for (const auto& l : lines_) out << l << '\n';
        } catch (...) {
        }
    }

private:
    std::string path_;
    std::vector<std::string> lines_;
    bool all_ok_ = true;
};

std::shared_ptr<const SteadyState> make_steady(const ExperimentConfig& cfg, double h_start,
                                               double h_stop) {
    return std::make_shared<SteadyState>(
        compute_steady_state(cfg.medium, cfg.sized_steady(h_start, h_stop)));
}

StopCondition stop_from(const ExperimentConfig& cfg) {
    StopCondition stop;
    stop.t_end = cfg.stop_t;
    stop.h_end = cfg.stop_h;
    if (!stop.t_end && !stop.h_end)
        throw std::invalid_argument("config: need stop_t or stop_h in section [solver]");
    return stop;
}

double planned_h_stop(const ExperimentConfig& cfg) {
    if (cfg.stop_h) return *cfg.stop_h;
    // time-bounded run: the settled front speed stays below 2 sqrt(sup g)
    const double cap = cfg.medium.bounds().upper;
    return cfg.ladder.h0 + 2.0 * std::sqrt(cap) * *cfg.stop_t + 10.0;
}

void write_steady_csv(const std::string& path, const SteadyState& st) {
    CsvFile csv(path);
    csv.comment("medium: " + st.medium().spec_string());
    csv.comment("L=" + fmt_g17(st.L()) + " dx=" + fmt_g17(st.dx()) + " tol=" + fmt_g17(st.tol()) +
                " residual=" + fmt_g17(st.residual_norm()) +
                " sandwich_gap=" + fmt_g17(st.sandwich_gap()));
    csv.raw("x,u_star");
    for (std::size_t i = 0; i < st.size(); ++i) csv.row({st.x_at(i), st.values()[i]});
}

void write_speed_csv(const std::string& path, const Trajectory& traj, long stride) {
    CsvFile csv(path);
    csv.comment("medium: " + traj.medium.spec_string());
    csv.comment("mu=" + fmt_g17(traj.config.mu) + " dx=" + fmt_g17(traj.config.dx) +
                " dt=" + fmt_g17(traj.config.dt) + " L=" + fmt_g17(traj.config.L) +
                " transient_cutoff=" + fmt_g17(traj.transient_cutoff));
    csv.raw("t,h,hprime");
    const std::size_t n = traj.t.size();
    for (std::size_t k = 0; k < n; ++k)
        if (k % static_cast<std::size_t>(std::max(1L, stride)) == 0 || k + 1 == n)
            csv.row({traj.t[k], traj.h[k], traj.hprime[k]});
}

void write_snapshots_csv(const std::string& path, const Trajectory& traj) {
    CsvFile csv(path);
    const double L = traj.config.L, dx = traj.config.dx;
    for (const auto& s : traj.snapshots) {
        csv.comment("t=" + fmt_g17(s.t) + " h=" + fmt_g17(s.h));
        csv.raw("xi,w");
        for (std::size_t i = 0; i < s.w.size(); ++i)
            csv.row({-L + dx * static_cast<double>(i), s.w[i]});
    }
}

void write_profile_csv(const std::string& path, const Profile& p) {
    CsvFile csv(path);
    csv.comment("medium: " + p.medium.spec_string());
    csv.comment("mu=" + fmt_g17(p.mu));
    for (std::size_t j = 0; j < p.tau.size(); ++j) {
        csv.comment("tau=" + fmt_g17(p.tau[j]));
        csv.raw("xi,v");
        for (std::size_t i = 0; i < p.xi.size(); ++i) csv.row({p.xi[i], p.v[j][i]});
    }
}

int run_steady(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    const double h_stop = cfg.stop_h ? *cfg.stop_h : cfg.ladder.h0 + cfg.solver.L;
    auto st = make_steady(cfg, std::min(cfg.ladder.h0, 0.0), h_stop);
    write_steady_csv(opt.out_dir + "/steady.csv", *st);

    const auto [lo, hi] = cfg.medium.bounds();
    double vmin = st->values()[0], vmax = vmin;
    for (double v : st->values()) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    sum.set("u_star_min", vmin);
    sum.set("u_star_max", vmax);
    sum.set("residual", st->residual_norm());
    sum.set("sandwich_gap", st->sandwich_gap());
    sum.flag("steady.bounds", vmin >= lo - st->tol() && vmax <= hi + st->tol());
    sum.flag("steady.residual", st->residual_norm() <= st->tol());
    sum.flag("steady.sandwich", st->sandwich_gap() <= 2.0 * st->tol());
    return sum.all_ok() ? 0 : 1;
}

int run_evolve(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    auto stop = stop_from(cfg);
    auto steady = make_steady(cfg, std::min(cfg.ladder.h0, 0.0), planned_h_stop(cfg));
    FreeBoundarySolver solver(cfg.medium, steady, cfg.solver);

    FrontState start;
    if (!opt.resume_path.empty()) {
        auto loaded = load_front_state(opt.resume_path);
        if (!(loaded.medium == cfg.medium))
            throw std::invalid_argument("resume: snapshot medium differs from the config");
        if (loaded.mu != cfg.solver.mu || loaded.L != cfg.solver.L || loaded.dx != cfg.solver.dx)
            throw std::invalid_argument("resume: snapshot mu/L/dx differ from the config");
        start = std::move(loaded.state);
    } else {
        start = solver.init_cutoff(cfg.ladder.h0, cfg.ladder.n);
    }

    Trajectory traj = solver.evolve(std::move(start), stop);
    write_speed_csv(opt.out_dir + "/speed.csv", traj, cfg.output.series_stride);
    if (!traj.snapshots.empty()) write_snapshots_csv(opt.out_dir + "/snapshots.csv", traj);
    save_front_state(opt.out_dir + "/state.txt", traj.final_state, cfg.medium, cfg.solver);

    sum.set("t_final", traj.final_state.t);
    sum.set("h_final", traj.final_state.h);
    sum.set("speed_min", traj.speed_min);
    sum.set("speed_max", traj.speed_max);
    sum.flag("evolve.speed_positive", !traj.speed_violation);
    return sum.all_ok() ? 0 : 1;
}

int run_semiwave(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    const double h_deep = cfg.ladder.h0_list.back();
    auto steady = make_steady(cfg, h_deep, cfg.profile.tau_max + 1.0);

    TauWindow window{cfg.profile.tau_min, cfg.profile.tau_max, cfg.profile.dtau};
    auto rep = build_semiwave(cfg.medium, steady, cfg.solver, cfg.ladder.n_list,
                              cfg.ladder.h0_list, window, opt.jobs);

    write_profile_csv(opt.out_dir + "/profile.csv", rep.profile);
    {
        CsvFile csv(opt.out_dir + "/convergence.csv");
        csv.raw("n,h0,sup_diff");
        for (const auto& e : rep.n_ladder)
            csv.row({static_cast<double>(e.n), e.h0, e.sup_diff});
        for (const auto& e : rep.h0_ladder)
            csv.row({static_cast<double>(e.n), e.h0, e.sup_diff});
    }

    sum.set("n_monotonicity_violation", rep.max_n_monotonicity_violation);
    bool cauchy = true;
    for (std::size_t i = 0; i + 1 < rep.n_ladder.size(); ++i)
        cauchy = cauchy && rep.n_ladder[i + 1].sup_diff <= rep.n_ladder[i].sup_diff;
    sum.flag("semiwave.monotone_in_n", !rep.construction_violated);
    sum.flag("semiwave.cauchy_in_n", cauchy);

    const auto res = veq_residual(rep.profile, cfg.medium, cfg.solver.mu, !opt.mu_literal_veq);
    sum.set("veq_residual", res.inf_norm);

    const auto gap = tail_gap(rep.profile, *steady);
    sum.set("tail_gap_at_-L", gap.front());
    sum.set("tail_gap_at_-L/2", gap[gap.size() / 2]);
    return sum.all_ok() ? 0 : 1;
}

int run_speed(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    auto stop = stop_from(cfg);
    auto steady = make_steady(cfg, std::min(cfg.ladder.h0, 0.0), planned_h_stop(cfg));
    FreeBoundarySolver solver(cfg.medium, steady, cfg.solver);
    Trajectory traj = solver.evolve(solver.init_cutoff(cfg.ladder.h0, cfg.ladder.n), stop);

    SpeedLaw law = speed_law(traj, cfg.solver.transient_cutoff);
    {
        CsvFile csv(opt.out_dir + "/speedlaw.csv");
        csv.comment("medium: " + cfg.medium.spec_string());
        csv.raw("h,f");
        const double step = cfg.diag.resample_step;
        for (double h = law.h_min(); h <= law.h_max(); h += step) csv.row({h, law(h)});
    }

    const double r = cfg.diag.window_r != 0.0 || cfg.diag.window_s != 0.0 ? cfg.diag.window_r
                                                                          : law.h_min();
    const double s = cfg.diag.window_r != 0.0 || cfg.diag.window_s != 0.0 ? cfg.diag.window_s
                                                                          : law.h_max();
    const double c = average_speed(law, r, s);
    sum.set("window_r", r);
    sum.set("window_s", s);
    sum.set("average_speed", c);
    const auto band = speed_bounds(traj, cfg.solver.transient_cutoff);
    sum.set("speed_min", band.m);
    sum.set("speed_max", band.M);
    sum.flag("speed.band_positive", !band.violation);
    return sum.all_ok() ? 0 : 1;
}

int run_rho(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    const double h_deep = cfg.ladder.h0_list.back();
    auto steady = make_steady(cfg, h_deep, cfg.profile.tau_max + 1.0);

    SolverConfig run_cfg = cfg.solver;
    if (run_cfg.snapshot_stride <= 0) run_cfg.snapshot_stride = 16;
    run_cfg.snap_h_min = cfg.profile.tau_min - 1.0;
    run_cfg.snap_h_max = cfg.profile.tau_max + 1.0;
    FreeBoundarySolver solver(cfg.medium, steady, run_cfg);
    StopCondition stop;
    stop.h_end = cfg.profile.tau_max + 0.5;

    TauWindow window{cfg.profile.tau_min, cfg.profile.tau_max, cfg.profile.dtau};
    const auto taus = window.grid();
    Trajectory lower = solver.evolve(
        solver.init_cutoff(cfg.ladder.h0_list.front(), cfg.ladder.n_list.front()), stop);
    Trajectory upper = solver.evolve(
        solver.init_cutoff(cfg.ladder.h0_list.back(), cfg.ladder.n_list.back()), stop);
    Profile p1 = extract_profile(lower, taus);
    Profile p2 = extract_profile(upper, taus);

    RhoSeries series = rho_series(p1, p2, steady.get());
    {
        CsvFile csv(opt.out_dir + "/rho.csv");
        csv.comment("medium: " + cfg.medium.spec_string());
        csv.raw("tau,rho");
        for (std::size_t j = 0; j < series.tau.size(); ++j)
            csv.row({series.tau[j], series.value[j]});
    }
    sum.set("rho_first", series.value.front());
    sum.set("rho_last", series.value.back());
    sum.set("max_backward_step", series.max_backward_step);
    sum.set("order_violation", series.screening.max_order_violation);
    sum.set("upper_violation", series.screening.max_upper_violation);
    sum.set("min_transport", series.screening.min_transport);
    sum.flag("rho.nondecreasing", series.max_backward_step <= 1e-3);
    return sum.all_ok() ? 0 : 1;
}

int run_almost_period(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    auto stop = stop_from(cfg);
    auto steady = make_steady(cfg, std::min(cfg.ladder.h0, 0.0), planned_h_stop(cfg));
    FreeBoundarySolver solver(cfg.medium, steady, cfg.solver);
    Trajectory traj = solver.evolve(solver.init_cutoff(cfg.ladder.h0, cfg.ladder.n), stop);

    SpeedLaw law = speed_law(traj, cfg.solver.transient_cutoff);
    double mean = average_speed(law, law.h_min(), law.h_max());
    const double eps = cfg.diag.eps_rel * mean;
    auto scan = almost_period_scan(law.positions(), law.speeds(), eps, cfg.diag.scan_max_shift,
                                   cfg.diag.scan_step);
    {
        CsvFile csv(opt.out_dir + "/almostperiods.csv");
        csv.comment("eps=" + fmt_g17(eps) + " max_shift=" + fmt_g17(cfg.diag.scan_max_shift));
        csv.raw("T,sup_diff");
        for (std::size_t i = 0; i < scan.shifts.size(); ++i)
            csv.row({scan.shifts[i], scan.sup_diffs[i]});
    }
    sum.set("mean_speed", mean);
    sum.set("eps", eps);
    sum.set("qualifying_shifts", static_cast<double>(scan.shifts.size()));
    sum.set("max_gap", scan.max_gap);
    sum.flag("almost_period.exists", !scan.shifts.empty());
    return sum.all_ok() ? 0 : 1;
}

int run_oracle(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    CsvFile csv(opt.out_dir + "/oracle.csv");
    csv.raw("mu,c");
    bool ok = true;
    ShootingResult last;
    for (double mu : cfg.oracle.mu_list) {
        last = solve_speed(cfg.oracle.a0, mu, cfg.oracle.tol);
        csv.row({mu, last.c});
        ok = ok && last.residual <= cfg.oracle.tol &&
             last.c < 2.0 * std::sqrt(cfg.oracle.a0);
    }
    {
        CsvFile prof(opt.out_dir + "/oracle_profile.csv");
        prof.comment("a0=" + fmt_g17(last.a0) + " mu=" + fmt_g17(last.mu) + " c=" + fmt_g17(last.c));
        prof.raw("xi,q");
        for (std::size_t i = 0; i < last.q.size(); ++i) {
            const double xi = i + 1 == last.q.size() ? 0.0
                                                     : last.q_xi0 + last.ode_dx * static_cast<double>(i);
            prof.row({xi, last.q[i]});
        }
    }
    sum.set("a0", cfg.oracle.a0);
    sum.set("c_last", last.c);
    sum.set("residual_last", last.residual);
    sum.flag("oracle.residual", ok);
    return sum.all_ok() ? 0 : 1;
}

int run_verify_all(const ExperimentConfig& cfg, const RunOptions& opt) {
    Summary sum(opt.out_dir + "/summary.txt");
    const auto [lo, hi] = cfg.medium.bounds();

    // medium invariants on sampled points
    {
        bool in_bounds = true, equivariant = true;
        for (int i = 0; i < 200; ++i) {
            const double x = -40.0 + 0.4 * i;
            const double v = cfg.medium.eval(x);
            in_bounds = in_bounds && v >= lo - 1e-12 && v <= hi + 1e-12;
            const double s = 0.37 * i;
            equivariant = equivariant &&
                          std::abs(cfg.medium.shifted(s).eval(x) - cfg.medium.eval(x + s)) <
                              1e-9 * std::max(1.0, hi);
        }
        sum.flag("medium.bounds", in_bounds);
        sum.flag("medium.shift_equivariance", equivariant);
    }

    // steady state invariants, including shift equivariance on the grid
    auto steady_cfg = cfg.sized_steady(std::min(cfg.ladder.h0, 0.0), planned_h_stop(cfg));
    auto steady = std::make_shared<SteadyState>(compute_steady_state(cfg.medium, steady_cfg));
    {
        double vmin = steady->values()[0], vmax = vmin;
        for (double v : steady->values()) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
        sum.flag("steady.bounds", vmin >= lo - steady->tol() && vmax <= hi + steady->tol());
        sum.flag("steady.residual", steady->residual_norm() <= steady->tol());
        sum.flag("steady.sandwich", steady->sandwich_gap() <= 2.0 * steady->tol());

        const double s_shift = 64.0 * steady->dx();
        auto shifted = compute_steady_state(cfg.medium.shifted(s_shift), steady_cfg);
        double dev = 0.0;
        for (std::size_t i = 0; i < steady->size(); ++i) {
            const double x = steady->x_at(i);
            if (x + s_shift > steady->L() - 15.0 || x < -steady->L() + 15.0) continue;
            dev = std::max(dev, std::abs(shifted.value_at(x) - steady->value_at(x + s_shift)));
        }
        sum.set("steady_equivariance_dev", dev);
        sum.flag("steady.shift_equivariance", dev <= 2.0 * steady->tol());
    }

    // free boundary run: positivity, pinned front value, positive speed band
    {
        auto stop = stop_from(cfg);
        FreeBoundarySolver solver(cfg.medium, steady, cfg.solver);
        Trajectory traj = solver.evolve(solver.init_cutoff(cfg.ladder.h0, cfg.ladder.n), stop);
        const auto& w = traj.final_state.w;
        const double cap = std::max(hi, *std::max_element(w.begin(), w.end()));
        bool in_range = w.back() == 0.0;
        for (double v : w) in_range = in_range && v >= 0.0 && v <= cap * (1.0 + 1e-12);
        sum.set("speed_min", traj.speed_min);
        sum.set("speed_max", traj.speed_max);
        sum.flag("front.range", in_range);
        sum.flag("front.speed_positive", !traj.speed_violation);
        sum.flag("front.monotone_h", std::is_sorted(traj.h.begin(), traj.h.end()));

        // ordering in the cutoff index
        SolverConfig oc = cfg.solver;
        oc.snapshot_stride = 0;
        FreeBoundarySolver osolver(cfg.medium, steady, oc);
        StopCondition ostop;
        ostop.t_end = std::min(cfg.solver.transient_cutoff + 5.0,
                               stop.t_end ? *stop.t_end : 1e300);
        Trajectory t1 = osolver.evolve(osolver.init_cutoff(cfg.ladder.h0, cfg.ladder.n_list.front()), ostop);
        Trajectory t2 = osolver.evolve(osolver.init_cutoff(cfg.ladder.h0, cfg.ladder.n_list.back()), ostop);
        auto rep = compare_ordered(t1, t2);
        sum.set("ordering_h_violation", rep.max_h_violation);
        sum.flag("front.ordered_in_n", rep.max_h_violation <= 2.0 * cfg.solver.dx);
    }

    // oracle sanity
    {
        auto res = solve_speed(cfg.oracle.a0, cfg.oracle.mu_list.back(), cfg.oracle.tol);
        sum.flag("oracle.residual", res.residual <= cfg.oracle.tol);
        sum.flag("oracle.speed_range", res.c > 0.0 && res.c < 2.0 * std::sqrt(cfg.oracle.a0));
    }
    return sum.all_ok() ? 0 : 1;
}

}  // namespace

int run_subcommand(const std::string& name, const ExperimentConfig& cfg, const RunOptions& opt) {
    fs::create_directories(opt.out_dir);
    if (name == "steady") return run_steady(cfg, opt);
    if (name == "evolve") return run_evolve(cfg, opt);
    if (name == "semiwave") return run_semiwave(cfg, opt);
    if (name == "speed") return run_speed(cfg, opt);
    if (name == "rho") return run_rho(cfg, opt);
    if (name == "almost-period") return run_almost_period(cfg, opt);
    if (name == "oracle") return run_oracle(cfg, opt);
    if (name == "verify-all") return run_verify_all(cfg, opt);
    throw std::invalid_argument("unknown subcommand '" + name + "'");
}

}  // namespace semiwave

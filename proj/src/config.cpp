#include "semiwave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "semiwave/csv.hpp"

namespace semiwave {

namespace {

struct ParsePos {
    const std::string& origin;
    int line;
};

[[noreturn]] void fail(const ParsePos& at, const std::string& msg) {
    throw std::invalid_argument(at.origin + ":" + std::to_string(at.line) + ": " + msg);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const ParsePos& at, const std::string& key) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        fail(at, "bad number for key '" + key + "': '" + v + "'");
    return out;
}

long parse_long(const std::string& v, const ParsePos& at, const std::string& key) {
    long out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        fail(at, "bad integer for key '" + key + "': '" + v + "'");
    return out;
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& v, const ParsePos& at, const std::string& key, F one) {
    std::vector<T> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(at, "empty element in list '" + key + "'");
        out.push_back(one(item, at, key));
    }
    if (out.empty()) fail(at, "empty list for key '" + key + "'");
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    bool have_medium = false, have_dx = false, have_dt = false, have_L = false, have_mu = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        ParsePos at{origin, lineno};
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(at, "unterminated section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "medium" && section != "steady" && section != "solver" &&
                section != "ladder" && section != "profile" && section != "diagnostics" &&
                section != "output" && section != "oracle")
                fail(at, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(at, "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty()) fail(at, "key '" + key + "' outside any section");

        if (section == "medium") {
            if (key == "spec") {
                try {
                    cfg.medium = Medium::parse(val);
                } catch (const std::exception& e) {
                    fail(at, e.what());
                }
                have_medium = true;
            } else
                fail(at, "unknown key '" + key + "' in section [medium]");
        } else if (section == "steady") {
            if (key == "L") cfg.steady.L = parse_double(val, at, key);
            else if (key == "dx") cfg.steady.dx = parse_double(val, at, key);
            else if (key == "tol") cfg.steady.tol = parse_double(val, at, key);
            else if (key == "dt") cfg.steady.dt = parse_double(val, at, key);
            else if (key == "max_steps") cfg.steady.max_steps = parse_long(val, at, key);
            else fail(at, "unknown key '" + key + "' in section [steady]");
        } else if (section == "solver") {
            if (key == "dx") { cfg.solver.dx = parse_double(val, at, key); have_dx = true; }
            else if (key == "dt") { cfg.solver.dt = parse_double(val, at, key); have_dt = true; }
            else if (key == "L") { cfg.solver.L = parse_double(val, at, key); have_L = true; }
            else if (key == "mu") { cfg.solver.mu = parse_double(val, at, key); have_mu = true; }
            else if (key == "left_bc") {
                if (val == "pin") cfg.solver.left_bc = LeftBc::PinToSteadyState;
                else if (val == "zero-slope") cfg.solver.left_bc = LeftBc::ZeroSlope;
                else fail(at, "left_bc must be 'pin' or 'zero-slope', got '" + val + "'");
            } else if (key == "flux_order") cfg.solver.flux_order = static_cast<int>(parse_long(val, at, key));
            else if (key == "transient_cutoff") cfg.solver.transient_cutoff = parse_double(val, at, key);
            else if (key == "snapshot_stride") cfg.solver.snapshot_stride = parse_long(val, at, key);
            else if (key == "snap_h_min") cfg.solver.snap_h_min = parse_double(val, at, key);
            else if (key == "snap_h_max") cfg.solver.snap_h_max = parse_double(val, at, key);
            else if (key == "stop_t") cfg.stop_t = parse_double(val, at, key);
            else if (key == "stop_h") cfg.stop_h = parse_double(val, at, key);
            else fail(at, "unknown key '" + key + "' in section [solver]");
        } else if (section == "ladder") {
            if (key == "n_list")
                cfg.ladder.n_list = parse_list<int>(val, at, key, [](const std::string& s, const ParsePos& p, const std::string& k) {
                    return static_cast<int>(parse_long(s, p, k));
                });
            else if (key == "h0_list")
                cfg.ladder.h0_list = parse_list<double>(val, at, key, parse_double);
            else if (key == "n") cfg.ladder.n = static_cast<int>(parse_long(val, at, key));
            else if (key == "h0") cfg.ladder.h0 = parse_double(val, at, key);
            else fail(at, "unknown key '" + key + "' in section [ladder]");
        } else if (section == "profile") {
            if (key == "tau_min") cfg.profile.tau_min = parse_double(val, at, key);
            else if (key == "tau_max") cfg.profile.tau_max = parse_double(val, at, key);
            else if (key == "dtau") cfg.profile.dtau = parse_double(val, at, key);
            else fail(at, "unknown key '" + key + "' in section [profile]");
        } else if (section == "diagnostics") {
            if (key == "window_r") cfg.diag.window_r = parse_double(val, at, key);
            else if (key == "window_s") cfg.diag.window_s = parse_double(val, at, key);
            else if (key == "eps_rel") cfg.diag.eps_rel = parse_double(val, at, key);
            else if (key == "scan_max_shift") cfg.diag.scan_max_shift = parse_double(val, at, key);
            else if (key == "scan_step") cfg.diag.scan_step = parse_double(val, at, key);
            else if (key == "resample_step") cfg.diag.resample_step = parse_double(val, at, key);
            else fail(at, "unknown key '" + key + "' in section [diagnostics]");
        } else if (section == "output") {
            if (key == "series_stride") cfg.output.series_stride = parse_long(val, at, key);
            else fail(at, "unknown key '" + key + "' in section [output]");
        } else if (section == "oracle") {
            if (key == "a0") cfg.oracle.a0 = parse_double(val, at, key);
            else if (key == "mu_list") cfg.oracle.mu_list = parse_list<double>(val, at, key, parse_double);
            else if (key == "tol") cfg.oracle.tol = parse_double(val, at, key);
            else fail(at, "unknown key '" + key + "' in section [oracle]");
        }
    }

    ParsePos end{origin, lineno};
    if (!have_medium) fail(end, "missing required key 'spec' in section [medium]");
    if (!have_dx) fail(end, "missing required key 'dx' in section [solver]");
    if (!have_dt) fail(end, "missing required key 'dt' in section [solver]");
    if (!have_L) fail(end, "missing required key 'L' in section [solver]");
    if (!have_mu) fail(end, "missing required key 'mu' in section [solver]");
    cfg.solver.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream o;
    o << "[medium]\n";
    o << "spec = " << medium.spec_string() << "\n\n";

    o << "[steady]\n";
    o << "L = " << fmt_g17(steady.L) << "\n";
    o << "dx = " << fmt_g17(steady.dx) << "\n";
    o << "tol = " << fmt_g17(steady.tol) << "\n";
    o << "dt = " << fmt_g17(steady.dt) << "\n";
    o << "max_steps = " << steady.max_steps << "\n\n";

    o << "[solver]\n";
    o << "dx = " << fmt_g17(solver.dx) << "\n";
    o << "dt = " << fmt_g17(solver.dt) << "\n";
    o << "L = " << fmt_g17(solver.L) << "\n";
    o << "mu = " << fmt_g17(solver.mu) << "\n";
    o << "left_bc = " << (solver.left_bc == LeftBc::PinToSteadyState ? "pin" : "zero-slope") << "\n";
    o << "flux_order = " << solver.flux_order << "\n";
    o << "transient_cutoff = " << fmt_g17(solver.transient_cutoff) << "\n";
    o << "snapshot_stride = " << solver.snapshot_stride << "\n";
    if (std::isfinite(solver.snap_h_min)) o << "snap_h_min = " << fmt_g17(solver.snap_h_min) << "\n";
    if (std::isfinite(solver.snap_h_max)) o << "snap_h_max = " << fmt_g17(solver.snap_h_max) << "\n";
    if (stop_t) o << "stop_t = " << fmt_g17(*stop_t) << "\n";
    if (stop_h) o << "stop_h = " << fmt_g17(*stop_h) << "\n";
    o << "\n[ladder]\n";
    o << "n_list = ";
    for (std::size_t i = 0; i < ladder.n_list.size(); ++i)
        o << (i ? "," : "") << ladder.n_list[i];
    o << "\nh0_list = ";
    for (std::size_t i = 0; i < ladder.h0_list.size(); ++i)
        o << (i ? "," : "") << fmt_g17(ladder.h0_list[i]);
    o << "\nn = " << ladder.n << "\n";
    o << "h0 = " << fmt_g17(ladder.h0) << "\n\n";

    o << "[profile]\n";
    o << "tau_min = " << fmt_g17(profile.tau_min) << "\n";
    o << "tau_max = " << fmt_g17(profile.tau_max) << "\n";
    o << "dtau = " << fmt_g17(profile.dtau) << "\n\n";

    o << "[diagnostics]\n";
    o << "window_r = " << fmt_g17(diag.window_r) << "\n";
    o << "window_s = " << fmt_g17(diag.window_s) << "\n";
    o << "eps_rel = " << fmt_g17(diag.eps_rel) << "\n";
    o << "scan_max_shift = " << fmt_g17(diag.scan_max_shift) << "\n";
    o << "scan_step = " << fmt_g17(diag.scan_step) << "\n";
    o << "resample_step = " << fmt_g17(diag.resample_step) << "\n\n";

    o << "[output]\n";
    o << "series_stride = " << output.series_stride << "\n\n";

    o << "[oracle]\n";
    o << "a0 = " << fmt_g17(oracle.a0) << "\n";
    o << "mu_list = ";
    for (std::size_t i = 0; i < oracle.mu_list.size(); ++i)
        o << (i ? "," : "") << fmt_g17(oracle.mu_list[i]);
    o << "\ntol = " << fmt_g17(oracle.tol) << "\n";
    return o.str();
}

void ExperimentConfig::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << serialize();
}

SteadyStateConfig ExperimentConfig::sized_steady(double h_start, double h_stop) const {
    SteadyStateConfig out = steady;
    if (out.dx <= 0.0) out.dx = solver.dx;
    if (out.L <= 0.0) {
        const double need = std::max(solver.L - h_start, std::abs(h_stop)) + 10.0;
        out.L = std::ceil(need / out.dx - 1e-9) * out.dx;
    }
    return out;
}

}  // namespace semiwave

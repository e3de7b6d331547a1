#include "semiwave/state_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "semiwave/csv.hpp"

namespace semiwave {

namespace {

constexpr const char* kVersionLine = "# semiwave-state v1";

double to_double(const std::string& s, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw std::runtime_error(std::string("state file: bad number for ") + what + ": '" + s + "'");
    return v;
}

std::string expect_kv(std::istream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("state file: truncated before key '" + key + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.substr(0, eq) != key)
        throw std::runtime_error("state file: expected key '" + key + "', got '" + line + "'");
    return line.substr(eq + 1);
}

}  // namespace

void save_front_state(const std::string& path, const FrontState& state, const Medium& medium,
                      const SolverConfig& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << kVersionLine << '\n';
    out << "medium=" << medium.spec_string() << '\n';
    out << "mu=" << fmt_g17(cfg.mu) << '\n';
    out << "L=" << fmt_g17(cfg.L) << '\n';
    out << "dx=" << fmt_g17(cfg.dx) << '\n';
    out << "t=" << fmt_g17(state.t) << '\n';
    out << "h=" << fmt_g17(state.h) << '\n';
    out << "n=" << state.w.size() << '\n';
    for (double v : state.w) out << "w=" << fmt_g17(v) << '\n';
}

LoadedState load_front_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("state file: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kVersionLine)
        throw std::runtime_error("state file: unsupported version line '" + line + "'");

    LoadedState out;
    out.medium = Medium::parse(expect_kv(in, "medium"));
    out.mu = to_double(expect_kv(in, "mu"), "mu");
    out.L = to_double(expect_kv(in, "L"), "L");
    out.dx = to_double(expect_kv(in, "dx"), "dx");
    out.state.t = to_double(expect_kv(in, "t"), "t");
    out.state.h = to_double(expect_kv(in, "h"), "h");
    const double n_raw = to_double(expect_kv(in, "n"), "n");
    const auto n = static_cast<std::size_t>(n_raw);
    if (n < 3 || n_raw != static_cast<double>(n))
        throw std::runtime_error("state file: bad sample count");
    out.state.w.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.state.w.push_back(to_double(expect_kv(in, "w"), "w"));
    return out;
}

}  // namespace semiwave

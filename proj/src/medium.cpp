#include "semiwave/medium.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace semiwave {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view token, std::string_view what) {
    token = trim(token);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::invalid_argument("medium spec: bad number for " + std::string(what) + ": '" +
                                    std::string(token) + "'");
    return value;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Medium::Medium(double base, std::vector<Mode> modes, double shift)
    : base_(base), modes_(std::move(modes)), shift_(shift) {
    double amp_sum = 0.0;
    for (const auto& m : modes_) {
        if (m.amplitude < 0.0)
            throw std::invalid_argument("medium: mode amplitude must be >= 0");
        if (m.frequency <= 0.0)
            throw std::invalid_argument("medium: mode frequency must be > 0");
        amp_sum += m.amplitude;
    }
    if (!(base_ - amp_sum > 0.0))
        throw std::invalid_argument("medium: base - sum of amplitudes = " +
                                    fmt17(base_ - amp_sum) + " must be > 0");
}

double Medium::eval(double x) const {
    double v = base_;
    for (const auto& m : modes_)
        v += m.amplitude * std::cos(m.frequency * (x + shift_) + m.phase);
    return v;
}

Medium Medium::shifted(double s) const {
    return Medium(base_, modes_, shift_ + s);
}

Medium::Bounds Medium::bounds() const {
    double amp_sum = 0.0;
    for (const auto& m : modes_) amp_sum += m.amplitude;
    return {base_ - amp_sum, base_ + amp_sum};
}

Medium Medium::parse(std::string_view spec) {
    double base = 0.0;
    bool have_base = false;
    double shift = 0.0;
    std::vector<Mode> modes;

    std::string_view rest = spec;
    while (!rest.empty()) {
        auto semi = rest.find(';');
        std::string_view item = trim(semi == std::string_view::npos ? rest : rest.substr(0, semi));
        rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        if (item.empty()) continue;

        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("medium spec: expected key=value, got '" + std::string(item) + "'");
        std::string_view key = trim(item.substr(0, eq));
        std::string_view val = trim(item.substr(eq + 1));

        if (key == "base") {
            base = parse_number(val, "base");
            have_base = true;
        } else if (key == "shift") {
            shift = parse_number(val, "shift");
        } else if (key == "mode") {
            auto c1 = val.find(',');
            auto c2 = c1 == std::string_view::npos ? std::string_view::npos : val.find(',', c1 + 1);
            if (c1 == std::string_view::npos || c2 == std::string_view::npos)
                throw std::invalid_argument("medium spec: mode needs amp,freq,phase: '" +
                                            std::string(val) + "'");
            modes.push_back({parse_number(val.substr(0, c1), "mode amplitude"),
                             parse_number(val.substr(c1 + 1, c2 - c1 - 1), "mode frequency"),
                             parse_number(val.substr(c2 + 1), "mode phase")});
        } else {
            throw std::invalid_argument("medium spec: unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_base) throw std::invalid_argument("medium spec: missing key 'base'");
    return Medium(base, std::move(modes), shift);
}

std::string Medium::spec_string() const {
    std::string out = "base=" + fmt17(base_);
    for (const auto& m : modes_)
        out += "; mode=" + fmt17(m.amplitude) + "," + fmt17(m.frequency) + "," + fmt17(m.phase);
    out += "; shift=" + fmt17(shift_);
    return out;
}

MediumGridSampler::MediumGridSampler(const Medium& m, std::span<const double> grid)
    : base_(m.base()), shift_(m.shift()), modes_(m.modes()) {
    cos_tab_.resize(modes_.size());
    sin_tab_.resize(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        cos_tab_[k].resize(grid.size());
        sin_tab_[k].resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            cos_tab_[k][i] = std::cos(modes_[k].frequency * grid[i]);
            sin_tab_[k][i] = std::sin(modes_[k].frequency * grid[i]);
        }
    }
}

void MediumGridSampler::sample(double offset, std::span<double> out) const {
    for (double& v : out) v = base_;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        const double theta = modes_[k].frequency * (offset + shift_) + modes_[k].phase;
        const double ac = modes_[k].amplitude * std::cos(theta);
        const double as = modes_[k].amplitude * std::sin(theta);
        const double* ct = cos_tab_[k].data();
        const double* st = sin_tab_[k].data();
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += ac * ct[i] - as * st[i];
    }
}

}  // namespace semiwave

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semiwave {

// One cosine component of a quasi-periodic coefficient.
struct Mode {
    double amplitude = 0.0;  // >= 0
    double frequency = 0.0;  // > 0, rad per unit length
    double phase = 0.0;      // rad

    bool operator==(const Mode&) const = default;
};

// Reaction coefficient a(x) = base + sum_k A_k cos(w_k (x + shift) + p_k).
// Requires base - sum_k A_k > 0, so inf a > 0. Immutable value type.
class Medium {
public:
    explicit Medium(double base, std::vector<Mode> modes = {}, double shift = 0.0);

    double base() const { return base_; }
    double shift() const { return shift_; }
    const std::vector<Mode>& modes() const { return modes_; }

    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    // The hull translate a(. + s); *this is unchanged.
    Medium shifted(double s) const;

    struct Bounds {
        double lower;  // base - sum of amplitudes, > 0
        double upper;  // base + sum of amplitudes
    };
    Bounds bounds() const;

    // Textual form used in config files and CSV metadata:
    //   base=<f>; mode=<amp>,<freq>,<phase>; ...; shift=<f>
    static Medium parse(std::string_view spec);
    std::string spec_string() const;

    bool operator==(const Medium&) const = default;

private:
    double base_;
    std::vector<Mode> modes_;
    double shift_;
};

// Evaluates a medium on a fixed grid for a varying offset using per-mode
// phase rotation, so the time-stepping loop pays two trig calls per mode
// per step instead of one per node.
class MediumGridSampler {
public:
    MediumGridSampler(const Medium& m, std::span<const double> grid);

    // out[i] = m(grid[i] + offset)
    void sample(double offset, std::span<double> out) const;

private:
    double base_;
    double shift_;
    std::vector<Mode> modes_;
    std::vector<std::vector<double>> cos_tab_;
    std::vector<std::vector<double>> sin_tab_;
};

}  // namespace semiwave

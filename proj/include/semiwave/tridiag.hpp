#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace semiwave {

// Thomas algorithm with the elimination coefficients computed once; the
// implicit diffusion matrix is fixed for a whole run, so each step is a
// forward/backward sweep only.
class TridiagFactor {
public:
    TridiagFactor() = default;

    // Row i: sub[i] x_{i-1} + diag[i] x_i + sup[i] x_{i+1} = rhs_i
    // (sub[0] and sup[n-1] are ignored).
    TridiagFactor(std::span<const double> sub, std::span<const double> diag,
                  std::span<const double> sup)
        : sub_(sub.begin(), sub.end()), cp_(diag.size()), inv_d_(diag.size()) {
        const std::size_t n = diag.size();
        if (sub.size() != n || sup.size() != n || n < 2)
            throw std::invalid_argument("TridiagFactor: band size mismatch");
        double d = diag[0];
        inv_d_[0] = 1.0 / d;
        cp_[0] = sup[0] * inv_d_[0];
        for (std::size_t i = 1; i < n; ++i) {
            d = diag[i] - sub[i] * cp_[i - 1];
            if (d == 0.0) throw std::runtime_error("TridiagFactor: singular pivot");
            inv_d_[i] = 1.0 / d;
            cp_[i] = sup[i] * inv_d_[i];
        }
    }

    std::size_t size() const { return cp_.size(); }

    // x may alias rhs
    void solve(std::span<const double> rhs, std::span<double> x) const {
        const std::size_t n = cp_.size();
        x[0] = rhs[0] * inv_d_[0];
        for (std::size_t i = 1; i < n; ++i)
            x[i] = (rhs[i] - sub_[i] * x[i - 1]) * inv_d_[i];
        for (std::size_t i = n - 1; i-- > 0;)
            x[i] -= cp_[i] * x[i + 1];
    }

private:
    std::vector<double> sub_, cp_, inv_d_;
};

}  // namespace semiwave

#pragma once

#include <string>

#include "semiwave/free_boundary.hpp"
#include "semiwave/medium.hpp"

namespace semiwave {

// Versioned full-precision text snapshot of a moving-frame state. Reading a
// snapshot restores the doubles bit-exactly, so a resumed run follows the
// same arithmetic path as an uninterrupted one.
void save_front_state(const std::string& path, const FrontState& state, const Medium& medium,
                      const SolverConfig& cfg);

struct LoadedState {
    FrontState state;
    Medium medium{1.0};
    double mu = 0.0;
    double L = 0.0;
    double dx = 0.0;
};

// Throws on version mismatch, missing fields, or truncation; validates the
// sample count against the stored grid.
LoadedState load_front_state(const std::string& path);

}  // namespace semiwave

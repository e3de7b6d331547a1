#pragma once

#include <string>

#include "semiwave/config.hpp"

namespace semiwave {

struct RunOptions {
    std::string out_dir = ".";
    int jobs = 1;
    std::string resume_path;     // evolve: continue from a saved state
    bool mu_literal_veq = false; // drop the mu factor in the pull-back residual
};

// Subcommands: steady, evolve, semiwave, speed, rho, almost-period, oracle,
// verify-all. Each writes its CSV artifacts plus summary.txt (key=value
// lines with pass/fail flags) into out_dir. Returns a process exit status.
int run_subcommand(const std::string& name, const ExperimentConfig& cfg, const RunOptions& opt);

}  // namespace semiwave

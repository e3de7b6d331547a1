#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "semiwave/config.hpp"
#include "semiwave/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Free-boundary reaction-diffusion front laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    semiwave::RunOptions opt;
    if (const char* env = std::getenv("SEMIWAVE_OUT")) opt.out_dir = env;

    const char* names[] = {"steady",        "evolve", "semiwave", "speed",
                           "almost-period", "rho",    "oracle",   "verify-all"};
    const char* descriptions[] = {
        "compute the positive steady state and export it",
        "time-step the free boundary problem from cutoff data",
        "run the cutoff ladder and extract the front profile",
        "tabulate the speed law f(h) and average speeds",
        "scan the speed law for Bohr almost periods",
        "compare two ordered runs through the rho functional",
        "solve the constant-medium shooting problem for c(mu)",
        "run every module invariant on the configured medium"};
    for (std::size_t i = 0; i < std::size(names); ++i) {
        auto* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "experiment configuration file")->required();
        sub->add_option("--out", opt.out_dir, "output directory (default: SEMIWAVE_OUT or .)");
        sub->add_option("--jobs", opt.jobs, "parallel ladder runs")->check(CLI::PositiveNumber);
        sub->add_flag("--mu-literal-veq", opt.mu_literal_veq,
                      "drop the mu factor in the pull-back residual");
        if (std::string(names[i]) == "evolve")
            sub->add_option("--resume", opt.resume_path, "continue from a saved state file");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = semiwave::ExperimentConfig::load(config_path);
        const std::string sub = app.get_subcommands().front()->get_name();
        return semiwave::run_subcommand(sub, cfg, opt);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

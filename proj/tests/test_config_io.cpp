#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "semiwave/config.hpp"
#include "semiwave/csv.hpp"
#include "semiwave/runner.hpp"
#include "semiwave/state_io.hpp"
#include "test_helpers.hpp"

using namespace semiwave;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.medium = quasi_medium();
    cfg.solver.dx = 0.05;
    cfg.solver.dt = 1e-3;
    cfg.solver.L = 20.0;
    cfg.solver.mu = 1.0;
    cfg.solver.transient_cutoff = 1.0;
    cfg.solver.snapshot_stride = 200;
    cfg.stop_t = 4.0;
    cfg.ladder.n = 2;
    cfg.ladder.h0 = 0.0;
    return cfg;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "semiwave_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("config_io") {

TEST_CASE("config round-trips through its text form") {
    ExperimentConfig cfg = tiny_config();
    cfg.ladder.n_list = {1, 3, 9};
    cfg.ladder.h0_list = {-5.0, -25.0};
    cfg.profile = {1.0, 9.0, 0.125};
    cfg.diag.eps_rel = 0.04;
    auto back = ExperimentConfig::parse(cfg.serialize());
    CHECK(back == cfg);

    SUBCASE("including optional stop keys") {
        cfg.stop_t.reset();
        cfg.stop_h = 37.5;
        CHECK(ExperimentConfig::parse(cfg.serialize()) == cfg);
    }
}

TEST_CASE("parse errors carry line numbers and key names") {
    const std::string missing_mu =
        "[medium]\nspec = base=1\n[solver]\ndx = 0.05\ndt = 1e-3\nL = 20\n";
    CHECK_THROWS_WITH_AS(ExperimentConfig::parse(missing_mu, "test.cfg"),
                         doctest::Contains("mu"), std::invalid_argument);

    const std::string unknown =
        "[medium]\nspec = base=1\n[solver]\ndx = 0.05\ndt = 1e-3\nL = 20\nmu = 1\nwhat = 3\n";
    CHECK_THROWS_WITH_AS(ExperimentConfig::parse(unknown, "test.cfg"),
                         doctest::Contains("test.cfg:7"), std::invalid_argument);

    const std::string bad_number =
        "[medium]\nspec = base=1\n[solver]\ndx = zero\ndt = 1e-3\nL = 20\nmu = 1\n";
    CHECK_THROWS_WITH_AS(ExperimentConfig::parse(bad_number, "test.cfg"),
                         doctest::Contains("dx"), std::invalid_argument);
}

TEST_CASE("state snapshots round-trip byte for byte") {
    auto dir = fresh_dir("state_io");
    FrontState s;
    s.t = 1.2344999999999999;
    s.h = 3.25;
    s.w = {0.5, 0.25, 0.125, 0.0625, 0.0};
    SolverConfig cfg = tiny_config().solver;

    const auto p1 = (dir / "a.txt").string();
    const auto p2 = (dir / "b.txt").string();
    save_front_state(p1, s, quasi_medium(), cfg);
    auto loaded = load_front_state(p1);
    CHECK(loaded.state.t == s.t);
    CHECK(loaded.state.h == s.h);
    CHECK(loaded.state.w == s.w);
    CHECK(loaded.medium == quasi_medium());
    save_front_state(p2, loaded.state, loaded.medium, cfg);
    CHECK(read_file(p1) == read_file(p2));
}

TEST_CASE("truncated state files fail cleanly") {
    auto dir = fresh_dir("state_trunc");
    FrontState s;
    s.w = {0.5, 0.25, 0.0};
    const auto path = (dir / "s.txt").string();
    save_front_state(path, s, constant_medium(), tiny_config().solver);
    auto text = read_file(path);
    std::ofstream(path, std::ios::binary) << text.substr(0, text.size() - 10);
    CHECK_THROWS_WITH_AS(load_front_state(path), doctest::Contains("truncated"),
                         std::runtime_error);

    std::ofstream(path, std::ios::binary) << "# other format\n";
    CHECK_THROWS_AS(load_front_state(path), std::runtime_error);
}

TEST_CASE("identical configs produce identical artifact bytes") {
    auto cfg = tiny_config();
    auto d1 = fresh_dir("det1");
    auto d2 = fresh_dir("det2");
    REQUIRE(run_subcommand("evolve", cfg, {.out_dir = d1.string()}) == 0);
    REQUIRE(run_subcommand("evolve", cfg, {.out_dir = d2.string()}) == 0);
    for (const char* name : {"speed.csv", "snapshots.csv", "state.txt", "summary.txt"})
        CHECK(read_file((d1 / name).string()) == read_file((d2 / name).string()));
}

TEST_CASE("a resumed run reproduces the uninterrupted one exactly") {
    auto cfg = tiny_config();
    auto d_full = fresh_dir("resume_full");
    auto d_head = fresh_dir("resume_head");
    auto d_tail = fresh_dir("resume_tail");

    auto head_cfg = cfg;
    head_cfg.stop_t = 2.0;
    REQUIRE(run_subcommand("evolve", head_cfg, {.out_dir = d_head.string()}) == 0);
    REQUIRE(run_subcommand("evolve", cfg, {.out_dir = d_full.string()}) == 0);
    RunOptions tail_opt{.out_dir = d_tail.string()};
    tail_opt.resume_path = (d_head / "state.txt").string();
    REQUIRE(run_subcommand("evolve", cfg, tail_opt) == 0);

    auto full = load_front_state((d_full / "state.txt").string());
    auto tail = load_front_state((d_tail / "state.txt").string());
    CHECK(full.state.t == tail.state.t);
    CHECK(full.state.h == tail.state.h);
    CHECK(full.state.w == tail.state.w);
}

TEST_CASE("oracle subcommand writes the speed table") {
    ExperimentConfig cfg = tiny_config();
    cfg.oracle.mu_list = {0.5, 1.0};
    auto dir = fresh_dir("oracle_cmd");
    REQUIRE(run_subcommand("oracle", cfg, {.out_dir = dir.string()}) == 0);
    auto table = read_file((dir / "oracle.csv").string());
    CHECK(table.find("mu,c") != std::string::npos);
    CHECK(read_file((dir / "summary.txt").string()).find("pass.oracle.residual=1") !=
          std::string::npos);
}

TEST_CASE("unknown subcommand is rejected") {
    CHECK_THROWS_AS(run_subcommand("frobnicate", tiny_config(), {}), std::invalid_argument);
}

}  // TEST_SUITE

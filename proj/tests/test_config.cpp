#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "rmlmc/config.hpp"

using namespace rmlmc;

TEST_CASE("defaults reproduce the reference problem") {
    ExperimentConfig cfg;
    cfg.validate();
    CHECK(cfg.problem.u_bar == 0.15);
    CHECK(cfg.problem.sigma == std::vector<double>{0.1, 0.025});
    CHECK(cfg.problem.m == 50);
    CHECK(cfg.problem.offset == 3);
    CHECK(cfg.problem.gen_level == 10);
    CHECK(cfg.problem.x_true == std::vector<double>{0.6, -0.4});
    CHECK(cfg.problem.theta_true == 1.0);
    CHECK(cfg.kernel.rho == 0.4);
    CHECK(cfg.kernel.burn_in == 100);
    CHECK(cfg.kernel.max_iters == 100000);
    CHECK(cfg.levels.rate == 1.5);
    CHECK(cfg.levels.beta == 4.0);
    CHECK(cfg.levels.zeta == 1.0);
    CHECK(cfg.sgd.theta0 == 0.1);
}

TEST_CASE("json parsing: empty and partial documents") {
    ExperimentConfig empty = ExperimentConfig::from_json_text("{}");
    CHECK(empty.problem.m == 50);

    ExperimentConfig partial = ExperimentConfig::from_json_text(R"({
        "kernel": {"rho": 0.5},
        "run": {"seed": 99, "workers": 4}
    })");
    CHECK(partial.kernel.rho == 0.5);
    CHECK(partial.kernel.burn_in == 100);
    CHECK(partial.run.seed == 99);
    CHECK(partial.run.workers == 4);
}

TEST_CASE("validation failures carry field paths") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            ExperimentConfig::from_json_text(text);
            FAIL("expected ConfigError for ", needle);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    expect_error(R"({"kernel": {"rho": 1.5}})", "kernel.rho");
    expect_error(R"({"kernel": {"rho": 0.0}})", "kernel.rho");
    expect_error(R"({"problem": {"u_bar": 0.1}})", "problem.u_bar");  // ellipticity
    expect_error(R"({"problem": {"m": 0}})", "problem.m");
    expect_error(R"({"problem": {"x_true": [0.5, 1.5]}})", "problem.x_true");
    expect_error(R"({"problem": {"gen_level": 40}})", "problem.gen_level");
    expect_error(R"({"levels": {"rate": 0.5}})", "levels.rate");
    expect_error(R"({"kernel": {"max_iters": 5, "burn_in": 9}})", "kernel.max_iters");
    expect_error(R"({"sgd": {"theta0": 1e-5}})", "sgd.theta0");
    expect_error(R"({"run": {"workers": 0}})", "run.workers");
    expect_error(R"({"mystery": {}})", "mystery");
    expect_error(R"({"kernel": {"rho": 0.7, "typo_key": 1}})", "kernel.typo_key");
    expect_error("not json", "config");
}

TEST_CASE("setup generation respects the problem block") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "problem": {"gen_level": 3, "gen_seed": 5}
    })");
    BipSetup setup = cfg.make_setup();
    CHECK(setup.obs.m() == 50);
    CHECK(setup.obs.gen_level == 3);
    CHECK(setup.obs.gen_seed == 5);
    CHECK(setup.field.dimension() == 2);

    BipSetup again = cfg.make_setup();
    CHECK(setup.obs.data == again.obs.data);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmlmc/sgd.hpp"
#include "support/stats.hpp"

using namespace rmlmc;

namespace {

BipSetup default_setup(int gen_level = 4) {
    BipSetup setup;
    setup.field = DiffusionField(0.15, {0.1, 0.025});
    setup.mesh_offset = 3;
    setup.obs = generate_data(42, 1.0, {0.6, -0.4}, gen_level, 50, setup.field, 3);
    return setup;
}

}  // namespace

TEST_CASE("prior_log_grad fixed points and finite differences") {
    CHECK(prior_log_grad(1.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(prior_log_grad(std::exp(-1.0)) == doctest::Approx(0.0).epsilon(1e-12));

    RngStream rng = derive_stream(601, 0);
    for (int trial = 0; trial < 10; ++trial) {
        double theta = 0.1 + 3.0 * rng.uniform();
        const double eps = 1e-6 * theta;
        double fd = (prior_log_density(theta + eps) - prior_log_density(theta - eps)) / (2.0 * eps);
        CHECK(fd == doctest::Approx(prior_log_grad(theta)).epsilon(1e-6));
    }
    CHECK_THROWS(prior_log_grad(0.0));
    CHECK_THROWS(prior_log_grad(-1.0));
}

TEST_CASE("sgd_step: fixed point, floor, schedule") {
    SgdConfig cfg;

    double theta = 0.8;
    double balancing = -prior_log_grad(theta);
    CHECK(sgd_step(theta, 3, cfg, balancing) == theta);

    CHECK(sgd_step(0.5, 1, cfg, -1e9) == cfg.theta_min);

    double g = 2.0;
    double step1 = sgd_step(1.0, 1, cfg, g) - 1.0;
    double step2 = sgd_step(1.0, 2, cfg, g) - 1.0;
    CHECK(step1 == doctest::Approx(2.0 * step2).epsilon(1e-14));
}

TEST_CASE("sgd config validation") {
    SgdConfig ok;
    ok.validate();
    SgdConfig bad = ok;
    bad.theta0 = 1e-4;  // below theta_min
    CHECK_THROWS(bad.validate());
    bad = ok;
    bad.alpha1 = 0.0;
    CHECK_THROWS(bad.validate());
    bad = ok;
    bad.samples_per_step = 0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("run_sgd: zero iterations and worker determinism") {
    BipSetup setup = default_setup();
    LevelDistribution dist;
    KernelConfig kcfg;
    RunConfig run;
    run.seed = 5;

    SgdConfig none;
    none.n_iters = 0;
    SgdTrajectory empty = run_sgd(none, dist, kcfg, setup, run);
    CHECK(empty.thetas == std::vector<double>{0.1});

    SgdConfig cfg;
    cfg.n_iters = 12;
    cfg.samples_per_step = 4;
    SgdTrajectory serial = run_sgd(cfg, dist, kcfg, setup, run);
    CHECK(serial.thetas.size() == 13);
    CHECK(serial.thetas.front() == 0.1);
    for (double t : serial.thetas) CHECK(t >= cfg.theta_min);

    RunConfig par = run;
    par.workers = 3;
    SgdTrajectory threaded = run_sgd(cfg, dist, kcfg, setup, par);
    CHECK(serial.thetas == threaded.thetas);
    CHECK(serial.grad_estimates == threaded.grad_estimates);
}

TEST_CASE("map oracle: stationary point of the quadrature objective") {
    BipSetup setup = default_setup(5);
    MapOracle oracle = quadrature_map_estimate(setup, 5, 48);
    CHECK(std::fabs(oracle.gradient_at_map) < 1e-4);
    CHECK(oracle.theta_map > 0.05);
    CHECK(oracle.theta_map < 20.0);
    MESSAGE("theta_MAP (level-5 reference): ", oracle.theta_map);
}

#ifndef RMLMC_CONFIG_HPP
#define RMLMC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rmlmc/bip.hpp"
#include "rmlmc/estimators.hpp"
#include "rmlmc/sgd.hpp"

namespace rmlmc {

// Thrown with a field-path message ("kernel.rho: ...") on invalid input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full experiment configuration; defaults reproduce the reference problem
// (u_bar = 0.15, sigma = (1/10, 1/40), m = 50, theta = 1, x_true = (0.6,-0.4),
// generating level 10 with offset 3).
struct ExperimentConfig {
    struct Problem {
        double u_bar = 0.15;
        std::vector<double> sigma{0.1, 0.025};
        int m = 50;
        int offset = 3;
        int gen_level = 10;
        std::vector<double> x_true{0.6, -0.4};
        double theta_true = 1.0;
        std::uint64_t gen_seed = 20220914;
    } problem;

    KernelConfig kernel;
    LevelDistribution levels;

    struct Run {
        std::uint64_t seed = 1;
        std::uint64_t n = 10000;
        unsigned workers = 1;
        bool strict = true;
    } run;

    SgdConfig sgd;

    // Parses JSON (all keys optional, unknown keys rejected) and validates.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    void validate() const;

    DiffusionField field() const { return DiffusionField(problem.u_bar, problem.sigma); }

    // Regenerates the observations from the problem block.
    ObservationSet make_observations() const;

    // Setup with observations generated (obs_path empty) or loaded from file.
    BipSetup make_setup(const std::string& obs_path = "") const;
};

}  // namespace rmlmc

#endif

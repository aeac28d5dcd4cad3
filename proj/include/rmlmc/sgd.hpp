#ifndef RMLMC_SGD_HPP
#define RMLMC_SGD_HPP

#include <vector>

#include "rmlmc/estimators.hpp"
#include "rmlmc/quadrature.hpp"

namespace rmlmc {

struct SgdConfig {
    double theta0 = 0.1;
    double alpha1 = 0.0032;
    int n_iters = 1000;
    double theta_min = 1e-3;
    int samples_per_step = 320;

    void validate() const;
};

struct SgdTrajectory {
    std::vector<double> thetas;          // theta^(0), ..., theta^(n_iters)
    std::vector<double> grad_estimates;  // posterior-score estimate per step
    std::vector<CostCounters> costs;     // per-step cost
};

// d/dtheta log p(theta) for the standard Gaussian prior on log(theta):
// -(log(theta) + 1) / theta.
double prior_log_grad(double theta);

// log p(theta) up to its normalizing constant (used by the MAP oracle).
double prior_log_density(double theta);

// theta_{n+1} = max(theta_min, theta_n + alpha1/n (grad + prior_log_grad)).
double sgd_step(double theta_n, int n, const SgdConfig& cfg, double grad);

// Stochastic gradient ascent on log evidence + log prior; the per-step
// gradient is an average of samples_per_step single-term posterior samples at
// the current theta. Step n uses derived streams
// (seed, (n-1) * samples_per_step + j), so the trajectory is a pure function
// of (seed, config) for any worker count.
SgdTrajectory run_sgd(const SgdConfig& cfg, const LevelDistribution& dist, const KernelConfig& kcfg,
                      const BipSetup& setup, const RunConfig& run);

// Deterministic MAP reference: maximizes log_evidence(theta) + log p(theta)
// over a log-spaced theta grid using the reference-level quadrature, then
// bisects the gradient in the bracketing interval.
struct MapOracle {
    double theta_map = 0.0;
    double gradient_at_map = 0.0;  // oracle objective gradient, ~0 at the optimum
};

MapOracle quadrature_map_estimate(const BipSetup& setup, int ref_level, int nodes_per_dim,
                                  double theta_lo = 0.05, double theta_hi = 20.0, int grid_size = 61);

}  // namespace rmlmc

#endif

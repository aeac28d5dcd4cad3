#include "rmlmc/sgd.hpp"

#include <cmath>
#include <stdexcept>

namespace rmlmc {

void SgdConfig::validate() const {
    if (!(theta_min > 0.0)) throw std::invalid_argument("SgdConfig: theta_min must be positive");
    if (!(theta0 > theta_min)) throw std::invalid_argument("SgdConfig: theta0 must exceed theta_min");
    if (!(alpha1 > 0.0)) throw std::invalid_argument("SgdConfig: alpha1 must be positive");
    if (n_iters < 0) throw std::invalid_argument("SgdConfig: n_iters must be >= 0");
    if (samples_per_step < 1) throw std::invalid_argument("SgdConfig: samples_per_step must be >= 1");
}

double prior_log_grad(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("prior_log_grad: theta must be positive");
    return -(std::log(theta) + 1.0) / theta;
}

double prior_log_density(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("prior_log_density: theta must be positive");
    double lt = std::log(theta);
    return -0.5 * lt * lt - lt - 0.5 * std::log(2.0 * M_PI);
}

double sgd_step(double theta_n, int n, const SgdConfig& cfg, double grad) {
    if (n < 1) throw std::invalid_argument("sgd_step: n must be >= 1");
    double step = cfg.alpha1 / n * (grad + prior_log_grad(theta_n));
    return std::max(cfg.theta_min, theta_n + step);
}

SgdTrajectory run_sgd(const SgdConfig& cfg, const LevelDistribution& dist, const KernelConfig& kcfg,
                      const BipSetup& setup, const RunConfig& run) {
    cfg.validate();
    SgdTrajectory traj;
    traj.thetas.reserve(cfg.n_iters + 1);
    traj.thetas.push_back(cfg.theta0);

    double theta = cfg.theta0;
    for (int n = 1; n <= cfg.n_iters; ++n) {
        RunConfig step_run = run;
        step_run.stream_offset = run.stream_offset + static_cast<std::uint64_t>(n - 1) * cfg.samples_per_step;
        std::vector<SingleTermSample> batch =
            sample_posterior_batch(theta, cfg.samples_per_step, dist, kcfg, setup, step_run);
        EstimateSummary grad = summarize(batch, run.strict);
        theta = sgd_step(theta, n, cfg, grad.mean);
        traj.thetas.push_back(theta);
        traj.grad_estimates.push_back(grad.mean);
        traj.costs.push_back(grad.total_cost);
    }
    return traj;
}

MapOracle quadrature_map_estimate(const BipSetup& setup, int ref_level, int nodes_per_dim, double theta_lo,
                                  double theta_hi, int grid_size) {
    if (!(theta_lo > 0.0 && theta_hi > theta_lo)) throw std::invalid_argument("quadrature_map_estimate: bad range");
    if (grid_size < 3) throw std::invalid_argument("quadrature_map_estimate: grid_size must be >= 3");

    MeshLevel mesh = build_mesh(ref_level, setup.mesh_offset);
    PosteriorQuadrature quad(mesh, setup, nodes_per_dim);

    auto objective = [&](double theta) { return quad.evaluate(theta).log_evidence + prior_log_density(theta); };
    auto gradient = [&](double theta) { return quad.evaluate(theta).posterior_mean_qoi + prior_log_grad(theta); };

    // Log-spaced grid scan for the bracketing interval.
    std::vector<double> grid(grid_size);
    const double log_lo = std::log(theta_lo), log_hi = std::log(theta_hi);
    for (int i = 0; i < grid_size; ++i)
        grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (grid_size - 1.0));
    int best = 0;
    double best_val = objective(grid[0]);
    for (int i = 1; i < grid_size; ++i) {
        double v = objective(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best == 0 || best == grid_size - 1)
        throw std::runtime_error("quadrature_map_estimate: optimum not interior to the theta grid");

    double lo = grid[best - 1], hi = grid[best + 1];
    double g_lo = gradient(lo), g_hi = gradient(hi);
    if (!(g_lo > 0.0 && g_hi < 0.0))
        throw std::runtime_error("quadrature_map_estimate: gradient does not bracket a maximum");
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (gradient(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    MapOracle oracle;
    oracle.theta_map = 0.5 * (lo + hi);
    oracle.gradient_at_map = gradient(oracle.theta_map);
    return oracle;
}

}  // namespace rmlmc

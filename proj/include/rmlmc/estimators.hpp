#ifndef RMLMC_ESTIMATORS_HPP
#define RMLMC_ESTIMATORS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rmlmc/foursome.hpp"
#include "rmlmc/levels.hpp"

namespace rmlmc {

// One i.i.d. debiased draw Z = Y_hat_L / p_L.
struct SingleTermSample {
    double value = 0.0;
    int level = 0;
    double increment = 0.0;
    std::int64_t tau_fine = -1;
    std::int64_t tau_coarse = -1;
    bool truncated = false;
    CostCounters cost;
};

struct EstimateSummary {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    std::vector<std::uint64_t> per_level_counts;
    CostCounters total_cost;
    std::uint64_t truncation_count = 0;
};

struct RunConfig {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool strict = true;              // fail on any truncated increment
    std::uint64_t stream_offset = 0; // first derived-stream index
};

// Draws the level from `dist` and runs the coupled-chain increment at that
// level. All randomness comes from `rng`.
SingleTermSample single_term_posterior(double theta, const LevelDistribution& dist, const KernelConfig& kcfg,
                                       const BipSetup& setup, RngStream& rng);

// n independent samples, sample i on derived stream (seed, stream_offset + i).
std::vector<SingleTermSample> sample_posterior_batch(double theta, std::size_t n, const LevelDistribution& dist,
                                                     const KernelConfig& kcfg, const BipSetup& setup,
                                                     const RunConfig& run);

// Fixed-order aggregation; bit-identical for any worker count. Throws in
// strict mode when any sample is truncated.
EstimateSummary summarize(std::span<const SingleTermSample> samples, bool strict);

// The randomized-MLMC estimate: average of n single-term samples.
EstimateSummary rmlmc_estimate(double theta, std::size_t n, const LevelDistribution& dist,
                               const KernelConfig& kcfg, const BipSetup& setup, const RunConfig& run);

// Forward (prior-expectation) functional of the level-l model, e.g.
// u -> phi(v^l(u)). Used by the non-inference baselines.
using LevelFunctional = std::function<double(int level, std::span<const double> u)>;

// Baseline MLMC over the prior: per-level coupled increments share the prior
// draw across the (l, l-1) pair; level 0 is plain Monte Carlo.
double mlmc_estimate(const LevelFunctional& phi, int max_level, std::span<const std::size_t> samples_per_level,
                     int dimension, RngStream& rng);

// Forward single-term estimator: Z = [phi_L - phi_{L-1}](u) / p_L, u from the
// prior, L from dist.
double forward_single_term(const LevelFunctional& phi, const LevelDistribution& dist, int dimension,
                           RngStream& rng);

}  // namespace rmlmc

#endif

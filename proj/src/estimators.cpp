#include "rmlmc/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "rmlmc/pool.hpp"

namespace rmlmc {

SingleTermSample single_term_posterior(double theta, const LevelDistribution& dist, const KernelConfig& kcfg,
                                       const BipSetup& setup, RngStream& rng) {
    dist.validate();
    const int level = dist.sample(rng.uniform());
    IncrementEstimate inc = unbiased_increment(level, kcfg, theta, setup, rng);
    SingleTermSample s;
    s.level = level;
    s.increment = inc.value;
    s.value = inc.value / dist.pmf(level);
    s.tau_fine = inc.tau_fine;
    s.tau_coarse = inc.tau_coarse;
    s.truncated = inc.truncated;
    s.cost = inc.cost;
    return s;
}

std::vector<SingleTermSample> sample_posterior_batch(double theta, std::size_t n, const LevelDistribution& dist,
                                                     const KernelConfig& kcfg, const BipSetup& setup,
                                                     const RunConfig& run) {
    if (n == 0) throw std::invalid_argument("sample_posterior_batch: n must be >= 1");
    return parallel_map<SingleTermSample>(n, run.workers, [&](std::size_t i) {
        RngStream rng = derive_stream(run.seed, run.stream_offset + i);
        return single_term_posterior(theta, dist, kcfg, setup, rng);
    });
}

EstimateSummary summarize(std::span<const SingleTermSample> samples, bool strict) {
    if (samples.empty()) throw std::invalid_argument("summarize: no samples");
    EstimateSummary out;
    out.n = samples.size();
    double sum = 0.0;
    for (const auto& s : samples) {
        sum += s.value;
        if (static_cast<std::size_t>(s.level) >= out.per_level_counts.size())
            out.per_level_counts.resize(s.level + 1, 0);
        ++out.per_level_counts[s.level];
        out.total_cost += s.cost;
        if (s.truncated) ++out.truncation_count;
    }
    if (strict && out.truncation_count > 0)
        throw std::runtime_error("summarize: " + std::to_string(out.truncation_count) +
                                 " truncated increment(s) in strict mode");
    out.mean = sum / static_cast<double>(out.n);
    double ss = 0.0;
    for (const auto& s : samples) {
        double d = s.value - out.mean;
        ss += d * d;
    }
    out.std_error = out.n > 1 ? std::sqrt(ss / (static_cast<double>(out.n) * (out.n - 1.0))) : 0.0;
    return out;
}

EstimateSummary rmlmc_estimate(double theta, std::size_t n, const LevelDistribution& dist,
                               const KernelConfig& kcfg, const BipSetup& setup, const RunConfig& run) {
    return summarize(sample_posterior_batch(theta, n, dist, kcfg, setup, run), run.strict);
}

namespace {

std::vector<double> prior_draw(int dimension, RngStream& rng) {
    std::vector<double> u(dimension);
    for (double& x : u) x = 2.0 * rng.uniform() - 1.0;
    return u;
}

}  // namespace

double mlmc_estimate(const LevelFunctional& phi, int max_level, std::span<const std::size_t> samples_per_level,
                     int dimension, RngStream& rng) {
    if (max_level < 0) throw std::invalid_argument("mlmc_estimate: max_level must be >= 0");
    if (samples_per_level.size() != static_cast<std::size_t>(max_level) + 1)
        throw std::invalid_argument("mlmc_estimate: need one sample count per level");
    double total = 0.0;
    for (int l = 0; l <= max_level; ++l) {
        const std::size_t n_l = samples_per_level[l];
        if (n_l == 0) throw std::invalid_argument("mlmc_estimate: sample counts must be >= 1");
        double level_sum = 0.0;
        for (std::size_t i = 0; i < n_l; ++i) {
            std::vector<double> u = prior_draw(dimension, rng);
            double y = phi(l, u);
            if (l > 0) y -= phi(l - 1, u);  // same prior draw at both levels
            level_sum += y;
        }
        total += level_sum / static_cast<double>(n_l);
    }
    return total;
}

double forward_single_term(const LevelFunctional& phi, const LevelDistribution& dist, int dimension,
                           RngStream& rng) {
    dist.validate();
    const int level = dist.sample(rng.uniform());
    std::vector<double> u = prior_draw(dimension, rng);
    double y = phi(level, u);
    if (level > 0) y -= phi(level - 1, u);
    return y / dist.pmf(level);
}

}  // namespace rmlmc

#include "rmlmc/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace rmlmc {

std::vector<double> pcn_propose(std::span<const double> z, double rho, std::span<const double> noise) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("pcn_propose: rho outside [0,1]");
    if (noise.size() != z.size()) throw std::invalid_argument("pcn_propose: noise dimension mismatch");
    const double s = std::sqrt(1.0 - rho * rho);
    std::vector<double> prop(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) prop[j] = rho * z[j] + s * noise[j];
    return prop;
}

double pcn_accept_log_ratio(double loglik_new, double loglik_old) {
    return std::min(0.0, loglik_new - loglik_old);
}

CoupledNoise reflection_coupled_noise(std::span<const double> mean_a, std::span<const double> mean_b,
                                      double scale, std::vector<double> xi, double coalescence_uniform) {
    if (!(scale > 0.0)) throw std::invalid_argument("reflection_coupled_noise: scale must be positive");
    if (mean_a.size() != mean_b.size() || xi.size() != mean_a.size())
        throw std::invalid_argument("reflection_coupled_noise: dimension mismatch");

    const std::size_t d = xi.size();
    double dist_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double diff = mean_a[j] - mean_b[j];
        dist_sq += diff * diff;
    }
    if (dist_sq == 0.0) {
        CoupledNoise out;
        out.noise_b = xi;
        out.noise_a = std::move(xi);
        out.coalesced = true;
        return out;
    }

    // z = (mean_a - mean_b) / scale; coalesce with probability
    // rho_1(xi + z) / rho_1(xi), else reflect xi about the bisecting plane.
    double log_ratio = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double zj = (mean_a[j] - mean_b[j]) / scale;
        double shifted = xi[j] + zj;
        log_ratio += 0.5 * (xi[j] * xi[j] - shifted * shifted);
    }

    CoupledNoise out;
    if (log_ratio >= 0.0 || std::log(coalescence_uniform) < log_ratio) {
        out.coalesced = true;
        out.noise_b.resize(d);
        for (std::size_t j = 0; j < d; ++j) out.noise_b[j] = xi[j] + (mean_a[j] - mean_b[j]) / scale;
    } else {
        out.coalesced = false;
        const double dist = std::sqrt(dist_sq);
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) dot += (mean_a[j] - mean_b[j]) / dist * xi[j];
        out.noise_b.resize(d);
        for (std::size_t j = 0; j < d; ++j)
            out.noise_b[j] = xi[j] - 2.0 * dot * (mean_a[j] - mean_b[j]) / dist;
    }
    out.noise_a = std::move(xi);
    return out;
}

CoupledNoise reflection_maximal_coupling(std::span<const double> mean_a, std::span<const double> mean_b,
                                         double scale, RngStream& rng) {
    std::vector<double> xi(mean_a.size());
    for (double& x : xi) x = rng.normal();
    return reflection_coupled_noise(mean_a, mean_b, scale, std::move(xi), rng.uniform());
}

}  // namespace rmlmc

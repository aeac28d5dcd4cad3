#include "rmlmc/bip.hpp"

#include <cmath>
#include <stdexcept>

#include "rmlmc/rng.hpp"

namespace rmlmc {

std::vector<double> transform_prior(std::span<const double> z) {
    std::vector<double> u(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (!std::isfinite(z[j])) throw std::invalid_argument("transform_prior: non-finite coordinate");
        u[j] = 2.0 * normal_cdf(z[j]) - 1.0;
    }
    return u;
}

double residual_sq(const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
                   const ObservationSet& obs) {
    std::vector<double> g = forward_map(mesh, field, u, obs.points);
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double d = g[i] - obs.data[i];
        r += d * d;
    }
    return r;
}

double log_gamma_from_residual(double theta, int m, double resid_sq) {
    if (!(theta > 0.0)) throw std::invalid_argument("log_gamma: theta must be positive");
    return 0.5 * m * std::log(theta) - 0.5 * theta * resid_sq;
}

double qoi_from_residual(double theta, int m, double resid_sq) {
    if (!(theta > 0.0)) throw std::invalid_argument("qoi: theta must be positive");
    return 0.5 * m / theta - 0.5 * resid_sq;
}

double log_gamma(double theta, const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
                 const ObservationSet& obs) {
    return log_gamma_from_residual(theta, obs.m(), residual_sq(mesh, field, u, obs));
}

double qoi(double theta, const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
           const ObservationSet& obs) {
    return qoi_from_residual(theta, obs.m(), residual_sq(mesh, field, u, obs));
}

}  // namespace rmlmc

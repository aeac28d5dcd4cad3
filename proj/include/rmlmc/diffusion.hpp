#ifndef RMLMC_DIFFUSION_HPP
#define RMLMC_DIFFUSION_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace rmlmc {

// Random diffusion coefficient mean + sum_j u_j * sigma_j * basis_j(x) with
// basis sin(pi x), cos(2 pi x). Uniform ellipticity requires
// mean > sum_j sigma_j.
struct DiffusionField {
    double mean = 0.15;
    std::vector<double> scales{0.1, 0.025};

    std::size_t dimension() const { return scales.size(); }

    DiffusionField() = default;
    DiffusionField(double mean_, std::vector<double> scales_);
};

double basis_function(std::size_t j, double x);

// Coefficient value at x for latent point u in [-1,1]^J.
double evaluate_coefficient(const DiffusionField& field, std::span<const double> u, double x);

}  // namespace rmlmc

#endif

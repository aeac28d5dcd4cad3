#include "rmlmc/diffusion.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rmlmc {

DiffusionField::DiffusionField(double mean_, std::vector<double> scales_)
    : mean(mean_), scales(std::move(scales_)) {
    if (scales.empty() || scales.size() > 2)
        throw std::invalid_argument("DiffusionField: dimension must be 1 or 2");
    for (double s : scales)
        if (s < 0.0) throw std::invalid_argument("DiffusionField: scales must be non-negative");
    double total = std::accumulate(scales.begin(), scales.end(), 0.0);
    if (!(mean - total > 0.0))
        throw std::invalid_argument("DiffusionField: mean - sum(scales) must be positive (ellipticity)");
}

double basis_function(std::size_t j, double x) {
    switch (j) {
        case 0: return std::sin(M_PI * x);
        case 1: return std::cos(2.0 * M_PI * x);
        default: throw std::invalid_argument("basis_function: only two basis functions are defined");
    }
}

double evaluate_coefficient(const DiffusionField& field, std::span<const double> u, double x) {
    if (u.size() != field.dimension())
        throw std::invalid_argument("evaluate_coefficient: latent dimension mismatch");
    double value = field.mean;
    for (std::size_t j = 0; j < u.size(); ++j)
        value += u[j] * field.scales[j] * basis_function(j, x);
    return value;
}

}  // namespace rmlmc

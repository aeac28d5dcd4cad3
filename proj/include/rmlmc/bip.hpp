#ifndef RMLMC_BIP_HPP
#define RMLMC_BIP_HPP

#include <span>
#include <vector>

#include "rmlmc/fem.hpp"
#include "rmlmc/observation.hpp"

namespace rmlmc {

// Everything the samplers need besides theta: coefficient field, mesh offset
// l_0, and the (immutable) observation set.
struct BipSetup {
    DiffusionField field;
    int mesh_offset = 3;
    ObservationSet obs;
};

// The chains live in z-space (standard Gaussian reference, as pCN requires);
// the model prior U[-1,1]^J is the pushforward under u_j = 2 Phi(z_j) - 1.
std::vector<double> transform_prior(std::span<const double> z);

// ||G^l(u) - y||^2 at mesh resolution `mesh`. One PDE solve.
double residual_sq(const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
                   const ObservationSet& obs);

// log of the unnormalized density: (m/2) log(theta) - (theta/2) ||G^l(u) - y||^2.
double log_gamma(double theta, const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
                 const ObservationSet& obs);

// Quantity of interest (theta-score): m/(2 theta) - ||G^l(u) - y||^2 / 2.
double qoi(double theta, const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
           const ObservationSet& obs);

// Same quantities from a cached residual; these are what the chains use.
double log_gamma_from_residual(double theta, int m, double resid_sq);
double qoi_from_residual(double theta, int m, double resid_sq);

}  // namespace rmlmc

#endif

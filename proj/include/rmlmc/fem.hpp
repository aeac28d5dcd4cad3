#ifndef RMLMC_FEM_HPP
#define RMLMC_FEM_HPP

#include <span>
#include <vector>

#include "rmlmc/diffusion.hpp"
#include "rmlmc/mesh.hpp"
#include "rmlmc/tridiagonal.hpp"

namespace rmlmc {

// Piecewise-linear FEM for -d/dx( c(x) dv/dx ) = 100 x on [0,1], v(0)=v(1)=0,
// with c the diffusion coefficient at latent point u.

// Galerkin stiffness + load. Element integrals of the coefficient use 2-point
// Gauss-Legendre; the load against hat functions is exact for the linear
// forcing (f_i = 100 x_i h). Rejects u outside [-1,1]^J.
TridiagonalSystem assemble(const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u);

// Piecewise-linear interpolation of nodal values, zero at both boundaries.
double evaluate_solution(const MeshLevel& mesh, std::span<const double> nodal, double x);

// G^l(u): solution evaluated at the observation points. One assemble+solve.
std::vector<double> forward_map(const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
                                std::span<const double> points);

// Observation grid x_i = 0.01 + 0.02 (i-1), i = 1..m.
std::vector<double> observation_points(int m);

}  // namespace rmlmc

#endif

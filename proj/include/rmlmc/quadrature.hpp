#ifndef RMLMC_QUADRATURE_HPP
#define RMLMC_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "rmlmc/bip.hpp"

namespace rmlmc {

// Gauss-Legendre rule on [-1,1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

struct QuadratureReference {
    double posterior_mean_qoi = 0.0;  // eta_theta^l(phi_theta^l)
    double log_evidence = 0.0;        // log integral of gamma against the uniform prior
};

// Tensor quadrature of the level-l posterior with the PDE solves hoisted out:
// residuals are theta-independent, so one grid supports any number of theta
// evaluations (the MAP oracle sweeps theta on a fixed grid).
class PosteriorQuadrature {
public:
    PosteriorQuadrature(const MeshLevel& mesh, const BipSetup& setup, int nodes_per_dim);

    QuadratureReference evaluate(double theta) const;

    int nodes_per_dim() const { return nodes_per_dim_; }

private:
    std::vector<double> log_weight_;  // log of tensor weight / 2^J per node
    std::vector<double> resid_;       // ||G^l(u) - y||^2 per node
    int m_ = 0;
    int nodes_per_dim_ = 0;
};

// Independent reference for the level-l posterior mean of the theta-score and
// the log evidence. Rejects latent dimension > 3.
QuadratureReference quadrature_reference(double theta, const MeshLevel& mesh, const BipSetup& setup,
                                         int nodes_per_dim);

// Posterior-mean increment between consecutive levels (level 0: the level-0
// mean itself), used as the oracle for the unbiased increment estimators.
double quadrature_posterior_increment(double theta, int level, const BipSetup& setup, int nodes_per_dim);

// Tensor Gauss-Legendre expectation of f under the uniform prior on [-1,1]^J.
double prior_expectation(const std::function<double(std::span<const double>)>& f, int dimension,
                         int nodes_per_dim);

}  // namespace rmlmc

#endif

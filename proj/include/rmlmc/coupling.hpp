#ifndef RMLMC_COUPLING_HPP
#define RMLMC_COUPLING_HPP

#include <span>
#include <vector>

#include "rmlmc/rng.hpp"

namespace rmlmc {

// pCN proposal rho z + sqrt(1 - rho^2) noise, noise ~ N(0, I).
std::vector<double> pcn_propose(std::span<const double> z, double rho, std::span<const double> noise);

// pCN is reversible w.r.t. the Gaussian reference, so the Metropolis log
// ratio is the likelihood difference, clamped at 0. Accept iff
// log(uniform) < returned value.
double pcn_accept_log_ratio(double loglik_new, double loglik_old);

struct CoupledNoise {
    std::vector<double> noise_a;
    std::vector<double> noise_b;
    bool coalesced = false;
};

// Reflection-maximal coupling of N(mean_a, scale^2 I) and N(mean_b, scale^2 I)
// in noise coordinates: proposal_x = mean_x + scale * noise_x. With the
// maximal (TV overlap) probability the two proposals coincide and `coalesced`
// is set; callers that need bit-exact equality should then reuse proposal_a
// verbatim. Otherwise noise_b is noise_a reflected about the hyperplane
// bisecting the means. Equal means return identical draws, coalesced.
CoupledNoise reflection_maximal_coupling(std::span<const double> mean_a, std::span<const double> mean_b,
                                         double scale, RngStream& rng);

// Same construction with the base draw xi and the coalescence uniform
// supplied by the caller: the four-chain kernel reuses the unprimed chain's
// proposal noise as xi and shares one coalescence uniform across levels.
CoupledNoise reflection_coupled_noise(std::span<const double> mean_a, std::span<const double> mean_b,
                                      double scale, std::vector<double> xi, double coalescence_uniform);

}  // namespace rmlmc

#endif

#ifndef RMLMC_DOUBLE_RANDOMIZATION_HPP
#define RMLMC_DOUBLE_RANDOMIZATION_HPP

#include <cstdint>
#include <functional>

#include "rmlmc/levels.hpp"
#include "rmlmc/rng.hpp"

namespace rmlmc {

// Coupled pair of inner estimates of the level-l increment at accuracies
// n_hi > n_lo (n_lo = 0 encodes the k = 0 convention Y^{N_-1} == 0).
struct InnerPair {
    double y_hi = 0.0;
    double y_lo = 0.0;
};

// Caller-supplied inner family: evaluates the coupled pair
// (Y_l^{n_hi}, Y_l^{n_lo}).
using CoupledInnerFamily = std::function<InnerPair(int level, std::uint64_t n_hi, std::uint64_t n_lo)>;

// Inner accuracy schedule N_k, strictly increasing in k.
using InnerSchedule = std::function<std::uint64_t(int k)>;

inline std::uint64_t default_inner_schedule(int k) { return std::uint64_t{1} << k; }

// Value of the doubly-randomized estimator at fixed indices (l, k):
// (Y_l^{N_k} - Y_l^{N_{k-1}}) / (p_l sp_k). Deterministic; exposed so tests
// can enumerate the whole (l, k) grid.
double double_randomized_term(const CoupledInnerFamily& family, const LevelDistribution& outer,
                              const GeometricPmf& inner, const InnerSchedule& schedule, int level, int k);

// Draws K ~ inner, L ~ outer and evaluates the term above.
double double_randomized_single_term(const CoupledInnerFamily& family, const LevelDistribution& outer,
                                     const GeometricPmf& inner, const InnerSchedule& schedule, RngStream& rng);

}  // namespace rmlmc

#endif

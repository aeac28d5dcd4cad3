#include "rmlmc/double_randomization.hpp"

#include <stdexcept>

namespace rmlmc {

double double_randomized_term(const CoupledInnerFamily& family, const LevelDistribution& outer,
                              const GeometricPmf& inner, const InnerSchedule& schedule, int level, int k) {
    outer.validate();
    inner.validate();
    if (level < 0 || k < 0) throw std::invalid_argument("double_randomized_term: indices must be >= 0");

    const std::uint64_t n_hi = schedule(k);
    const std::uint64_t n_lo = k > 0 ? schedule(k - 1) : 0;
    if (n_hi == 0 || (k > 0 && n_lo >= n_hi))
        throw std::invalid_argument("double_randomized_term: schedule must be positive and strictly increasing");

    InnerPair pair = family(level, n_hi, n_lo);
    return (pair.y_hi - pair.y_lo) / (outer.pmf(level) * inner.pmf(k));
}

double double_randomized_single_term(const CoupledInnerFamily& family, const LevelDistribution& outer,
                                     const GeometricPmf& inner, const InnerSchedule& schedule, RngStream& rng) {
    const int level = outer.sample(rng.uniform());
    const int k = inner.sample(rng.uniform());
    return double_randomized_term(family, outer, inner, schedule, level, k);
}

}  // namespace rmlmc

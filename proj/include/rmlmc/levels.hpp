#ifndef RMLMC_LEVELS_HPP
#define RMLMC_LEVELS_HPP

#include <cmath>
#include <stdexcept>

namespace rmlmc {

// Geometric pmf on {0,1,2,...}: p_l = (1 - 2^-rate) 2^(-rate l).
struct GeometricPmf {
    double rate = 2.5;

    double pmf(int l) const {
        if (l < 0) throw std::invalid_argument("GeometricPmf: level must be >= 0");
        return (1.0 - std::exp2(-rate)) * std::exp2(-rate * l);
    }

    // Inverse-CDF sampling, closed form.
    int sample(double uniform) const {
        if (!(uniform >= 0.0 && uniform < 1.0)) throw std::invalid_argument("GeometricPmf: uniform outside [0,1)");
        return static_cast<int>(std::floor(std::log2(1.0 - uniform) / (-rate)));
    }

    void validate() const {
        if (!(rate > 0.0)) throw std::invalid_argument("GeometricPmf: rate must be positive");
    }
};

inline double level_pmf(double rate, int l) {
    GeometricPmf p{rate};
    p.validate();
    return p.pmf(l);
}

// Level distribution for the randomized estimators, together with the assumed
// strong (beta) and cost (zeta) rates. Finite variance and finite expected
// cost need zeta < rate < beta.
struct LevelDistribution {
    double rate = 1.5;
    double beta = 4.0;
    double zeta = 1.0;

    double pmf(int l) const { return GeometricPmf{rate}.pmf(l); }
    int sample(double uniform) const { return GeometricPmf{rate}.sample(uniform); }

    void validate() const {
        GeometricPmf{rate}.validate();
        if (!(zeta < rate && rate < beta))
            throw std::invalid_argument("LevelDistribution: need zeta < rate < beta");
    }
};

inline int sample_level(const LevelDistribution& dist, double uniform) { return dist.sample(uniform); }

}  // namespace rmlmc

#endif

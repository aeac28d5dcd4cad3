#ifndef RMLMC_OBSERVATION_HPP
#define RMLMC_OBSERVATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rmlmc/diffusion.hpp"

namespace rmlmc {

// Synthetic observations y = G^l(x_true) + noise, noise ~ N(0, 1/theta I_m),
// together with everything needed to regenerate them.
struct ObservationSet {
    std::vector<double> points;
    std::vector<double> data;
    double precision_true = 1.0;
    int gen_level = 10;
    std::uint64_t gen_seed = 0;
    std::vector<double> x_true;

    int m() const { return static_cast<int>(points.size()); }
};

// Deterministic given seed. The generating mesh is (gen_level, mesh_offset).
ObservationSet generate_data(std::uint64_t seed, double theta, std::vector<double> x_true, int gen_level,
                             int m, const DiffusionField& field, int mesh_offset);

// Flat key/value text file, doubles at 17 significant digits (round-trip safe).
void save_observations(const ObservationSet& obs, const std::string& path);
ObservationSet load_observations(const std::string& path);

}  // namespace rmlmc

#endif

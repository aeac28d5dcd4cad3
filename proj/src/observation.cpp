#include "rmlmc/observation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rmlmc/fem.hpp"
#include "rmlmc/rng.hpp"

namespace rmlmc {

ObservationSet generate_data(std::uint64_t seed, double theta, std::vector<double> x_true, int gen_level,
                             int m, const DiffusionField& field, int mesh_offset) {
    if (!(theta > 0.0)) throw std::invalid_argument("generate_data: theta must be positive");
    for (double xj : x_true)
        if (!(xj >= -1.0 && xj <= 1.0)) throw std::invalid_argument("generate_data: x_true outside [-1,1]^J");

    ObservationSet obs;
    obs.points = observation_points(m);
    obs.precision_true = theta;
    obs.gen_level = gen_level;
    obs.gen_seed = seed;
    obs.x_true = std::move(x_true);

    MeshLevel mesh = build_mesh(gen_level, mesh_offset);
    obs.data = forward_map(mesh, field, obs.x_true, obs.points);

    RngStream rng = derive_stream(seed, 0);
    const double noise_sd = 1.0 / std::sqrt(theta);
    for (double& yi : obs.data) yi += noise_sd * rng.normal();
    return obs;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_vector(std::ostream& out, const std::string& key, const std::vector<double>& v) {
    out << key;
    for (double x : v) out << ' ' << format_double(x);
    out << '\n';
}

}  // namespace

void save_observations(const ObservationSet& obs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_observations: cannot open " + path);
    out << "seed " << obs.gen_seed << '\n';
    out << "theta " << format_double(obs.precision_true) << '\n';
    out << "gen_level " << obs.gen_level << '\n';
    out << "m " << obs.m() << '\n';
    write_vector(out, "x_true", obs.x_true);
    write_vector(out, "points", obs.points);
    write_vector(out, "y", obs.data);
    if (!out) throw std::runtime_error("save_observations: write failed for " + path);
}

ObservationSet load_observations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_observations: cannot open " + path);
    ObservationSet obs;
    int m = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "seed") {
            ls >> obs.gen_seed;
        } else if (key == "theta") {
            ls >> obs.precision_true;
        } else if (key == "gen_level") {
            ls >> obs.gen_level;
        } else if (key == "m") {
            ls >> m;
        } else if (key == "x_true" || key == "points" || key == "y") {
            std::vector<double> v;
            double x;
            while (ls >> x) v.push_back(x);
            if (key == "x_true") obs.x_true = std::move(v);
            else if (key == "points") obs.points = std::move(v);
            else obs.data = std::move(v);
        } else {
            throw std::runtime_error("load_observations: unknown key '" + key + "' in " + path);
        }
    }
    if (m < 0 || obs.points.size() != static_cast<std::size_t>(m) || obs.data.size() != static_cast<std::size_t>(m))
        throw std::runtime_error("load_observations: inconsistent observation file " + path);
    for (std::size_t i = 1; i < obs.points.size(); ++i)
        if (!(obs.points[i] > obs.points[i - 1]))
            throw std::runtime_error("load_observations: points must be strictly increasing");
    return obs;
}

}  // namespace rmlmc

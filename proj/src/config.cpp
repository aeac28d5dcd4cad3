#include "rmlmc/config.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace rmlmc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void check_keys(const json& block, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : block.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) fail(path + "." + key, "unknown key");
    }
}

template <class T>
void read(const json& block, const std::string& path, const char* key, T& out) {
    if (!block.contains(key)) return;
    try {
        out = block.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(path + "." + key, e.what());
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(doc, "config", {"problem", "kernel", "levels", "run", "sgd"});

    ExperimentConfig cfg;
    if (doc.contains("problem")) {
        const json& b = doc["problem"];
        check_keys(b, "problem", {"u_bar", "sigma", "m", "offset", "gen_level", "x_true", "theta_true", "gen_seed"});
        read(b, "problem", "u_bar", cfg.problem.u_bar);
        read(b, "problem", "sigma", cfg.problem.sigma);
        read(b, "problem", "m", cfg.problem.m);
        read(b, "problem", "offset", cfg.problem.offset);
        read(b, "problem", "gen_level", cfg.problem.gen_level);
        read(b, "problem", "x_true", cfg.problem.x_true);
        read(b, "problem", "theta_true", cfg.problem.theta_true);
        read(b, "problem", "gen_seed", cfg.problem.gen_seed);
    }
    if (doc.contains("kernel")) {
        const json& b = doc["kernel"];
        check_keys(b, "kernel", {"rho", "burn_in", "max_iters"});
        read(b, "kernel", "rho", cfg.kernel.rho);
        read(b, "kernel", "burn_in", cfg.kernel.burn_in);
        read(b, "kernel", "max_iters", cfg.kernel.max_iters);
    }
    if (doc.contains("levels")) {
        const json& b = doc["levels"];
        check_keys(b, "levels", {"rate", "beta", "zeta"});
        read(b, "levels", "rate", cfg.levels.rate);
        read(b, "levels", "beta", cfg.levels.beta);
        read(b, "levels", "zeta", cfg.levels.zeta);
    }
    if (doc.contains("run")) {
        const json& b = doc["run"];
        check_keys(b, "run", {"seed", "n", "workers", "strict"});
        read(b, "run", "seed", cfg.run.seed);
        read(b, "run", "n", cfg.run.n);
        read(b, "run", "workers", cfg.run.workers);
        read(b, "run", "strict", cfg.run.strict);
    }
    if (doc.contains("sgd")) {
        const json& b = doc["sgd"];
        check_keys(b, "sgd", {"theta0", "alpha1", "n_iters", "theta_min", "samples_per_step"});
        read(b, "sgd", "theta0", cfg.sgd.theta0);
        read(b, "sgd", "alpha1", cfg.sgd.alpha1);
        read(b, "sgd", "n_iters", cfg.sgd.n_iters);
        read(b, "sgd", "theta_min", cfg.sgd.theta_min);
        read(b, "sgd", "samples_per_step", cfg.sgd.samples_per_step);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void ExperimentConfig::validate() const {
    if (problem.sigma.empty() || problem.sigma.size() > 2) fail("problem.sigma", "dimension must be 1 or 2");
    for (double s : problem.sigma)
        if (s < 0.0) fail("problem.sigma", "entries must be non-negative");
    double total = std::accumulate(problem.sigma.begin(), problem.sigma.end(), 0.0);
    if (!(problem.u_bar - total > 0.0)) fail("problem.u_bar", "must exceed sum(sigma) for ellipticity");
    if (problem.m < 1) fail("problem.m", "must be >= 1");
    if (problem.offset < 0) fail("problem.offset", "must be >= 0");
    if (problem.gen_level < 0) fail("problem.gen_level", "must be >= 0");
    if (problem.gen_level + problem.offset > 30) fail("problem.gen_level", "level+offset exceeds mesh guard (30)");
    if (problem.x_true.size() != problem.sigma.size()) fail("problem.x_true", "dimension must match sigma");
    for (double x : problem.x_true)
        if (!(x >= -1.0 && x <= 1.0)) fail("problem.x_true", "entries must lie in [-1,1]");
    if (!(problem.theta_true > 0.0)) fail("problem.theta_true", "must be positive");

    if (!(kernel.rho > 0.0 && kernel.rho < 1.0)) fail("kernel.rho", "must lie in (0,1)");
    if (kernel.burn_in < 0) fail("kernel.burn_in", "must be >= 0");
    if (kernel.max_iters <= kernel.burn_in) fail("kernel.max_iters", "must exceed burn_in");

    if (!(levels.rate > 0.0)) fail("levels.rate", "must be positive");
    if (!(levels.zeta < levels.rate && levels.rate < levels.beta))
        fail("levels.rate", "need zeta < rate < beta");

    if (run.n < 1) fail("run.n", "must be >= 1");
    if (run.workers < 1) fail("run.workers", "must be >= 1");

    if (!(sgd.theta_min > 0.0)) fail("sgd.theta_min", "must be positive");
    if (!(sgd.theta0 > sgd.theta_min)) fail("sgd.theta0", "must exceed theta_min");
    if (!(sgd.alpha1 > 0.0)) fail("sgd.alpha1", "must be positive");
    if (sgd.n_iters < 0) fail("sgd.n_iters", "must be >= 0");
    if (sgd.samples_per_step < 1) fail("sgd.samples_per_step", "must be >= 1");
}

ObservationSet ExperimentConfig::make_observations() const {
    return generate_data(problem.gen_seed, problem.theta_true, problem.x_true, problem.gen_level, problem.m,
                         field(), problem.offset);
}

BipSetup ExperimentConfig::make_setup(const std::string& obs_path) const {
    BipSetup setup;
    setup.field = field();
    setup.mesh_offset = problem.offset;
    setup.obs = obs_path.empty() ? make_observations() : load_observations(obs_path);
    if (setup.obs.x_true.size() != setup.field.dimension())
        throw ConfigError("observations: x_true dimension does not match problem.sigma");
    return setup;
}

}  // namespace rmlmc

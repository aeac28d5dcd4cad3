// Command-line driver: data generation, debiased posterior estimation, MSE
// studies, stochastic gradient MAP search, and strong-scaling benchmarks.
// Exit codes: 0 success, 1 validation error, 2 runtime failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "rmlmc/config.hpp"
#include "rmlmc/pool.hpp"
#include "rmlmc/quadrature.hpp"
#include "rmlmc/sgd.hpp"

namespace {

using namespace rmlmc;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot reopen " + path + " for checksum");
    std::uint64_t hash = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

struct GlobalOptions {
    std::string config_path;
    std::string output;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned workers = 0;
    bool strict = false;
    bool permissive = false;
    bool oracle = false;
    int oracle_nodes = 64;
};

ExperimentConfig load_config(const GlobalOptions& opt) {
    ExperimentConfig cfg = opt.config_path.empty() ? ExperimentConfig() : ExperimentConfig::load(opt.config_path);
    if (opt.seed_set) cfg.run.seed = opt.seed;
    if (opt.workers > 0) cfg.run.workers = opt.workers;
    if (opt.strict) cfg.run.strict = true;
    if (opt.permissive) cfg.run.strict = false;
    cfg.validate();
    return cfg;
}

RunConfig run_config(const ExperimentConfig& cfg) {
    RunConfig run;
    run.seed = cfg.run.seed;
    run.workers = cfg.run.workers;
    run.strict = cfg.run.strict;
    return run;
}

int cmd_generate_data(const GlobalOptions& opt) {
    ExperimentConfig cfg = load_config(opt);
    if (opt.seed_set) cfg.problem.gen_seed = opt.seed;
    std::string path = opt.output.empty() ? "observations.txt" : opt.output;
    ObservationSet obs = cfg.make_observations();
    save_observations(obs, path);
    std::printf("wrote %s (m=%d, gen_level=%d, seed=%llu)\n", path.c_str(), obs.m(), obs.gen_level,
                static_cast<unsigned long long>(obs.gen_seed));
    std::printf("checksum fnv1a64 %016llx\n", static_cast<unsigned long long>(fnv1a_file(path)));
    return 0;
}

int cmd_estimate(const GlobalOptions& opt, const std::string& obs_path, std::uint64_t n_override) {
    ExperimentConfig cfg = load_config(opt);
    BipSetup setup = cfg.make_setup(obs_path);
    RunConfig run = run_config(cfg);
    const std::uint64_t n = n_override > 0 ? n_override : cfg.run.n;
    const double theta = cfg.problem.theta_true;

    std::vector<SingleTermSample> samples =
        sample_posterior_batch(theta, n, cfg.levels, cfg.kernel, setup, run);
    EstimateSummary summary = summarize(samples, run.strict);

    if (!opt.output.empty()) {
        std::ofstream out = open_output(opt.output);
        out << "i,level,increment,z_value,pde_solves,kernel_steps\n";
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto& s = samples[i];
            out << i + 1 << ',' << s.level << ',' << fmt(s.increment) << ',' << fmt(s.value) << ','
                << s.cost.pde_solves << ',' << s.cost.kernel_steps << '\n';
        }
    }

    std::printf("mean %s  std_error %s  n %llu  pde_solves %llu  kernel_steps %llu  truncated %llu\n",
                fmt(summary.mean).c_str(), fmt(summary.std_error).c_str(),
                static_cast<unsigned long long>(summary.n),
                static_cast<unsigned long long>(summary.total_cost.pde_solves),
                static_cast<unsigned long long>(summary.total_cost.kernel_steps),
                static_cast<unsigned long long>(summary.truncation_count));
    std::printf("acceptance_rate %.3f\n",
                static_cast<double>(summary.total_cost.accepts) / summary.total_cost.proposals);
    std::printf("level_histogram");
    for (std::size_t l = 0; l < summary.per_level_counts.size(); ++l)
        std::printf(" %zu:%llu", l, static_cast<unsigned long long>(summary.per_level_counts[l]));
    std::printf("\n");

    if (opt.oracle) {
        MeshLevel ref = build_mesh(cfg.problem.gen_level, cfg.problem.offset);
        QuadratureReference q = quadrature_reference(theta, ref, setup, opt.oracle_nodes);
        std::printf("oracle_posterior_mean %s  |mean-oracle| %s  (3 std errors = %s)\n",
                    fmt(q.posterior_mean_qoi).c_str(), fmt(std::fabs(summary.mean - q.posterior_mean_qoi)).c_str(),
                    fmt(3.0 * summary.std_error).c_str());
    }
    return 0;
}

int cmd_mse_study(const GlobalOptions& opt, int exp_min, int exp_max, int reps) {
    if (reps < 10) throw CLI::ValidationError("--reps", "must be >= 10");
    if (exp_min < 1 || exp_max < exp_min) throw CLI::ValidationError("--exp-min/--exp-max", "bad N grid");
    ExperimentConfig cfg = load_config(opt);
    BipSetup setup = cfg.make_setup("");
    RunConfig run = run_config(cfg);
    const double theta = cfg.problem.theta_true;

    MeshLevel ref = build_mesh(cfg.problem.gen_level, cfg.problem.offset);
    const double oracle = quadrature_reference(theta, ref, setup, opt.oracle_nodes).posterior_mean_qoi;
    std::printf("oracle_posterior_mean %s\n", fmt(oracle).c_str());

    std::ofstream out;
    if (!opt.output.empty()) {
        out = open_output(opt.output);
        out << "n,rep,estimate,sq_error\n";
    }

    std::vector<double> log_n, log_mse;
    std::uint64_t offset = 0;
    for (int e = exp_min; e <= exp_max; ++e) {
        const std::uint64_t n = std::uint64_t{1} << e;
        double mse = 0.0;
        for (int r = 0; r < reps; ++r) {
            RunConfig rep_run = run;
            rep_run.stream_offset = offset;
            offset += n;
            EstimateSummary est = rmlmc_estimate(theta, n, cfg.levels, cfg.kernel, setup, rep_run);
            double sq = (est.mean - oracle) * (est.mean - oracle);
            mse += sq / reps;
            if (out.is_open()) out << n << ',' << r << ',' << fmt(est.mean) << ',' << fmt(sq) << '\n';
        }
        log_n.push_back(std::log2(static_cast<double>(n)));
        log_mse.push_back(std::log2(mse));
        std::printf("n %llu  mse %s\n", static_cast<unsigned long long>(n), fmt(mse).c_str());
    }

    // least-squares slope of log2 MSE against log2 N
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        mx += log_n[i] / log_n.size();
        my += log_mse[i] / log_mse.size();
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxy += (log_n[i] - mx) * (log_mse[i] - my);
        sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    std::printf("fitted_loglog_slope %.4f\n", sxy / sxx);
    return 0;
}

int cmd_sgd(const GlobalOptions& opt, const std::string& obs_path) {
    ExperimentConfig cfg = load_config(opt);
    BipSetup setup = cfg.make_setup(obs_path);
    RunConfig run = run_config(cfg);

    SgdTrajectory traj = run_sgd(cfg.sgd, cfg.levels, cfg.kernel, setup, run);

    if (!opt.output.empty()) {
        std::ofstream out = open_output(opt.output);
        out << "n,theta,grad_estimate,step_cost\n";
        out << 0 << ',' << fmt(traj.thetas[0]) << ",,\n";
        for (std::size_t i = 0; i + 1 < traj.thetas.size(); ++i)
            out << i + 1 << ',' << fmt(traj.thetas[i + 1]) << ',' << fmt(traj.grad_estimates[i]) << ','
                << traj.costs[i].pde_solves << '\n';
    }

    std::printf("theta_final %s after %d iterations\n", fmt(traj.thetas.back()).c_str(), cfg.sgd.n_iters);
    if (opt.oracle) {
        MapOracle oracle = quadrature_map_estimate(setup, cfg.problem.gen_level, opt.oracle_nodes);
        std::printf("oracle_theta_map %s  |final-map| %s\n", fmt(oracle.theta_map).c_str(),
                    fmt(std::fabs(traj.thetas.back() - oracle.theta_map)).c_str());
    }
    return 0;
}

int cmd_scaling(const GlobalOptions& opt, std::vector<unsigned> workers_list, int reps) {
    ExperimentConfig cfg = load_config(opt);
    BipSetup setup = cfg.make_setup("");
    const double theta = cfg.problem.theta_true;
    const std::uint64_t n = cfg.run.n;

    if (workers_list.empty()) workers_list = {1, 2, 4, 8};
    unsigned cores = std::thread::hardware_concurrency();
    for (unsigned w : workers_list)
        if (cores > 0 && w > cores)
            std::fprintf(stderr, "warning: %u workers exceeds %u hardware threads; efficiency will degrade\n",
                         w, cores);

    auto task = [&](std::size_t i) {
        RngStream rng = derive_stream(cfg.run.seed, i);
        (void)single_term_posterior(theta, cfg.levels, cfg.kernel, setup, rng);
    };
    ScalingReport report = benchmark_scaling(workers_list, n, task, reps);

    std::ofstream out;
    if (!opt.output.empty()) {
        out = open_output(opt.output);
        out << "workers,n,wall_seconds_median,speedup,efficiency,max_task_seconds\n";
    }
    for (std::size_t i = 0; i < report.worker_counts.size(); ++i) {
        std::printf("workers %u  wall %.4fs  speedup %.3f  efficiency %.3f  max_task %.6fs\n",
                    report.worker_counts[i], report.wall_seconds[i], report.speedup[i], report.efficiency[i],
                    report.max_task_seconds[i]);
        if (out.is_open())
            out << report.worker_counts[i] << ',' << n << ',' << fmt(report.wall_seconds[i]) << ','
                << fmt(report.speedup[i]) << ',' << fmt(report.efficiency[i]) << ','
                << fmt(report.max_task_seconds[i]) << '\n';
    }

    // cross-check: the reduced estimate must not depend on the worker count
    RunConfig probe = run_config(cfg);
    probe.workers = 1;
    EstimateSummary serial = rmlmc_estimate(theta, n, cfg.levels, cfg.kernel, setup, probe);
    for (unsigned w : workers_list) {
        probe.workers = w;
        EstimateSummary par = rmlmc_estimate(theta, n, cfg.levels, cfg.kernel, setup, probe);
        if (par.mean != serial.mean) throw std::runtime_error("estimate differs across worker counts");
    }
    std::printf("estimates bit-identical across worker counts: mean %s\n", fmt(serial.mean).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unbiased randomized multilevel MCMC for an elliptic Bayesian inverse problem"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions opt;
    app.add_option("--config", opt.config_path, "JSON configuration file (defaults reproduce the reference problem)");
    app.add_option("--output", opt.output, "output file (observations or CSV, per subcommand)");
    app.add_option("--seed", opt.seed, "override run seed (and gen seed for generate-data)")
        ->each([&](const std::string&) { opt.seed_set = true; });
    app.add_option("--workers", opt.workers, "override worker count");
    app.add_flag("--strict", opt.strict, "fail on any truncated increment");
    app.add_flag("--permissive", opt.permissive, "report truncated increments instead of failing");
    app.add_flag("--oracle", opt.oracle, "print quadrature oracle values alongside estimates");
    app.add_option("--oracle-nodes", opt.oracle_nodes, "quadrature nodes per dimension for --oracle")
        ->default_val(64);

    auto* gen = app.add_subcommand("generate-data", "simulate observations and write them to a file");

    auto* est = app.add_subcommand("estimate", "randomized-MLMC posterior estimate of the theta-score");
    std::string est_obs;
    std::uint64_t est_n = 0;
    est->add_option("--obs", est_obs, "observation file (default: generate from config)");
    est->add_option("--n", est_n, "number of single-term samples (default: run.n)");

    auto* mse = app.add_subcommand("mse-study", "MSE against the quadrature oracle over a grid of N");
    int exp_min = 6, exp_max = 12, mse_reps = 20;
    mse->add_option("--exp-min", exp_min, "smallest N = 2^exp")->default_val(6);
    mse->add_option("--exp-max", exp_max, "largest N = 2^exp")->default_val(12);
    mse->add_option("--reps", mse_reps, "repetitions per N (>= 10)")->default_val(20);

    auto* sgd = app.add_subcommand("sgd", "stochastic gradient ascent to the MAP precision");
    std::string sgd_obs;
    sgd->add_option("--obs", sgd_obs, "observation file (default: generate from config)");

    auto* scal = app.add_subcommand("scaling", "strong-scaling benchmark of the posterior sampler");
    std::vector<unsigned> workers_list;
    int scaling_reps = 3;
    scal->add_option("--workers-list", workers_list, "worker counts to benchmark (default 1 2 4 8)");
    scal->add_option("--reps", scaling_reps, "repetitions per configuration")->default_val(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_generate_data(opt);
        if (est->parsed()) return cmd_estimate(opt, est_obs, est_n);
        if (mse->parsed()) return cmd_mse_study(opt, exp_min, exp_max, mse_reps);
        if (sgd->parsed()) return cmd_sgd(opt, sgd_obs);
        if (scal->parsed()) return cmd_scaling(opt, workers_list, scaling_reps);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

#include "rmlmc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rmlmc {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from the usual cosine initial guesses.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

// Walks the tensor grid over [-1,1]^J, invoking visit(u, log_weight) with
// log_weight the log of the prior-normalized tensor weight.
void for_each_tensor_node(int dimension, int nodes_per_dim,
                          const std::function<void(std::span<const double>, double)>& visit) {
    GaussLegendre rule = gauss_legendre(nodes_per_dim);
    std::vector<double> u(dimension);
    std::vector<int> idx(dimension, 0);
    const double log_prior = -dimension * std::log(2.0);
    for (;;) {
        double log_w = log_prior;
        for (int j = 0; j < dimension; ++j) {
            u[j] = rule.nodes[idx[j]];
            log_w += std::log(rule.weights[idx[j]]);
        }
        visit(u, log_w);
        int j = 0;
        while (j < dimension && ++idx[j] == nodes_per_dim) idx[j++] = 0;
        if (j == dimension) break;
    }
}

}  // namespace

PosteriorQuadrature::PosteriorQuadrature(const MeshLevel& mesh, const BipSetup& setup, int nodes_per_dim)
    : m_(setup.obs.m()), nodes_per_dim_(nodes_per_dim) {
    const int dimension = static_cast<int>(setup.field.dimension());
    if (dimension > 3) throw std::invalid_argument("PosteriorQuadrature: latent dimension > 3 is intractable");
    for_each_tensor_node(dimension, nodes_per_dim, [&](std::span<const double> u, double log_w) {
        log_weight_.push_back(log_w);
        resid_.push_back(residual_sq(mesh, setup.field, u, setup.obs));
    });
}

QuadratureReference PosteriorQuadrature::evaluate(double theta) const {
    if (!(theta > 0.0)) throw std::invalid_argument("PosteriorQuadrature: theta must be positive");
    // log-sum-exp over log(w) + log(gamma) keeps tiny densities representable.
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> log_terms(resid_.size());
    for (std::size_t i = 0; i < resid_.size(); ++i) {
        log_terms[i] = log_weight_[i] + log_gamma_from_residual(theta, m_, resid_[i]);
        max_term = std::max(max_term, log_terms[i]);
    }
    double mass = 0.0, weighted_qoi = 0.0;
    for (std::size_t i = 0; i < resid_.size(); ++i) {
        double t = std::exp(log_terms[i] - max_term);
        mass += t;
        weighted_qoi += t * qoi_from_residual(theta, m_, resid_[i]);
    }
    QuadratureReference ref;
    ref.posterior_mean_qoi = weighted_qoi / mass;
    ref.log_evidence = max_term + std::log(mass);
    return ref;
}

QuadratureReference quadrature_reference(double theta, const MeshLevel& mesh, const BipSetup& setup,
                                         int nodes_per_dim) {
    return PosteriorQuadrature(mesh, setup, nodes_per_dim).evaluate(theta);
}

double quadrature_posterior_increment(double theta, int level, const BipSetup& setup, int nodes_per_dim) {
    MeshLevel fine = build_mesh(level, setup.mesh_offset);
    double value = quadrature_reference(theta, fine, setup, nodes_per_dim).posterior_mean_qoi;
    if (level > 0) {
        MeshLevel coarse = build_mesh(level - 1, setup.mesh_offset);
        value -= quadrature_reference(theta, coarse, setup, nodes_per_dim).posterior_mean_qoi;
    }
    return value;
}

double prior_expectation(const std::function<double(std::span<const double>)>& f, int dimension,
                         int nodes_per_dim) {
    if (dimension < 1 || dimension > 3) throw std::invalid_argument("prior_expectation: dimension must be 1..3");
    double total = 0.0;
    for_each_tensor_node(dimension, nodes_per_dim, [&](std::span<const double> u, double log_w) {
        total += std::exp(log_w) * f(u);
    });
    return total;
}

}  // namespace rmlmc

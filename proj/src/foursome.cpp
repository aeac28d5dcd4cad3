#include "rmlmc/foursome.hpp"

#include <cmath>
#include <stdexcept>

#include "rmlmc/coupling.hpp"

namespace rmlmc {

void KernelConfig::validate() const {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("KernelConfig: rho must be in (0,1)");
    if (burn_in < 0) throw std::invalid_argument("KernelConfig: burn_in must be >= 0");
    if (max_iters <= burn_in) throw std::invalid_argument("KernelConfig: max_iters must exceed burn_in");
}

namespace {

double chain_residual(const MeshLevel& mesh, const BipSetup& setup, std::span<const double> z,
                      CostCounters& cost) {
    ++cost.pde_solves;
    return residual_sq(mesh, setup.field, transform_prior(z), setup.obs);
}

std::vector<double> draw_normals(std::size_t d, RngStream& rng) {
    std::vector<double> z(d);
    for (double& x : z) x = rng.normal();
    return z;
}

// Proposals for one level pair, coupling uniform consumed here (none once the
// pair has met: the primed chain then mirrors the unprimed move verbatim).
struct PairProposal {
    std::vector<double> prop_u;
    std::vector<double> prop_p;
    double resid_u = 0.0;
    double resid_p = 0.0;
};

PairProposal propose_pair(const ChainState& chain_u, const ChainState& chain_p, bool met,
                          const MeshLevel& mesh, const KernelConfig& cfg, const BipSetup& setup,
                          const std::vector<double>& base_noise, double coalescence_uniform,
                          CostCounters& cost) {
    const double scale = std::sqrt(1.0 - cfg.rho * cfg.rho);
    PairProposal pp;
    pp.prop_u = pcn_propose(chain_u.z, cfg.rho, base_noise);
    pp.resid_u = chain_residual(mesh, setup, pp.prop_u, cost);
    if (met) {
        pp.prop_p = pp.prop_u;
        pp.resid_p = pp.resid_u;
        return pp;
    }
    std::vector<double> mean_u(chain_u.z.size()), mean_p(chain_p.z.size());
    for (std::size_t j = 0; j < mean_u.size(); ++j) {
        mean_u[j] = cfg.rho * chain_u.z[j];
        mean_p[j] = cfg.rho * chain_p.z[j];
    }
    CoupledNoise cpl = reflection_coupled_noise(mean_u, mean_p, scale, base_noise, coalescence_uniform);
    if (cpl.coalesced) {
        // Verbatim copy so within-level meeting is exact equality.
        pp.prop_p = pp.prop_u;
        pp.resid_p = pp.resid_u;
    } else {
        pp.prop_p.resize(mean_p.size());
        for (std::size_t j = 0; j < pp.prop_p.size(); ++j) pp.prop_p[j] = mean_p[j] + scale * cpl.noise_b[j];
        pp.resid_p = chain_residual(mesh, setup, pp.prop_p, cost);
    }
    return pp;
}

// Shared-uniform accept/reject for both chains of a level pair.
bool apply_pair(ChainState& chain_u, ChainState& chain_p, PairProposal&& pp, double log_u, double theta,
                int m) {
    bool acc_u = log_u < pcn_accept_log_ratio(log_gamma_from_residual(theta, m, pp.resid_u),
                                              log_gamma_from_residual(theta, m, chain_u.resid_sq));
    bool acc_p = log_u < pcn_accept_log_ratio(log_gamma_from_residual(theta, m, pp.resid_p),
                                              log_gamma_from_residual(theta, m, chain_p.resid_sq));
    if (acc_u) {
        chain_u.z = pp.prop_u;
        chain_u.resid_sq = pp.resid_u;
    }
    if (acc_p) {
        chain_p.z = std::move(pp.prop_p);
        chain_p.resid_sq = pp.resid_p;
    }
    return acc_u;
}

}  // namespace

CoupledFoursome init_coupled_foursome(int level, const KernelConfig& cfg, double theta, const BipSetup& setup,
                                      RngStream& rng, CostCounters& cost) {
    cfg.validate();
    if (level < 0) throw std::invalid_argument("init_coupled_foursome: level must be >= 0");
    if (!(theta > 0.0)) throw std::invalid_argument("init_coupled_foursome: theta must be positive");

    CoupledFoursome st;
    st.mesh_fine = build_mesh(level, setup.mesh_offset);
    st.has_coarse = level > 0;
    if (st.has_coarse) st.mesh_coarse = build_mesh(level - 1, setup.mesh_offset);

    // One prior draw per pair: fine and coarse chains of a pair start at the
    // same point so the cross-level difference is driven only by the level
    // gap (the primed pair is an independent draw, as the lag construction
    // requires).
    const std::size_t d = setup.field.dimension();
    st.fine_u.z = draw_normals(d, rng);
    if (st.has_coarse) st.coarse_u.z = st.fine_u.z;
    st.fine_p.z = draw_normals(d, rng);
    if (st.has_coarse) st.coarse_p.z = st.fine_p.z;

    st.fine_u.resid_sq = chain_residual(st.mesh_fine, setup, st.fine_u.z, cost);
    st.fine_p.resid_sq = chain_residual(st.mesh_fine, setup, st.fine_p.z, cost);
    if (st.has_coarse) {
        st.coarse_u.resid_sq = chain_residual(st.mesh_coarse, setup, st.coarse_u.z, cost);
        st.coarse_p.resid_sq = chain_residual(st.mesh_coarse, setup, st.coarse_p.z, cost);
    }
    st.step = 0;
    return st;
}

void advance_unprimed_pair(CoupledFoursome& st, const KernelConfig& cfg, double theta, const BipSetup& setup,
                           RngStream& rng, CostCounters& cost) {
    const int m = setup.obs.m();
    std::vector<double> noise = draw_normals(st.fine_u.z.size(), rng);

    std::vector<double> prop_f = pcn_propose(st.fine_u.z, cfg.rho, noise);
    double resid_f = chain_residual(st.mesh_fine, setup, prop_f, cost);
    std::vector<double> prop_c;
    double resid_c = 0.0;
    if (st.has_coarse) {
        prop_c = pcn_propose(st.coarse_u.z, cfg.rho, noise);
        resid_c = chain_residual(st.mesh_coarse, setup, prop_c, cost);
    }

    const double log_u = std::log(rng.uniform());
    ++cost.proposals;
    if (log_u < pcn_accept_log_ratio(log_gamma_from_residual(theta, m, resid_f),
                                     log_gamma_from_residual(theta, m, st.fine_u.resid_sq))) {
        st.fine_u.z = std::move(prop_f);
        st.fine_u.resid_sq = resid_f;
        ++cost.accepts;
    }
    if (st.has_coarse &&
        log_u < pcn_accept_log_ratio(log_gamma_from_residual(theta, m, resid_c),
                                     log_gamma_from_residual(theta, m, st.coarse_u.resid_sq))) {
        st.coarse_u.z = std::move(prop_c);
        st.coarse_u.resid_sq = resid_c;
    }
    ++st.step;
    ++cost.kernel_steps;
}

void foursome_step(CoupledFoursome& st, const KernelConfig& cfg, double theta, const BipSetup& setup,
                   RngStream& rng, CostCounters& cost) {
    const int m = setup.obs.m();
    std::vector<double> base_noise = draw_normals(st.fine_u.z.size(), rng);

    // One coalescence uniform shared by both levels' couplings: with the
    // pairs' levels tightly coupled, this makes tau_l and tau_{l-1} coincide
    // almost always, which the cross-level cancellation relies on.
    const bool fine_met = st.met_fine.has_value();
    const bool coarse_met = !st.has_coarse || st.met_coarse.has_value();
    const double coal_u = (fine_met && coarse_met) ? 0.0 : rng.uniform();

    PairProposal fine = propose_pair(st.fine_u, st.fine_p, fine_met, st.mesh_fine, cfg, setup, base_noise,
                                     coal_u, cost);
    PairProposal coarse;
    if (st.has_coarse)
        coarse = propose_pair(st.coarse_u, st.coarse_p, st.met_coarse.has_value(), st.mesh_coarse, cfg, setup,
                              base_noise, coal_u, cost);

    const double log_u = std::log(rng.uniform());
    ++cost.proposals;

    if (apply_pair(st.fine_u, st.fine_p, std::move(fine), log_u, theta, m)) ++cost.accepts;
    if (st.has_coarse) apply_pair(st.coarse_u, st.coarse_p, std::move(coarse), log_u, theta, m);

    ++st.step;
    ++cost.kernel_steps;
    if (!st.met_fine && st.fine_u.z == st.fine_p.z) st.met_fine = st.step;
    if (st.has_coarse && !st.met_coarse && st.coarse_u.z == st.coarse_p.z) st.met_coarse = st.step;
}

IncrementEstimate unbiased_increment(int level, const KernelConfig& cfg, double theta, const BipSetup& setup,
                                     RngStream& rng) {
    cfg.validate();
    IncrementEstimate est;
    est.level = level;
    const int m = setup.obs.m();

    CoupledFoursome st = init_coupled_foursome(level, cfg, theta, setup, rng, est.cost);

    auto base_value = [&]() {
        return st.phi(st.fine_u, theta, m) - (st.has_coarse ? st.phi(st.coarse_u, theta, m) : 0.0);
    };
    double base_term = 0.0;
    bool base_recorded = false;
    if (cfg.burn_in == 0) {
        base_term = base_value();
        base_recorded = true;
    }

    advance_unprimed_pair(st, cfg, theta, setup, rng, est.cost);
    if (!base_recorded && st.step == cfg.burn_in) {
        base_term = base_value();
        base_recorded = true;
    }

    double sum_fine = 0.0;
    double sum_coarse = 0.0;
    if (cfg.burn_in == 0) {
        // the warm-up step is time n = 1, already inside the correction range
        sum_fine += st.phi(st.fine_u, theta, m) - st.phi(st.fine_p, theta, m);
        if (st.has_coarse) sum_coarse += st.phi(st.coarse_u, theta, m) - st.phi(st.coarse_p, theta, m);
    }
    while ((st.step < cfg.burn_in || !st.pairs_met()) && st.step < cfg.max_iters) {
        foursome_step(st, cfg, theta, setup, rng, est.cost);
        const auto n = st.step;
        if (!base_recorded && n == cfg.burn_in) {
            base_term = base_value();
            base_recorded = true;
        }
        if (n > cfg.burn_in) {
            // Terms at and after each pair's meeting step vanish identically.
            if (!st.met_fine || n < *st.met_fine)
                sum_fine += st.phi(st.fine_u, theta, m) - st.phi(st.fine_p, theta, m);
            if (st.has_coarse && (!st.met_coarse || n < *st.met_coarse))
                sum_coarse += st.phi(st.coarse_u, theta, m) - st.phi(st.coarse_p, theta, m);
        }
    }

    est.truncated = !st.pairs_met() || !base_recorded;
    est.tau_fine = st.met_fine.value_or(-1);
    est.tau_coarse = st.has_coarse ? st.met_coarse.value_or(-1) : -1;
    est.value = base_term + sum_fine - sum_coarse;
    return est;
}

}  // namespace rmlmc

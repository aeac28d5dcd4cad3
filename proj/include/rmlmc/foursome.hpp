#ifndef RMLMC_FOURSOME_HPP
#define RMLMC_FOURSOME_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rmlmc/bip.hpp"
#include "rmlmc/rng.hpp"

namespace rmlmc {

struct KernelConfig {
    double rho = 0.4;
    int burn_in = 100;            // n*, past the bulk of the meeting-time tail
    std::int64_t max_iters = 100000;

    void validate() const;
};

struct CostCounters {
    std::uint64_t pde_solves = 0;
    std::uint64_t kernel_steps = 0;
    std::uint64_t accepts = 0;    // fine unprimed chain
    std::uint64_t proposals = 0;

    CostCounters& operator+=(const CostCounters& other) {
        pde_solves += other.pde_solves;
        kernel_steps += other.kernel_steps;
        accepts += other.accepts;
        proposals += other.proposals;
        return *this;
    }
};

struct ChainState {
    std::vector<double> z;
    double resid_sq = 0.0;        // cached ||G^l(u(z)) - y||^2 at the chain's level
};

// The two coupled chain pairs of the lag-1 construction: an unprimed pair
// (fine/coarse levels, common proposal noise) one step ahead in time of an
// independent primed pair. Within a level the primed chain is coupled to the
// unprimed one through reflection-maximal proposals and a shared acceptance
// uniform; after a pair meets it stays identical.
struct CoupledFoursome {
    MeshLevel mesh_fine;
    MeshLevel mesh_coarse;        // meaningful iff has_coarse
    bool has_coarse = false;
    ChainState fine_u, fine_p;
    ChainState coarse_u, coarse_p;
    std::int64_t step = 0;        // unprimed chains are at time `step`
    std::optional<std::int64_t> met_fine;
    std::optional<std::int64_t> met_coarse;

    bool pairs_met() const { return met_fine.has_value() && (!has_coarse || met_coarse.has_value()); }

    double loglik(const ChainState& chain, double theta, int m) const {
        return log_gamma_from_residual(theta, m, chain.resid_sq);
    }
    double phi(const ChainState& chain, double theta, int m) const {
        return qoi_from_residual(theta, m, chain.resid_sq);
    }
};

// All four chains drawn i.i.d. N(0, I_J) in z-space with residuals evaluated;
// step = 0, no warm-up yet.
CoupledFoursome init_coupled_foursome(int level, const KernelConfig& cfg, double theta, const BipSetup& setup,
                                      RngStream& rng, CostCounters& cost);

// One pCN step of the unprimed pair only (shared noise across levels, shared
// acceptance uniform); the lag-1 warm-up. Advances step by 1.
void advance_unprimed_pair(CoupledFoursome& state, const KernelConfig& cfg, double theta, const BipSetup& setup,
                           RngStream& rng, CostCounters& cost);

// One coupled transition of all four chains. Per level: the unprimed proposal
// uses the shared base noise; the primed proposal comes from a
// reflection-maximal coupling against the unprimed proposal mean reusing that
// base noise; one uniform drives all four accept decisions. A met pair's
// primed chain copies the unprimed chain exactly. Records first within-level
// meetings in met_fine/met_coarse.
void foursome_step(CoupledFoursome& state, const KernelConfig& cfg, double theta, const BipSetup& setup,
                   RngStream& rng, CostCounters& cost);

struct IncrementEstimate {
    double value = 0.0;
    int level = 0;
    std::int64_t tau_fine = -1;
    std::int64_t tau_coarse = -1;  // -1 when there is no coarse pair
    bool truncated = false;
    CostCounters cost;
};

// Unbiased estimator of the increment between the level-l and level-(l-1)
// posterior means of the theta-score (level 0: the level-0 mean itself).
// Simulates the foursome until both pairs have met and the burn-in time has
// passed, or max_iters is hit (then `truncated` is set and the partial sums
// are returned).
IncrementEstimate unbiased_increment(int level, const KernelConfig& cfg, double theta, const BipSetup& setup,
                                     RngStream& rng);

}  // namespace rmlmc

#endif

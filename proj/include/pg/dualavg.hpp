#ifndef PG_DUALAVG_HPP
#define PG_DUALAVG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pg/graph.hpp"
#include "pg/objective.hpp"

namespace pg {

enum class ProjKind { none, ball, psd_cone };

/// psi choices behind the projection pi_t: unconstrained scaling, Euclidean
/// ball of radius D, or the PSD cone for flattened d x d matrices.
struct ProjectionSpec {
    ProjKind kind = ProjKind::none;
    double radius = 0.0;  // ball
    int side = 0;         // psd_cone matrix side

    static ProjectionSpec none() { return {}; }
    static ProjectionSpec ball(double d);
    static ProjectionSpec psd_cone(int side);
};

/// gamma(t) = a * t^alpha with a > 0 and alpha in (-1, 0); accepts real t so
/// asynchronous time estimates can be plugged in directly.
struct StepSchedule {
    double a = 1.0;
    double alpha = -0.5;

    StepSchedule(double a_, double alpha_);
    double gamma(double t) const;
    double capital_gamma(double t) const { return t * gamma(t); }
};

/// pi_t(z): gamma(t) z, then the psi-prox (ball rescaling or PSD eigenvalue
/// clipping). Requires t > 0.
Vec project(const Vec& z, double t, const StepSchedule& sched, const ProjectionSpec& psi);

struct BiasRecord {
    long long t = 0;
    Vec eps_hat;
    Vec omega_hat;
    double inner = 0.0;  // eps_hat . omega_hat
    Vec zhat;
};

/// Snapshot of all per-node optimizer variables at one instant.
struct OptimizerState {
    long long t = 0;
    std::vector<Vec> z;
    std::vector<Vec> theta;
    std::vector<Vec> theta_bar;
    std::vector<int> aux;
    Vec m;  // async time estimates, empty for sync runs
};

struct OptPoint {
    long long t = 0;
    double risk_mean = 0.0;  // mean over nodes of F(theta_bar_i)
    double risk_std = 0.0;
    double bias_inner = 0.0;  // eps_hat . omega_hat when recorded, else 0
    double auc_mean = 0.0;    // mean over nodes when AUC tracking is enabled
};

struct OptResult {
    std::string mode;
    std::uint64_t seed = 0;
    std::vector<OptPoint> points;
    std::vector<BiasRecord> bias;
    OptimizerState final_state;
};

struct CentralPoint {
    long long t = 0;
    double risk_bar = 0.0;        // F(theta_bar(t))
    double grad_norm = 0.0;       // ||g(t)|| for this step
    double max_grad_norm = 0.0;   // running max up to t
};

struct CentralResult {
    std::vector<CentralPoint> points;
    Vec theta;
    Vec theta_bar;
};

/// Options shared by the optimizer runners. record_every <= 0 records only
/// the final step.
struct OptOptions {
    long long record_every = 0;
    bool record_bias = false;
    bool track_auc = false;
};

CentralResult centralized_da(const PairwiseObjective& obj, const Dataset& data,
                             const StepSchedule& sched, const ProjectionSpec& psi, long long T,
                             long long record_every = 1);

CentralResult stochastic_da(const PairwiseObjective& obj, const Dataset& data,
                            const StepSchedule& sched, const ProjectionSpec& psi, long long T,
                            std::uint64_t seed, long long record_every = 1);

OptResult gossip_pairwise_da_sync(const Graph& g, const PairwiseObjective& obj,
                                  const Dataset& data, const StepSchedule& sched,
                                  const ProjectionSpec& psi, long long T, std::uint64_t seed,
                                  const OptOptions& opts = {});

/// Same loop as the sync variant, but each node pairs its own point with a
/// uniformly random partner instead of the propagated auxiliary observation.
OptResult unbiased_baseline_sync(const Graph& g, const PairwiseObjective& obj, const Dataset& data,
                                 const StepSchedule& sched, const ProjectionSpec& psi, long long T,
                                 std::uint64_t seed, const OptOptions& opts = {});

/// Asynchronous variant driven by the global event clock: only the drawn
/// edge's endpoints update, with 1/p_k gradient weights, per-node time
/// estimates m_k and step size gamma(m_k).
OptResult gossip_pairwise_da_async(const Graph& g, const PairwiseObjective& obj,
                                   const Dataset& data, const StepSchedule& sched,
                                   const ProjectionSpec& psi, long long T, std::uint64_t seed,
                                   const OptOptions& opts = {});

/// Average gradient bias across the network for the given synchronized
/// state: eps_hat = (1/n) sum_i (grad f(theta_i; x_i, x_aux_i)
///                               - (1/n) sum_j grad f(theta_i; x_i, x_j)).
BiasRecord bias_term(const OptimizerState& state, const PairwiseObjective& obj,
                     const Dataset& data, const StepSchedule& sched, const ProjectionSpec& psi);

}  // namespace pg

#endif

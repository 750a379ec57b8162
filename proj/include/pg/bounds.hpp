#ifndef PG_BOUNDS_HPP
#define PG_BOUNDS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pg/dualavg.hpp"
#include "pg/graph.hpp"

namespace pg {

/// c(G) = (lambda_{n-1}/|E|) (1 - lambda_{n-1}/(2|E|)).
double c_of_graph(const Graph& g);

/// tau(eps) = max(0, log(sqrt(n)/eps) / |log c(G)|). The absolute value is
/// the consistent reading of the theorem/corollary pair since c(G) < 1.
double mixing_time(const Graph& g, double eps);

struct RateInputs {
    long long T = 2;
    StepSchedule sched{1.0, -0.5};
    double lipschitz = 1.0;
    double dist_to_opt = 1.0;  // ||theta*|| for C1, ||theta_0 - theta*|| for the corollary
    double spectral_gap = 0.0;
    double nedges = 0.0;
    double eps = 0.0;                         // ergodic theorem epsilon
    std::optional<std::vector<double>> bias;  // empirical series for C3, entry t-1 = term t
};

struct RateDecomposition {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

/// C1/C2/C3 of the general gossip dual averaging rate; all sums are exact.
/// C3 averages the first T-1 entries of the supplied empirical series and
/// requires it when asked for (bias present); param_error otherwise.
RateDecomposition rate_bound_decomposition(const RateInputs& in);

/// The corrected refined rate for gamma(t) = a/sqrt(t), implemented exactly
/// as printed (first form).
double rate_bound_corollary(long long T, double a, const Graph& g, double lipschitz, double dist0);

/// Average two-hop distance through intermediaries for the pair (i, j).
double delta_tilde(const Graph& g, int i, int j);

/// (R L / 36) sqrt(1/(1 + t/delta)^2 + 1/(1 + t)).
double lower_bound(double radius, double lipschitz, double t, double delta);

/// Lexicographically smallest pair at maximum graph distance.
std::pair<int, int> worst_pair(const Graph& g);

struct HardInstanceParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double delta = 1.0;
};

/// The pairwise hard instance: chain of nonsmooth couplings between a
/// max-distance pair (i0, i1) routed through 2k random intermediaries.
/// F(theta) = (1/n^2) sum over ordered pairs of the case table; subgradients
/// take 0 at |.| kinks.
struct HardInstance {
    int n = 0;
    int k = 0;
    int i0 = 0, i1 = 0;
    std::vector<int> j0, j1;  // intermediaries, k each
    HardInstanceParams params;
    double delta_tilde_value = 0.0;  // over all intermediaries per the theorem

    int min_dim() const { return 2 * k + 1; }
    double pair_value(int u, int v, const Vec& theta) const;
    double objective(const Vec& theta) const;
    Vec subgradient(const Vec& theta) const;
};

HardInstance hard_instance(const Graph& g, int k, const HardInstanceParams& params,
                           std::uint64_t seed);

}  // namespace pg

#endif

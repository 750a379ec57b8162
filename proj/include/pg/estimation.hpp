#ifndef PG_ESTIMATION_HPP
#define PG_ESTIMATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pg/graph.hpp"
#include "pg/pairwise.hpp"

namespace pg {

enum class Protocol { gosta, u1, u2 };

std::string protocol_name(Protocol p);

struct TrajectoryPoint {
    long long t = 0;
    Vec z;             // snapshot of local estimates
    double err_l2 = 0; // ||z - target||, target is U_n 1 (gosta/u2) or h_bar (u1)
    double mean_z = 0;
    double std_z = 0;
};

struct Trajectory {
    std::string protocol;
    std::uint64_t seed = 0;
    std::vector<TrajectoryPoint> points;
};

// Protocol simulators. All require the graph connected and non-bipartite and
// g.n == km.n; they are deterministic given the seed (draws at iteration t
// come from the (seed, t) counter stream). record_every <= 0 records only
// the final state.
Trajectory gosta_sync(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                      long long record_every = 1);
/// GoSta on the asynchronous event clock: only the drawn edge's endpoints
/// update, with degree-corrected running-average weights. No bound evaluator
/// is provided for this variant.
Trajectory gosta_async(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                       long long record_every = 1);
Trajectory u1_gossip(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                     long long record_every = 1);
Trajectory u2_gossip(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                     long long record_every = 1);

/// E[z(t)] for t = 0..T (entry t is E[z(t)], entry 0 the zero vector),
/// computed exactly from products of expected transition matrices. The
/// per-protocol power offsets follow the implemented iteration order and are
/// pinned against brute_force_expectation in the tests. Oracle scale:
/// T <= 500, n <= 40.
std::vector<Vec> exact_expectation(const Graph& g, const KernelMatrix& km, long long T,
                                   Protocol protocol);

/// E[z(t)] for t = 0..T by full enumeration of equally likely edge
/// sequences. Requires |E|^(T * draws_per_iter) <= 1e6.
std::vector<Vec> brute_force_expectation(const Graph& g, const KernelMatrix& km, long long T,
                                         Protocol protocol);

// Right-hand sides of the estimation bounds.
double bound_gosta_expectation(const Graph& g, const KernelMatrix& km, long long t);
double bound_gosta_deviation(const Graph& g, const KernelMatrix& km, long long t);
/// Per-node bound |E| ||H e_k|| / (2 lambda_{n-1} t).
Vec bound_u1_expectation(const Graph& g, const KernelMatrix& km, long long t);
double bound_u2_expectation(const Graph& g, const KernelMatrix& km, long long t);

/// Per-step sample statistics over independent seeded runs.
struct TrajectoryStats {
    std::vector<long long> steps;
    std::vector<Vec> z_mean;
    std::vector<Vec> z_std;
    std::vector<double> err_mean;
    std::vector<double> err_std;
    int n_runs = 0;

    double z_stderr(std::size_t step, int component) const;
    double err_stderr(std::size_t step) const;
};

TrajectoryStats monte_carlo(const std::function<Trajectory(std::uint64_t)>& run, int n_runs,
                            std::uint64_t base_seed);

}  // namespace pg

#endif

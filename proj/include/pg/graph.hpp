#ifndef PG_GRAPH_HPP
#define PG_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pg/matrix.hpp"

namespace pg {

/// Undirected simple communication graph. Nodes are 0-indexed; edges are
/// stored once with i < j. Adjacency and degrees are kept consistent with
/// the edge list by construction.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::uint8_t> adjacency;  // n*n, symmetric 0/1
    std::vector<int> degrees;

    bool adjacent(int i, int j) const { return adjacency[static_cast<std::size_t>(i) * n + j] != 0; }
    int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Laplacian spectrum. Eigenvalues ascend; spectral_gap is the second
/// smallest (lambda_{n-1} in the usual decreasing-order notation).
struct Spectrum {
    Matrix laplacian;
    Vec eigenvalues;
    double spectral_gap = 0.0;
};

/// W_alpha = I - L / (alpha |E|), doubly stochastic for connected graphs.
struct TransitionMatrix {
    double alpha = 1.0;
    Matrix w;
    /// Second largest eigenvalue of W_alpha via the Laplacian relation
    /// lambda_2(alpha) = 1 - lambda_{n-1} / (alpha |E|).
    double lambda2 = 0.0;
};

/// All-pairs shortest-path hop counts; -1 marks unreachable pairs.
struct DistanceTable {
    int n = 0;
    std::vector<int> dist;  // n*n
    int diameter = 0;       // max finite entry

    int operator()(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
};

// Generators. All return simple undirected graphs and validate their
// parameters with param_error.
Graph make_complete(int n);
Graph make_cycle(int n);
Graph make_grid2d(int rows, int cols, bool wrap);
/// Ring lattice with k/2 neighbours a side, then rewiring with probability p.
/// Odd k is rounded up to the next even value (reported via effective_k).
/// Regenerates with incremented seed until connected, at most 100 attempts.
Graph make_watts_strogatz(int n, int k, double p, std::uint64_t seed, int* effective_k = nullptr);
Graph make_from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

Spectrum spectrum(const Graph& g);
Matrix laplacian(const Graph& g);

TransitionMatrix transition(const Graph& g, double alpha);

/// Tensor product with the k-node complete graph: kn nodes, k^2 |E| edges,
/// (a,i) ~ (b,j) iff i ~ j in g. Requires g connected, non-bipartite and
/// non-complete so that the gap identity lambda^{tensor} = k * lambda holds.
Graph tensor_with_complete(const Graph& g, int k);

DistanceTable distances(const Graph& g);
bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

/// Topology descriptor grammar used by config files and the CLI:
///   complete:<n> | cycle:<n> | grid2d:<rows>x<cols>[:wrap] | grid:<n>
///   | ws:<n>:<k>:<p>:<seed> | file:<path>
/// grid:<n> picks the most nearly square rows x cols = n torus.
/// Substitutions performed while building (e.g. odd Watts-Strogatz k rounded
/// up) are appended to *notes when provided.
Graph parse_topology(const std::string& descriptor, std::vector<std::string>* notes = nullptr);

}  // namespace pg

#endif

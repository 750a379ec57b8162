#include "pg/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "pg/errors.hpp"
#include "pg/rng.hpp"

namespace pg {

double c_of_graph(const Graph& g) {
    if (!is_connected(g)) throw param_error("c_of_graph: graph must be connected");
    if (is_bipartite(g)) throw param_error("c_of_graph: graph must be non-bipartite");
    const double gap = spectrum(g).spectral_gap;
    const double m = static_cast<double>(g.edge_count());
    return gap / m * (1.0 - gap / (2.0 * m));
}

double mixing_time(const Graph& g, double eps) {
    if (!(eps > 0.0)) throw param_error("mixing_time: eps must be positive");
    const double c = c_of_graph(g);
    const double num = std::log(std::sqrt(static_cast<double>(g.n)) / eps);
    return std::max(0.0, num / std::abs(std::log(c)));
}

RateDecomposition rate_bound_decomposition(const RateInputs& in) {
    if (in.T < 2) throw param_error("rate_bound_decomposition: T must be >= 2");
    if (!(in.spectral_gap > 0.0) || !(in.nedges > 0.0))
        throw param_error("rate_bound_decomposition: need positive spectral gap and edge count");
    const double T = static_cast<double>(in.T);
    double gamma_sum = 0.0;
    for (long long t = 1; t <= in.T - 1; ++t) gamma_sum += in.sched.gamma(static_cast<double>(t));

    RateDecomposition out;
    const double l2 = in.lipschitz * in.lipschitz;
    out.c1 = in.dist_to_opt * in.dist_to_opt / (2.0 * T * in.sched.gamma(T)) +
             l2 / (2.0 * T) * gamma_sum;
    out.c2 = 3.0 * l2 / (T * (1.0 - std::sqrt(1.0 - in.spectral_gap / in.nedges))) * gamma_sum;
    if (in.bias) {
        if (static_cast<long long>(in.bias->size()) < in.T - 1)
            throw param_error("rate_bound_decomposition: bias series shorter than T-1");
        double s = 0.0;
        for (long long t = 0; t < in.T - 1; ++t) s += (*in.bias)[static_cast<std::size_t>(t)];
        out.c3 = s / T;
    }
    return out;
}

double rate_bound_corollary(long long T, double a, const Graph& g, double lipschitz,
                            double dist0) {
    if (T < 1) throw param_error("rate_bound_corollary: T must be >= 1");
    if (!(a > 0.0)) throw param_error("rate_bound_corollary: a must be positive");
    const double gap = spectrum(g).spectral_gap;
    const double m = static_cast<double>(g.edge_count());
    const double logc = std::abs(std::log(c_of_graph(g)));
    const double l2 = lipschitz * lipschitz;
    const double Td = static_cast<double>(T);
    const double bracket = dist0 * dist0 / (2.0 * a) + a * l2 +
                           6.0 * a * l2 / (1.0 - std::sqrt(1.0 - gap / m)) +
                           12.0 * a * l2 / logc * std::log(Td);
    return bracket / std::sqrt(Td) +
           2.0 * lipschitz * dist0 / Td * (1.0 + logc * std::log(Td));
}

double delta_tilde(const Graph& g, int i, int j) {
    if (g.n <= 2) throw param_error("delta_tilde: need n > 2");
    if (i < 0 || j < 0 || i >= g.n || j >= g.n || i == j)
        throw param_error("delta_tilde: invalid node pair");
    DistanceTable d = distances(g);
    double sum = 0.0;
    for (int k = 0; k < g.n; ++k) {
        if (k == i || k == j) continue;
        if (d(i, k) < 0 || d(k, j) < 0) throw param_error("delta_tilde: graph must be connected");
        sum += d(i, k) + d(k, j);
    }
    return sum / static_cast<double>(g.n - 2);
}

double lower_bound(double radius, double lipschitz, double t, double delta) {
    if (!(radius > 0.0) || !(lipschitz > 0.0) || !(delta > 0.0))
        throw param_error("lower_bound: radius, lipschitz and delta must be positive");
    const double a = 1.0 + t / delta;
    return radius * lipschitz / 36.0 * std::sqrt(1.0 / (a * a) + 1.0 / (1.0 + t));
}

std::pair<int, int> worst_pair(const Graph& g) {
    DistanceTable d = distances(g);
    int best_i = 0, best_j = 1, best = -1;
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            if (d(i, j) > best) {
                best = d(i, j);
                best_i = i;
                best_j = j;
            }
        }
    }
    return {best_i, best_j};
}

double HardInstance::pair_value(int u, int v, const Vec& theta) const {
    double val = 0.0;
    const double sq = dot(theta, theta);
    val += 0.5 * params.alpha * sq;
    const double nd = static_cast<double>(n);
    if (u == i0 && v == i0) {
        val += -nd * params.beta * theta[0];
    } else if (u == i1 && v == i1) {
        val += nd * params.delta * theta[2 * k];
    } else if (u == i0) {
        for (int r = 1; r <= k; ++r)
            if (v == j0[r - 1]) {
                val += nd * params.gamma * std::abs(theta[2 * r] - theta[2 * r - 1]);
                break;
            }
    } else if (u == i1) {
        for (int r = 1; r <= k; ++r)
            if (v == j1[r - 1]) {
                val += nd * params.gamma * std::abs(theta[2 * r - 1] - theta[2 * r - 2]);
                break;
            }
    }
    return val;
}

double HardInstance::objective(const Vec& theta) const {
    if (static_cast<int>(theta.size()) < min_dim())
        throw param_error("hard_instance: theta dimension must be >= 2k+1");
    const double nd = static_cast<double>(n);
    // Closed form of the 1/n^2 double sum: every ordered pair carries the
    // quadratic, the special terms appear once each.
    double val = 0.5 * params.alpha * dot(theta, theta);
    double special = -params.beta * theta[0] + params.delta * theta[2 * k];
    for (int r = 1; r <= k; ++r) {
        special += params.gamma * std::abs(theta[2 * r] - theta[2 * r - 1]);
        special += params.gamma * std::abs(theta[2 * r - 1] - theta[2 * r - 2]);
    }
    return val + special / nd;
}

Vec HardInstance::subgradient(const Vec& theta) const {
    if (static_cast<int>(theta.size()) < min_dim())
        throw param_error("hard_instance: theta dimension must be >= 2k+1");
    Vec g(theta.size(), 0.0);
    axpy(params.alpha, theta, g);
    const double nd = static_cast<double>(n);
    g[0] += -params.beta / nd;
    g[2 * k] += params.delta / nd;
    auto sign0 = [](double u) { return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0); };
    for (int r = 1; r <= k; ++r) {
        const double s1 = sign0(theta[2 * r] - theta[2 * r - 1]);
        g[2 * r] += params.gamma * s1 / nd;
        g[2 * r - 1] -= params.gamma * s1 / nd;
        const double s2 = sign0(theta[2 * r - 1] - theta[2 * r - 2]);
        g[2 * r - 1] += params.gamma * s2 / nd;
        g[2 * r - 2] -= params.gamma * s2 / nd;
    }
    return g;
}

HardInstance hard_instance(const Graph& g, int k, const HardInstanceParams& params,
                           std::uint64_t seed) {
    if (k < 1) throw param_error("hard_instance: k must be >= 1");
    if (g.n < 2 * k + 2)
        throw param_error("hard_instance: need n >= 2k+2 distinct nodes");
    if (!is_connected(g)) throw param_error("hard_instance: graph must be connected");

    HardInstance inst;
    inst.n = g.n;
    inst.k = k;
    inst.params = params;
    auto [i0, i1] = worst_pair(g);
    inst.i0 = i0;
    inst.i1 = i1;

    // intermediaries drawn without replacement among the other nodes
    std::vector<int> pool;
    for (int v = 0; v < g.n; ++v)
        if (v != i0 && v != i1) pool.push_back(v);
    Rng rng(seed);
    for (int r = 0; r < 2 * k; ++r) {
        std::size_t pick = r + rng.next_below(pool.size() - r);
        std::swap(pool[r], pool[pick]);
    }
    inst.j0.assign(pool.begin(), pool.begin() + k);
    inst.j1.assign(pool.begin() + k, pool.begin() + 2 * k);
    inst.delta_tilde_value = delta_tilde(g, i0, i1);
    return inst;
}

}  // namespace pg

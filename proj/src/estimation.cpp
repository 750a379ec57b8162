#include "pg/estimation.hpp"

#include <algorithm>
#include <cmath>

#include "pg/errors.hpp"
#include "pg/rng.hpp"

namespace pg {

namespace {

void check_protocol_inputs(const Graph& g, const KernelMatrix& km) {
    if (g.n != km.n()) throw param_error("protocol: graph size does not match kernel matrix");
    if (g.n < 2) throw param_error("protocol: need at least 2 nodes");
    if (!is_connected(g)) throw param_error("protocol: graph must be connected");
    if (is_bipartite(g)) throw param_error("protocol: graph must be non-bipartite");
}

struct Recorder {
    Trajectory traj;
    long long record_every;
    long long T;
    const Vec* target;

    void maybe_record(long long t, const Vec& z) {
        bool due = (record_every > 0 && t % record_every == 0) || t == T;
        if (!due) return;
        TrajectoryPoint pt;
        pt.t = t;
        pt.z = z;
        double sum = 0.0, sumsq = 0.0, err = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            sum += z[k];
            sumsq += z[k] * z[k];
            double d = z[k] - (*target)[k];
            err += d * d;
        }
        const double n = static_cast<double>(z.size());
        pt.err_l2 = std::sqrt(err);
        pt.mean_z = sum / n;
        pt.std_z = std::sqrt(std::max(0.0, sumsq / n - pt.mean_z * pt.mean_z));
        traj.points.push_back(std::move(pt));
    }
};

// One full iteration of each protocol, with the edge draws supplied by the
// caller so the same code serves the seeded simulators and the enumeration
// oracle. Listing order is normative: GoSta updates all nodes first, then
// mixes, then swaps; U1 swaps first; U2 updates first and performs two
// independent swaps.
void gosta_step(const Matrix& h, long long t, int ei, int ej, Vec& z, std::vector<int>& aux) {
    const double tt = static_cast<double>(t);
    for (std::size_t p = 0; p < z.size(); ++p)
        z[p] = (tt - 1.0) / tt * z[p] + h(static_cast<int>(p), aux[p]) / tt;
    const double mid = 0.5 * (z[ei] + z[ej]);
    z[ei] = mid;
    z[ej] = mid;
    std::swap(aux[ei], aux[ej]);
}

void u1_step(const Matrix& h, long long t, int ei, int ej, Vec& z, std::vector<int>& aux) {
    std::swap(aux[ei], aux[ej]);
    const double tt = static_cast<double>(t);
    for (std::size_t p = 0; p < z.size(); ++p)
        z[p] = (tt - 1.0) / tt * z[p] + h(static_cast<int>(p), aux[p]) / tt;
}

void u2_step(const Matrix& h, long long t, int e1i, int e1j, int e2i, int e2j, Vec& z,
             std::vector<int>& aux1, std::vector<int>& aux2) {
    const double tt = static_cast<double>(t);
    for (std::size_t p = 0; p < z.size(); ++p)
        z[p] = (tt - 1.0) / tt * z[p] + h(aux1[p], aux2[p]) / tt;
    std::swap(aux1[e1i], aux1[e1j]);
    std::swap(aux2[e2i], aux2[e2j]);
}

std::vector<int> identity_perm(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

Vec full_target(const KernelMatrix& km) { return Vec(km.n(), km.u_full); }

}  // namespace

std::string protocol_name(Protocol p) {
    switch (p) {
        case Protocol::gosta: return "gosta";
        case Protocol::u1: return "u1";
        case Protocol::u2: return "u2";
    }
    return "?";
}

Trajectory gosta_sync(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                      long long record_every) {
    check_protocol_inputs(g, km);
    Vec target = full_target(km);
    Recorder rec{{"gosta", seed, {}}, record_every, T, &target};
    Vec z(g.n, 0.0);
    auto aux = identity_perm(g.n);
    Rng rng(seed);
    if (T == 0) rec.maybe_record(0, z);
    for (long long t = 1; t <= T; ++t) {
        auto step = rng.child(static_cast<std::uint64_t>(t));
        auto [i, j] = g.edges[step.next_below(g.edges.size())];
        gosta_step(km.h, t, i, j, z, aux);
        rec.maybe_record(t, z);
    }
    return std::move(rec.traj);
}

Trajectory gosta_async(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                       long long record_every) {
    check_protocol_inputs(g, km);
    Vec target = full_target(km);
    Recorder rec{{"gosta_async", seed, {}}, record_every, T, &target};
    const double nedges = static_cast<double>(g.edge_count());
    Vec z(g.n, 0.0), m(g.n, 0.0);
    auto aux = identity_perm(g.n);
    Rng rng(seed);
    if (T == 0) rec.maybe_record(0, z);
    for (long long t = 1; t <= T; ++t) {
        auto step = rng.child(static_cast<std::uint64_t>(t));
        auto [i, j] = g.edges[step.next_below(g.edges.size())];
        const double mid = 0.5 * (z[i] + z[j]);
        z[i] = mid;
        z[j] = mid;
        std::swap(aux[i], aux[j]);
        for (int k : {i, j}) {
            const double pk = g.degrees[k] / nedges;
            m[k] += 1.0 / pk;
            const double w = std::min(1.0, 1.0 / (m[k] * pk));
            z[k] = (1.0 - w) * z[k] + w * km.h(k, aux[k]);
        }
        rec.maybe_record(t, z);
    }
    return std::move(rec.traj);
}

Trajectory u1_gossip(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                     long long record_every) {
    check_protocol_inputs(g, km);
    Vec target = km.h_bar;
    Recorder rec{{"u1", seed, {}}, record_every, T, &target};
    Vec z(g.n, 0.0);
    auto aux = identity_perm(g.n);
    Rng rng(seed);
    if (T == 0) rec.maybe_record(0, z);
    for (long long t = 1; t <= T; ++t) {
        auto step = rng.child(static_cast<std::uint64_t>(t));
        auto [i, j] = g.edges[step.next_below(g.edges.size())];
        u1_step(km.h, t, i, j, z, aux);
        rec.maybe_record(t, z);
    }
    return std::move(rec.traj);
}

Trajectory u2_gossip(const Graph& g, const KernelMatrix& km, long long T, std::uint64_t seed,
                     long long record_every) {
    check_protocol_inputs(g, km);
    Vec target = full_target(km);
    Recorder rec{{"u2", seed, {}}, record_every, T, &target};
    Vec z(g.n, 0.0);
    auto aux1 = identity_perm(g.n);
    auto aux2 = identity_perm(g.n);
    Rng rng(seed);
    if (T == 0) rec.maybe_record(0, z);
    for (long long t = 1; t <= T; ++t) {
        auto step = rng.child(static_cast<std::uint64_t>(t));
        auto [i1, j1] = g.edges[step.next_below(g.edges.size())];
        auto [i2, j2] = g.edges[step.next_below(g.edges.size())];
        u2_step(km.h, t, i1, j1, i2, j2, z, aux1, aux2);
        rec.maybe_record(t, z);
    }
    return std::move(rec.traj);
}

std::vector<Vec> exact_expectation(const Graph& g, const KernelMatrix& km, long long T,
                                   Protocol protocol) {
    check_protocol_inputs(g, km);
    if (T > 500 || g.n > 40) throw param_error("exact_expectation: oracle scale is T<=500, n<=40");
    const Matrix w1 = transition(g, 1.0).w;
    const int n = g.n;
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(T) + 1);
    out.emplace_back(n, 0.0);  // entry t holds E[z(t)]; z(0) = 0

    auto diag = [n](const Matrix& m) {
        Vec d(n);
        for (int i = 0; i < n; ++i) d[i] = m(i, i);
        return d;
    };

    if (protocol == Protocol::gosta) {
        const Matrix w2 = transition(g, 2.0).w;
        // z(t) = (1/t) sum_s A(t)..A(s) d(s) with d(s) read after s-1 swaps,
        // so E[z(t)] = (1/t) sum_s W2^{t-s+1} diag(H W1^{s-1}).
        Matrix m = km.h;  // H W1^{s-1}
        Vec s_acc(n, 0.0);
        for (long long t = 1; t <= T; ++t) {
            Vec v = diag(m);
            for (int i = 0; i < n; ++i) s_acc[i] += v[i];
            s_acc = w2.matvec(s_acc);
            Vec e = s_acc;
            scale(1.0 / static_cast<double>(t), e);
            out.push_back(std::move(e));
            m = m.matmul(w1);
        }
    } else if (protocol == Protocol::u1) {
        // swap precedes the read: E[z(t)] = (1/t) sum_s diag(H W1^s).
        Matrix m = km.h;
        Vec sum(n, 0.0);
        for (long long t = 1; t <= T; ++t) {
            m = m.matmul(w1);
            Vec v = diag(m);
            for (int i = 0; i < n; ++i) sum[i] += v[i];
            Vec e = sum;
            scale(1.0 / static_cast<double>(t), e);
            out.push_back(std::move(e));
        }
    } else {
        // two independent walks, read before the swaps:
        // E[z(t)] = (1/t) sum_s diag(W1^{s-1} H W1^{s-1}).
        Matrix m = km.h;
        Vec sum(n, 0.0);
        for (long long t = 1; t <= T; ++t) {
            Vec v = diag(m);
            for (int i = 0; i < n; ++i) sum[i] += v[i];
            Vec e = sum;
            scale(1.0 / static_cast<double>(t), e);
            out.push_back(std::move(e));
            m = w1.matmul(m).matmul(w1);
        }
    }
    return out;
}

namespace {

struct BruteAccum {
    std::vector<Vec> sums;  // entry t: probability-weighted sum of z(t)
};

void brute_recurse(const Graph& g, const Matrix& h, long long T, Protocol protocol, long long t,
                   const Vec& z, const std::vector<int>& aux1, const std::vector<int>& aux2,
                   BruteAccum& acc) {
    if (t > T) return;
    const auto& edges = g.edges;
    const std::size_t m = edges.size();
    if (protocol == Protocol::u2) {
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                Vec z2 = z;
                auto x1 = aux1, x2 = aux2;
                u2_step(h, t, edges[a].first, edges[a].second, edges[b].first, edges[b].second,
                        z2, x1, x2);
                double w = std::pow(static_cast<double>(m), -2.0 * static_cast<double>(t));
                for (std::size_t k = 0; k < z2.size(); ++k) acc.sums[t][k] += w * z2[k];
                brute_recurse(g, h, T, protocol, t + 1, z2, x1, x2, acc);
            }
        }
        return;
    }
    for (std::size_t a = 0; a < m; ++a) {
        Vec z2 = z;
        auto x1 = aux1;
        if (protocol == Protocol::gosta)
            gosta_step(h, t, edges[a].first, edges[a].second, z2, x1);
        else
            u1_step(h, t, edges[a].first, edges[a].second, z2, x1);
        double w = std::pow(static_cast<double>(m), -static_cast<double>(t));
        for (std::size_t k = 0; k < z2.size(); ++k) acc.sums[t][k] += w * z2[k];
        brute_recurse(g, h, T, protocol, t + 1, z2, x1, aux2, acc);
    }
}

}  // namespace

std::vector<Vec> brute_force_expectation(const Graph& g, const KernelMatrix& km, long long T,
                                         Protocol protocol) {
    check_protocol_inputs(g, km);
    if (T < 0) throw param_error("brute_force_expectation: T must be >= 0");
    const int draws = (protocol == Protocol::u2) ? 2 : 1;
    double branches = std::pow(static_cast<double>(g.edge_count()), static_cast<double>(draws * T));
    if (branches > 1e6) throw param_error("brute_force_expectation: enumeration limit exceeded");

    BruteAccum acc;
    acc.sums.assign(static_cast<std::size_t>(T) + 1, Vec(g.n, 0.0));
    brute_recurse(g, km.h, T, protocol, 1, Vec(g.n, 0.0), identity_perm(g.n), identity_perm(g.n),
                  acc);
    return acc.sums;
}

double bound_gosta_expectation(const Graph& g, const KernelMatrix& km, long long t) {
    if (t < 1) throw param_error("bound_gosta_expectation: t must be >= 1");
    const double gap = spectrum(g).spectral_gap;
    return g.edge_count() / (static_cast<double>(t) * gap) * dispersion(km);
}

double bound_gosta_deviation(const Graph& g, const KernelMatrix& km, long long t) {
    if (t < 1) throw param_error("bound_gosta_deviation: t must be >= 1");
    const double gap = spectrum(g).spectral_gap;
    const double m = g.edge_count();
    const double fc = frobenius_centered(km);
    const double fh = km.h.frobenius_norm();
    const double td = static_cast<double>(t);
    return std::sqrt(((1.0 + 2.0 * m / gap) * fc * fc +
                      4.0 * m / gap * (1.0 + 1.0 / (2.0 * td)) * fh * fh) /
                     td);
}

Vec bound_u1_expectation(const Graph& g, const KernelMatrix& km, long long t) {
    if (t < 1) throw param_error("bound_u1_expectation: t must be >= 1");
    const double gap = spectrum(g).spectral_gap;
    const double m = g.edge_count();
    Vec out(g.n, 0.0);
    for (int k = 0; k < g.n; ++k) {
        double col = 0.0;
        for (int i = 0; i < g.n; ++i) col += km.h(i, k) * km.h(i, k);
        out[k] = m * std::sqrt(col) / (2.0 * gap * static_cast<double>(t));
    }
    return out;
}

double bound_u2_expectation(const Graph& g, const KernelMatrix& km, long long t) {
    if (t < 1) throw param_error("bound_u2_expectation: t must be >= 1");
    const double gap = spectrum(g).spectral_gap;
    const double m = g.edge_count();
    const double ratio = gap / m;
    double centered = 0.0;
    for (double v : km.h_bar) centered += (v - km.u_full) * (v - km.u_full);
    return m / (static_cast<double>(t) * gap) *
           ((3.0 - ratio) / (2.0 - ratio) * frobenius_centered(km) + std::sqrt(centered));
}

double TrajectoryStats::z_stderr(std::size_t step, int component) const {
    return z_std[step][component] / std::sqrt(static_cast<double>(n_runs));
}

double TrajectoryStats::err_stderr(std::size_t step) const {
    return err_std[step] / std::sqrt(static_cast<double>(n_runs));
}

TrajectoryStats monte_carlo(const std::function<Trajectory(std::uint64_t)>& run, int n_runs,
                            std::uint64_t base_seed) {
    if (n_runs < 1) throw param_error("monte_carlo: n_runs must be >= 1");
    TrajectoryStats stats;
    stats.n_runs = n_runs;
    std::vector<Vec> zsum, zsumsq;
    std::vector<double> esum, esumsq;
    for (int r = 0; r < n_runs; ++r) {
        Trajectory traj = run(base_seed + static_cast<std::uint64_t>(r));
        if (r == 0) {
            for (const auto& pt : traj.points) {
                stats.steps.push_back(pt.t);
                zsum.emplace_back(pt.z.size(), 0.0);
                zsumsq.emplace_back(pt.z.size(), 0.0);
            }
            esum.assign(traj.points.size(), 0.0);
            esumsq.assign(traj.points.size(), 0.0);
        }
        if (traj.points.size() != stats.steps.size())
            throw param_error("monte_carlo: runs recorded different step counts");
        for (std::size_t s = 0; s < traj.points.size(); ++s) {
            const auto& pt = traj.points[s];
            for (std::size_t k = 0; k < pt.z.size(); ++k) {
                zsum[s][k] += pt.z[k];
                zsumsq[s][k] += pt.z[k] * pt.z[k];
            }
            esum[s] += pt.err_l2;
            esumsq[s] += pt.err_l2 * pt.err_l2;
        }
    }
    const double n = static_cast<double>(n_runs);
    for (std::size_t s = 0; s < stats.steps.size(); ++s) {
        Vec mean(zsum[s].size()), sd(zsum[s].size());
        for (std::size_t k = 0; k < zsum[s].size(); ++k) {
            mean[k] = zsum[s][k] / n;
            double var = n_runs > 1 ? std::max(0.0, (zsumsq[s][k] - n * mean[k] * mean[k]) / (n - 1.0))
                                    : 0.0;
            sd[k] = std::sqrt(var);
        }
        stats.z_mean.push_back(std::move(mean));
        stats.z_std.push_back(std::move(sd));
        double em = esum[s] / n;
        double ev = n_runs > 1 ? std::max(0.0, (esumsq[s] - n * em * em) / (n - 1.0)) : 0.0;
        stats.err_mean.push_back(em);
        stats.err_std.push_back(std::sqrt(ev));
    }
    return stats;
}

}  // namespace pg

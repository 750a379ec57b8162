#include "pg/dualavg.hpp"

#include <algorithm>
#include <cmath>

#include "pg/errors.hpp"
#include "pg/losses.hpp"
#include "pg/rng.hpp"

namespace pg {

ProjectionSpec ProjectionSpec::ball(double d) {
    if (!(d > 0.0)) throw param_error("projection: ball radius must be positive");
    ProjectionSpec p;
    p.kind = ProjKind::ball;
    p.radius = d;
    return p;
}

ProjectionSpec ProjectionSpec::psd_cone(int side) {
    if (side < 1) throw param_error("projection: psd side must be >= 1");
    ProjectionSpec p;
    p.kind = ProjKind::psd_cone;
    p.side = side;
    return p;
}

StepSchedule::StepSchedule(double a_, double alpha_) : a(a_), alpha(alpha_) {
    if (!(a > 0.0)) throw param_error("schedule: a must be positive");
    if (!(alpha > -1.0 && alpha < 0.0)) throw param_error("schedule: alpha must be in (-1,0)");
}

double StepSchedule::gamma(double t) const {
    if (!(t > 0.0)) throw param_error("schedule: gamma needs t > 0");
    return a * std::pow(t, alpha);
}

Vec project(const Vec& z, double t, const StepSchedule& sched, const ProjectionSpec& psi) {
    const double g = sched.gamma(t);
    switch (psi.kind) {
        case ProjKind::none: {
            Vec out = z;
            scale(g, out);
            return out;
        }
        case ProjKind::ball: {
            Vec out = z;
            scale(g, out);
            const double nrm = norm2(out);
            if (nrm > psi.radius) scale(psi.radius / nrm, out);
            return out;
        }
        case ProjKind::psd_cone: {
            const int d = psi.side;
            if (static_cast<int>(z.size()) != d * d)
                throw param_error("projection: psd input is not a d x d matrix");
            Matrix s(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    s(r, c) = 0.5 * g * (z[static_cast<std::size_t>(r) * d + c] +
                                         z[static_cast<std::size_t>(c) * d + r]);
            EigenSym es = jacobi_eigen_sym(s, /*want_vectors=*/true);
            Vec out(z.size(), 0.0);
            for (int k = 0; k < d; ++k) {
                const double lam = std::max(0.0, es.values[k]);
                if (lam == 0.0) continue;
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c)
                        out[static_cast<std::size_t>(r) * d + c] +=
                            lam * es.vectors(r, k) * es.vectors(c, k);
            }
            return out;
        }
    }
    throw param_error("projection: unknown kind");
}

namespace {

void check_optimizer_inputs(const Graph& g, const Dataset& data) {
    if (g.n != data.n) throw param_error("optimizer: graph size does not match dataset");
    if (!is_connected(g)) throw param_error("optimizer: graph must be connected");
    if (g.n > 1 && is_bipartite(g)) throw param_error("optimizer: graph must be non-bipartite");
}

Vec eps_hat_of(const std::vector<Vec>& thetas, const std::vector<int>& aux,
               const PairwiseObjective& obj, const Dataset& data) {
    const int n = data.n;
    Vec eps(thetas[0].size(), 0.0);
    for (int i = 0; i < n; ++i) {
        obj.add_grad(thetas[i], data, i, aux[i], 1.0 / n, eps);
        for (int j = 0; j < n; ++j)
            obj.add_grad(thetas[i], data, i, j, -1.0 / (static_cast<double>(n) * n), eps);
    }
    return eps;
}

Vec mean_of(const std::vector<Vec>& vs) {
    Vec m(vs[0].size(), 0.0);
    for (const auto& v : vs) axpy(1.0, v, m);
    scale(1.0 / static_cast<double>(vs.size()), m);
    return m;
}

struct OptRecorder {
    OptResult result;
    const PairwiseObjective* obj;
    const Dataset* data;
    OptOptions opts;
    long long T;

    bool due(long long t) const {
        return (opts.record_every > 0 && t % opts.record_every == 0) || t == T;
    }

    void record(long long t, const std::vector<Vec>& theta_bar, double bias_inner) {
        OptPoint pt;
        pt.t = t;
        double sum = 0.0, sumsq = 0.0, aucsum = 0.0;
        for (const auto& tb : theta_bar) {
            const double r = obj->risk(tb, *data);
            sum += r;
            sumsq += r * r;
            if (opts.track_auc) aucsum += auc(*data, tb);
        }
        const double n = static_cast<double>(theta_bar.size());
        pt.risk_mean = sum / n;
        pt.risk_std = std::sqrt(std::max(0.0, sumsq / n - pt.risk_mean * pt.risk_mean));
        pt.bias_inner = bias_inner;
        if (opts.track_auc) pt.auc_mean = aucsum / n;
        result.points.push_back(pt);
    }
};

}  // namespace

BiasRecord bias_term(const OptimizerState& state, const PairwiseObjective& obj,
                     const Dataset& data, const StepSchedule& sched, const ProjectionSpec& psi) {
    BiasRecord rec;
    rec.t = state.t;
    rec.eps_hat = eps_hat_of(state.theta, state.aux, obj, data);
    rec.zhat = mean_of(state.z);
    rec.omega_hat = project(rec.zhat, static_cast<double>(std::max<long long>(state.t, 1)), sched, psi);
    rec.inner = dot(rec.eps_hat, rec.omega_hat);
    return rec;
}

CentralResult centralized_da(const PairwiseObjective& obj, const Dataset& data,
                             const StepSchedule& sched, const ProjectionSpec& psi, long long T,
                             long long record_every) {
    const int dim = obj.param_dim(data);
    Vec z(dim, 0.0), theta(dim, 0.0), theta_bar(dim, 0.0), grad(dim, 0.0);
    CentralResult res;
    double max_grad = 0.0;
    for (long long t = 1; t <= T; ++t) {
        std::fill(grad.begin(), grad.end(), 0.0);
        const double invn2 = 1.0 / (static_cast<double>(data.n) * data.n);
        for (int i = 0; i < data.n; ++i)
            for (int j = 0; j < data.n; ++j) obj.add_grad(theta, data, i, j, invn2, grad);
        axpy(1.0, grad, z);
        theta = project(z, static_cast<double>(t), sched, psi);
        const double w = 1.0 / static_cast<double>(t);
        for (int k = 0; k < dim; ++k) theta_bar[k] = (1.0 - w) * theta_bar[k] + w * theta[k];
        max_grad = std::max(max_grad, norm2(grad));
        if ((record_every > 0 && t % record_every == 0) || t == T) {
            CentralPoint pt;
            pt.t = t;
            pt.risk_bar = obj.risk(theta_bar, data);
            pt.grad_norm = norm2(grad);
            pt.max_grad_norm = max_grad;
            res.points.push_back(pt);
        }
    }
    res.theta = std::move(theta);
    res.theta_bar = std::move(theta_bar);
    return res;
}

CentralResult stochastic_da(const PairwiseObjective& obj, const Dataset& data,
                            const StepSchedule& sched, const ProjectionSpec& psi, long long T,
                            std::uint64_t seed, long long record_every) {
    const int dim = obj.param_dim(data);
    Vec z(dim, 0.0), theta(dim, 0.0), theta_bar(dim, 0.0), grad(dim, 0.0);
    CentralResult res;
    Rng rng(seed);
    double max_grad = 0.0;
    for (long long t = 1; t <= T; ++t) {
        auto step = rng.child(static_cast<std::uint64_t>(t));
        const int i = static_cast<int>(step.next_below(static_cast<std::uint64_t>(data.n)));
        const int j = static_cast<int>(step.next_below(static_cast<std::uint64_t>(data.n)));
        std::fill(grad.begin(), grad.end(), 0.0);
        obj.add_grad(theta, data, i, j, 1.0, grad);
        axpy(1.0, grad, z);
        theta = project(z, static_cast<double>(t), sched, psi);
        const double w = 1.0 / static_cast<double>(t);
        for (int k = 0; k < dim; ++k) theta_bar[k] = (1.0 - w) * theta_bar[k] + w * theta[k];
        max_grad = std::max(max_grad, norm2(grad));
        if ((record_every > 0 && t % record_every == 0) || t == T) {
            CentralPoint pt;
            pt.t = t;
            pt.risk_bar = obj.risk(theta_bar, data);
            pt.grad_norm = norm2(grad);
            pt.max_grad_norm = max_grad;
            res.points.push_back(pt);
        }
    }
    res.theta = std::move(theta);
    res.theta_bar = std::move(theta_bar);
    return res;
}

namespace {

OptResult gossip_sync_impl(const Graph& g, const PairwiseObjective& obj, const Dataset& data,
                           const StepSchedule& sched, const ProjectionSpec& psi, long long T,
                           std::uint64_t seed, const OptOptions& opts, bool uniform_partner) {
    check_optimizer_inputs(g, data);
    const int n = g.n;
    const int dim = obj.param_dim(data);
    OptimizerState st;
    st.z.assign(n, Vec(dim, 0.0));
    st.theta.assign(n, Vec(dim, 0.0));
    st.theta_bar.assign(n, Vec(dim, 0.0));
    st.aux.resize(n);
    for (int i = 0; i < n; ++i) st.aux[i] = i;

    OptRecorder rec{{uniform_partner ? "baseline" : "sync", seed, {}, {}, {}}, &obj, &data, opts, T};
    Rng rng(seed);
    std::vector<int> partner(n, 0);

    for (long long t = 1; t <= T; ++t) {
        auto step = rng.child(static_cast<std::uint64_t>(t));
        if (n > 1) {
            auto [i, j] = g.edges[step.next_below(g.edges.size())];
            for (int k = 0; k < dim; ++k) {
                const double mid = 0.5 * (st.z[i][k] + st.z[j][k]);
                st.z[i][k] = mid;
                st.z[j][k] = mid;
            }
            std::swap(st.aux[i], st.aux[j]);
        }
        if (uniform_partner) {
            for (int k = 0; k < n; ++k)
                partner[k] = static_cast<int>(step.next_below(static_cast<std::uint64_t>(n)));
        } else {
            partner = st.aux;
        }

        const bool want_bias = opts.record_bias && rec.due(t);
        Vec eps;
        if (want_bias) eps = eps_hat_of(st.theta, partner, obj, data);

        const double w = 1.0 / static_cast<double>(t);
        for (int k = 0; k < n; ++k) {
            obj.add_grad(st.theta[k], data, k, partner[k], 1.0, st.z[k]);
            st.theta[k] = project(st.z[k], static_cast<double>(t), sched, psi);
            for (int c = 0; c < dim; ++c)
                st.theta_bar[k][c] = (1.0 - w) * st.theta_bar[k][c] + w * st.theta[k][c];
        }

        double inner = 0.0;
        if (want_bias) {
            BiasRecord br;
            br.t = t;
            br.eps_hat = std::move(eps);
            br.zhat = mean_of(st.z);
            br.omega_hat = project(br.zhat, static_cast<double>(t), sched, psi);
            br.inner = dot(br.eps_hat, br.omega_hat);
            inner = br.inner;
            rec.result.bias.push_back(std::move(br));
        }
        if (rec.due(t)) rec.record(t, st.theta_bar, inner);
    }
    st.t = T;
    rec.result.final_state = std::move(st);
    return std::move(rec.result);
}

}  // namespace

OptResult gossip_pairwise_da_sync(const Graph& g, const PairwiseObjective& obj,
                                  const Dataset& data, const StepSchedule& sched,
                                  const ProjectionSpec& psi, long long T, std::uint64_t seed,
                                  const OptOptions& opts) {
    return gossip_sync_impl(g, obj, data, sched, psi, T, seed, opts, /*uniform_partner=*/false);
}

OptResult unbiased_baseline_sync(const Graph& g, const PairwiseObjective& obj, const Dataset& data,
                                 const StepSchedule& sched, const ProjectionSpec& psi, long long T,
                                 std::uint64_t seed, const OptOptions& opts) {
    return gossip_sync_impl(g, obj, data, sched, psi, T, seed, opts, /*uniform_partner=*/true);
}

OptResult gossip_pairwise_da_async(const Graph& g, const PairwiseObjective& obj,
                                   const Dataset& data, const StepSchedule& sched,
                                   const ProjectionSpec& psi, long long T, std::uint64_t seed,
                                   const OptOptions& opts) {
    check_optimizer_inputs(g, data);
    if (g.n < 2) throw param_error("async optimizer: need at least 2 nodes");
    const int n = g.n;
    const int dim = obj.param_dim(data);
    const double nedges = static_cast<double>(g.edge_count());
    OptimizerState st;
    st.z.assign(n, Vec(dim, 0.0));
    st.theta.assign(n, Vec(dim, 0.0));
    st.theta_bar.assign(n, Vec(dim, 0.0));
    st.m.assign(n, 0.0);
    st.aux.resize(n);
    for (int i = 0; i < n; ++i) st.aux[i] = i;

    OptRecorder rec{{"async", seed, {}, {}, {}}, &obj, &data, opts, T};
    Rng rng(seed);

    for (long long t = 1; t <= T; ++t) {
        auto step = rng.child(static_cast<std::uint64_t>(t));
        auto [i, j] = g.edges[step.next_below(g.edges.size())];
        std::swap(st.aux[i], st.aux[j]);
        Vec mid(dim);
        for (int c = 0; c < dim; ++c) mid[c] = 0.5 * (st.z[i][c] + st.z[j][c]);
        for (int k : {i, j}) {
            const double pk = g.degrees[k] / nedges;
            st.z[k] = mid;
            obj.add_grad(st.theta[k], data, k, st.aux[k], 1.0 / pk, st.z[k]);
            st.m[k] += 1.0 / pk;
            st.theta[k] = project(st.z[k], st.m[k], sched, psi);
            const double w = std::min(1.0, 1.0 / (st.m[k] * pk));
            for (int c = 0; c < dim; ++c)
                st.theta_bar[k][c] = (1.0 - w) * st.theta_bar[k][c] + w * st.theta[k][c];
        }

        double inner = 0.0;
        if (opts.record_bias && rec.due(t)) {
            BiasRecord br;
            br.t = t;
            br.eps_hat = eps_hat_of(st.theta, st.aux, obj, data);
            br.zhat = mean_of(st.z);
            br.omega_hat = project(br.zhat, static_cast<double>(t), sched, psi);
            br.inner = dot(br.eps_hat, br.omega_hat);
            inner = br.inner;
            rec.result.bias.push_back(std::move(br));
        }
        if (rec.due(t)) rec.record(t, st.theta_bar, inner);
    }
    st.t = T;
    rec.result.final_state = std::move(st);
    return std::move(rec.result);
}

}  // namespace pg

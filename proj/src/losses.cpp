#include "pg/losses.hpp"

#include <algorithm>
#include <cmath>

#include "pg/errors.hpp"

namespace pg {

double softplus(double u) {
    if (u > 30.0) return u + std::log1p(std::exp(-u));
    return std::log1p(std::exp(u));
}

double sigmoid(double u) {
    if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
    const double e = std::exp(u);
    return e / (1.0 + e);
}

double PairwiseObjective::risk(const Vec& theta, const Dataset& data) const {
    double sum = 0.0;
    for (int i = 0; i < data.n; ++i)
        for (int j = 0; j < data.n; ++j) sum += value(theta, data, i, j);
    return sum / (static_cast<double>(data.n) * data.n);
}

double risk(const PairwiseObjective& obj, const Dataset& data, const Vec& theta) {
    return obj.risk(theta, data);
}

Vec grad_pair(const PairwiseObjective& obj, const Vec& theta, const Dataset& data, int i, int j) {
    Vec g(theta.size(), 0.0);
    obj.add_grad(theta, data, i, j, 1.0, g);
    return g;
}

Vec grad_partial(const PairwiseObjective& obj, const Vec& theta, const Dataset& data, int i) {
    Vec g(theta.size(), 0.0);
    for (int j = 0; j < data.n; ++j) obj.add_grad(theta, data, i, j, 1.0 / data.n, g);
    return g;
}

double QuadraticToy::value(const Vec& theta, const Dataset&, int, int) const {
    return 0.5 * dot(theta, theta);
}

void QuadraticToy::add_grad(const Vec& theta, const Dataset&, int, int, double w, Vec& out) const {
    axpy(w, theta, out);
}

double QuadraticToy::lipschitz(const Dataset&) const {
    // gradient is theta itself; callers track the iterate range
    return 1.0;
}

double QuadraticToy::risk(const Vec& theta, const Dataset&) const {
    return 0.5 * dot(theta, theta);
}

double AucLogistic::value(const Vec& theta, const Dataset& data, int i, int j) const {
    if (!(data.label(i) > data.label(j))) return 0.0;
    auto xi = data.point(i), xj = data.point(j);
    double u = 0.0;
    for (int k = 0; k < data.dim; ++k) u += (xj[k] - xi[k]) * theta[k];
    return softplus(u);
}

void AucLogistic::add_grad(const Vec& theta, const Dataset& data, int i, int j, double w,
                           Vec& out) const {
    if (!(data.label(i) > data.label(j))) return;
    auto xi = data.point(i), xj = data.point(j);
    double u = 0.0;
    for (int k = 0; k < data.dim; ++k) u += (xj[k] - xi[k]) * theta[k];
    const double s = w * sigmoid(u);
    for (int k = 0; k < data.dim; ++k) out[k] += s * (xj[k] - xi[k]);
}

double AucLogistic::lipschitz(const Dataset& data) const {
    double best = 0.0;
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.n; ++j) {
            auto xi = data.point(i), xj = data.point(j);
            double s = 0.0;
            for (int k = 0; k < data.dim; ++k) s += (xj[k] - xi[k]) * (xj[k] - xi[k]);
            best = std::max(best, s);
        }
    }
    return std::sqrt(best);
}

double AucLogistic::risk(const Vec& theta, const Dataset& data) const {
    Vec score(data.n, 0.0);
    for (int i = 0; i < data.n; ++i) {
        auto x = data.point(i);
        for (int k = 0; k < data.dim; ++k) score[i] += x[k] * theta[k];
    }
    double sum = 0.0;
    for (int i = 0; i < data.n; ++i)
        for (int j = 0; j < data.n; ++j)
            if (data.label(i) > data.label(j)) sum += softplus(score[j] - score[i]);
    return sum / (static_cast<double>(data.n) * data.n);
}

double MetricHinge::hinge_arg(const Vec& theta, const Dataset& data, int i, int j) const {
    const int d = data.dim;
    auto xi = data.point(i), xj = data.point(j);
    double quad = 0.0;
    for (int r = 0; r < d; ++r) {
        const double vr = xi[r] - xj[r];
        if (vr == 0.0) continue;
        for (int c = 0; c < d; ++c)
            quad += vr * theta[static_cast<std::size_t>(r) * d + c] * (xi[c] - xj[c]);
    }
    return data.label(i) * data.label(j) * (b_ - quad);
}

double MetricHinge::value(const Vec& theta, const Dataset& data, int i, int j) const {
    const double u = hinge_arg(theta, data, i, j);
    return hinge_plus_ ? std::max(0.0, u) : std::max(0.0, 1.0 - u);
}

void MetricHinge::add_grad(const Vec& theta, const Dataset& data, int i, int j, double w,
                           Vec& out) const {
    const double u = hinge_arg(theta, data, i, j);
    // phi(u) = max(0, 1-u): slope -1 on u < 1; phi(u) = max(0, u): slope 1 on
    // u > 0. Subgradient 0 at the kink. d u / d theta = -l l' vv^T.
    double slope;
    if (hinge_plus_)
        slope = (u > 0.0) ? 1.0 : 0.0;
    else
        slope = (u < 1.0) ? -1.0 : 0.0;
    if (slope == 0.0) return;
    const double c = -slope * w * data.label(i) * data.label(j);
    const int d = data.dim;
    auto xi = data.point(i), xj = data.point(j);
    for (int r = 0; r < d; ++r) {
        const double vr = xi[r] - xj[r];
        if (vr == 0.0) continue;
        for (int cidx = 0; cidx < d; ++cidx)
            out[static_cast<std::size_t>(r) * d + cidx] += c * vr * (xi[cidx] - xj[cidx]);
    }
}

double MetricHinge::lipschitz(const Dataset& data) const {
    double best = 0.0;
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.n; ++j) {
            auto xi = data.point(i), xj = data.point(j);
            double s = 0.0;
            for (int k = 0; k < data.dim; ++k) s += (xi[k] - xj[k]) * (xi[k] - xj[k]);
            best = std::max(best, s);
        }
    }
    return 2.0 * best;  // ||vv^T||_F = ||v||^2
}

bool MetricHinge::differentiable_at(const Vec& theta, const Dataset& data, int i, int j,
                                    double margin) const {
    const double u = hinge_arg(theta, data, i, j);
    const double kink = hinge_plus_ ? 0.0 : 1.0;
    return std::abs(u - kink) > margin;
}

double RankingLogistic::value(const Vec& theta, const Dataset& data, int i, int j) const {
    auto xi = data.point(i), xj = data.point(j);
    double s = 0.0;
    for (int k = 0; k < data.dim; ++k) s += (xi[k] - xj[k]) * theta[k];
    return softplus(-s * (data.label(i) - data.label(j)));
}

void RankingLogistic::add_grad(const Vec& theta, const Dataset& data, int i, int j, double w,
                               Vec& out) const {
    const double dy = data.label(i) - data.label(j);
    if (dy == 0.0) return;  // softplus(0) has zero slope in theta
    auto xi = data.point(i), xj = data.point(j);
    double s = 0.0;
    for (int k = 0; k < data.dim; ++k) s += (xi[k] - xj[k]) * theta[k];
    const double c = -w * dy * sigmoid(-s * dy);
    for (int k = 0; k < data.dim; ++k) out[k] += c * (xi[k] - xj[k]);
}

double RankingLogistic::lipschitz(const Dataset& data) const {
    double best = 0.0;
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.n; ++j) {
            auto xi = data.point(i), xj = data.point(j);
            double s = 0.0;
            for (int k = 0; k < data.dim; ++k) s += (xi[k] - xj[k]) * (xi[k] - xj[k]);
            double dy = std::abs(data.label(i) - data.label(j));
            best = std::max(best, dy * dy * s);
        }
    }
    return std::sqrt(best);
}

double auc(const Dataset& data, const Vec& theta) {
    if (!data.has_labels()) throw data_error("auc: dataset has no labels");
    Vec score(data.n, 0.0);
    for (int i = 0; i < data.n; ++i) {
        auto x = data.point(i);
        for (int k = 0; k < data.dim; ++k) score[i] += x[k] * theta[k];
    }
    long long ordered = 0, correct = 0;
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.n; ++j) {
            if (data.label(i) > data.label(j)) {
                ++ordered;
                if (score[i] > score[j]) ++correct;  // ties count as incorrect
            }
        }
    }
    if (ordered == 0) throw data_error("auc: no positive-negative pair (single-class labels)");
    return static_cast<double>(correct) / static_cast<double>(ordered);
}

GradCheckResult grad_check(const PairwiseObjective& obj, const Vec& theta, const Dataset& data,
                           int i, int j, double h_step) {
    GradCheckResult res;
    if (!obj.differentiable_at(theta, data, i, j, 10.0 * h_step)) {
        res.skipped = true;
        return res;
    }
    Vec g = grad_pair(obj, theta, data, i, j);
    const double denom = std::max(1.0, norm2(g));
    Vec probe = theta;
    for (std::size_t c = 0; c < theta.size(); ++c) {
        probe[c] = theta[c] + h_step;
        const double fp = obj.value(probe, data, i, j);
        probe[c] = theta[c] - h_step;
        const double fm = obj.value(probe, data, i, j);
        probe[c] = theta[c];
        const double fd = (fp - fm) / (2.0 * h_step);
        res.max_rel_err = std::max(res.max_rel_err, std::abs(fd - g[c]) / denom);
    }
    return res;
}

}  // namespace pg

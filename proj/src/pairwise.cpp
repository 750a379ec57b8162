#include "pg/pairwise.hpp"

#include <cmath>
#include <utility>

#include "pg/errors.hpp"

namespace pg {

Dataset make_dataset(std::vector<std::vector<double>> points, std::vector<double> labels) {
    if (points.empty()) throw data_error("dataset: no points");
    Dataset d;
    d.n = static_cast<int>(points.size());
    d.dim = static_cast<int>(points[0].size());
    d.points.reserve(static_cast<std::size_t>(d.n) * d.dim);
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != d.dim)
            throw data_error("dataset: inconsistent point dimensions");
        d.points.insert(d.points.end(), p.begin(), p.end());
    }
    if (!labels.empty() && static_cast<int>(labels.size()) != d.n)
        throw data_error("dataset: label count does not match point count");
    d.labels = std::move(labels);
    return d;
}

KernelMatrix kernel_matrix(const PairKernel& kernel, const Dataset& data) {
    const int n = data.n;
    KernelMatrix km;
    km.h = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = kernel.eval(data, i, j);
            if (!std::isfinite(v))
                throw numeric_error("kernel_matrix: non-finite value at pair (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
            km.h(i, j) = v;
        }
    }
    km.h_bar.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += km.h(i, j);
        km.h_bar[i] = s / n;
    }
    double total = 0.0;
    for (double v : km.h_bar) total += v;
    km.u_full = total / n;
    double off = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) off += km.h(i, j);
    km.u_offdiag = (n >= 2) ? 2.0 * off / (static_cast<double>(n) * (n - 1)) : 0.0;
    return km;
}

double frobenius_centered(const KernelMatrix& km) {
    double s = 0.0;
    const int n = km.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = km.h(i, j) - km.h_bar[i];
            s += v * v;
        }
    return std::sqrt(s);
}

double dispersion(const KernelMatrix& km) {
    double centered = 0.0;
    for (double v : km.h_bar) centered += (v - km.u_full) * (v - km.u_full);
    return std::sqrt(centered) + 2.0 * frobenius_centered(km);
}

namespace {

double combinations_count(int n, int r) {
    double c = 1.0;
    for (int i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
    return c;
}

}  // namespace

double u_statistic_degree_r(
    const std::function<double(const Dataset&, std::span<const int>)>& kernel_r,
    const Dataset& data, int r) {
    const int n = data.n;
    if (r < 1 || r > n) throw param_error("u_statistic_degree_r: need 1 <= r <= n");
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    double sum = 0.0;
    while (true) {
        sum += kernel_r(data, idx);
        // next combination in lexicographic order
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return sum / combinations_count(n, r);
}

PairKernel product_kernel() {
    return {"product", true, [](const Dataset& d, int i, int j) {
                double s = 0.0;
                auto a = d.point(i), b = d.point(j);
                for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
                return s;
            }};
}

PairKernel variance_kernel() {
    return {"variance", true, [](const Dataset& d, int i, int j) {
                double s = 0.0;
                auto a = d.point(i), b = d.point(j);
                for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
                return 0.5 * s;
            }};
}

PairKernel constant_kernel(double c) {
    return {"constant", true, [c](const Dataset&, int, int) { return c; }};
}

PairKernel cluster_scatter_kernel() {
    return {"cluster_scatter", true, [](const Dataset& d, int i, int j) {
                if (!d.has_labels()) throw data_error("cluster_scatter: dataset has no labels");
                if (d.label(i) != d.label(j)) return 0.0;
                double s = 0.0;
                auto a = d.point(i), b = d.point(j);
                for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
                return std::sqrt(s);
            }};
}

PairKernel ranking_kernel(Vec scorer) {
    return {"ranking", true, [w = std::move(scorer)](const Dataset& d, int i, int j) {
                if (!d.has_labels()) throw data_error("ranking_kernel: dataset has no labels");
                auto a = d.point(i), b = d.point(j);
                double si = 0.0, sj = 0.0;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    si += w[k] * a[k];
                    sj += w[k] * b[k];
                }
                return (-(si - sj) * (d.label(i) - d.label(j)) > 0.0) ? 1.0 : 0.0;
            }};
}

PairKernel metric_risk_kernel(Vec theta_flat, double b, bool hinge_plus) {
    return {"metric_risk", true,
            [theta = std::move(theta_flat), b, hinge_plus](const Dataset& d, int i, int j) {
                if (!d.has_labels()) throw data_error("metric_risk: dataset has no labels");
                const int dim = d.dim;
                auto xi = d.point(i), xj = d.point(j);
                double quad = 0.0;
                for (int r = 0; r < dim; ++r) {
                    double vr = xi[r] - xj[r];
                    if (vr == 0.0) continue;
                    for (int c = 0; c < dim; ++c)
                        quad += vr * theta[static_cast<std::size_t>(r) * dim + c] * (xi[c] - xj[c]);
                }
                double u = d.label(i) * d.label(j) * (b - quad);
                return hinge_plus ? std::max(0.0, u) : std::max(0.0, 1.0 - u);
            }};
}

}  // namespace pg

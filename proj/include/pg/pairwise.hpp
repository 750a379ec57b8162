#ifndef PG_PAIRWISE_HPP
#define PG_PAIRWISE_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pg/matrix.hpp"

namespace pg {

/// Sample of n points in R^d with optional labels. Labels travel with the
/// points when auxiliary observations are propagated by the protocols.
struct Dataset {
    int n = 0;
    int dim = 0;
    std::vector<double> points;  // row-major n x dim
    std::vector<double> labels;  // empty, or one label per point

    std::span<const double> point(int i) const {
        return {points.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    double label(int i) const { return labels[i]; }
    bool has_labels() const { return !labels.empty(); }
};

Dataset make_dataset(std::vector<std::vector<double>> points, std::vector<double> labels = {});

/// Pairwise kernel evaluated on dataset indices so that implementations can
/// see features and labels alike.
struct PairKernel {
    std::string name;
    bool symmetric = true;
    std::function<double(const Dataset&, int, int)> eval;
};

/// n x n kernel table with its partial sums and both U-statistic
/// normalizations: u_full includes diagonal terms (the 1/n^2 double sum),
/// u_offdiag is the classical over-distinct-pairs average.
struct KernelMatrix {
    Matrix h;
    Vec h_bar;         // row means, H 1 / n
    double u_full = 0.0;
    double u_offdiag = 0.0;

    int n() const { return h.rows(); }
};

KernelMatrix kernel_matrix(const PairKernel& kernel, const Dataset& data);

/// Dispersion constant D(h) = ||h_bar - u 1|| + 2 ||H - h_bar 1^T||_F.
double dispersion(const KernelMatrix& km);

double frobenius_centered(const KernelMatrix& km);  // ||H - h_bar 1^T||_F

/// Average of a permutation-symmetric r-ary kernel over all C(n,r)
/// unordered tuples of distinct indices.
double u_statistic_degree_r(
    const std::function<double(const Dataset&, std::span<const int>)>& kernel_r,
    const Dataset& data, int r);

// Built-in kernels.
PairKernel product_kernel();                       // h(x,x') = <x, x'>
PairKernel variance_kernel();                      // h(x,x') = ||x - x'||^2 / 2
PairKernel constant_kernel(double c);
/// Within-cluster point scatter: Euclidean distance gated by same-label.
PairKernel cluster_scatter_kernel();
/// Ranking kernel 1{ -(s(x)-s(x'))(y-y') > 0 } for the linear scorer w.
PairKernel ranking_kernel(Vec scorer);
/// Metric-learning risk kernel at a fixed parameter matrix theta (d x d,
/// flattened row-major): [l l' (b - D_theta(x,x'))]_+ with the source text's
/// convention [u]_+ = max(0, 1-u); hinge_plus selects max(0, u) instead.
PairKernel metric_risk_kernel(Vec theta_flat, double b, bool hinge_plus = false);

}  // namespace pg

#endif

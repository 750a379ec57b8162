#ifndef PG_LOSSES_HPP
#define PG_LOSSES_HPP

#include "pg/objective.hpp"

namespace pg {

/// f = 0 for every pair; handy as a protocol no-op in tests.
class ZeroObjective : public PairwiseObjective {
  public:
    explicit ZeroObjective(int dim) : dim_(dim) {}
    int param_dim(const Dataset&) const override { return dim_; }
    double value(const Vec&, const Dataset&, int, int) const override { return 0.0; }
    void add_grad(const Vec&, const Dataset&, int, int, double, Vec&) const override {}
    double lipschitz(const Dataset&) const override { return 0.0; }

  private:
    int dim_;
};

/// f(theta; ., .) = ||theta||^2 / 2 for every pair, so F is the same
/// quadratic and theta* = 0.
class QuadraticToy : public PairwiseObjective {
  public:
    explicit QuadraticToy(int dim) : dim_(dim) {}
    int param_dim(const Dataset&) const override { return dim_; }
    double value(const Vec& theta, const Dataset&, int, int) const override;
    void add_grad(const Vec& theta, const Dataset&, int, int, double w, Vec& out) const override;
    double lipschitz(const Dataset&) const override;
    double risk(const Vec& theta, const Dataset&) const override;

  private:
    int dim_;
};

/// Pairwise logistic surrogate of the AUC:
/// f(theta; i, j) = 1{l_i > l_j} log(1 + exp((x_j - x_i)^T theta)).
class AucLogistic : public PairwiseObjective {
  public:
    int param_dim(const Dataset& data) const override { return data.dim; }
    double value(const Vec& theta, const Dataset& data, int i, int j) const override;
    void add_grad(const Vec& theta, const Dataset& data, int i, int j, double w,
                  Vec& out) const override;
    double lipschitz(const Dataset& data) const override;
    double risk(const Vec& theta, const Dataset& data) const override;  // O(n^2) via scores
};

/// Mahalanobis metric-learning hinge risk on flattened d x d matrices:
/// f(theta; i, j) = phi(l_i l_j (b - (x_i-x_j)^T theta (x_i-x_j))) with the
/// source text's convention phi(u) = max(0, 1-u); hinge_plus selects the
/// usual positive part max(0, u) for sensitivity runs.
class MetricHinge : public PairwiseObjective {
  public:
    explicit MetricHinge(double b, bool hinge_plus = false) : b_(b), hinge_plus_(hinge_plus) {}
    int param_dim(const Dataset& data) const override { return data.dim * data.dim; }
    double value(const Vec& theta, const Dataset& data, int i, int j) const override;
    void add_grad(const Vec& theta, const Dataset& data, int i, int j, double w,
                  Vec& out) const override;
    double lipschitz(const Dataset& data) const override;
    bool differentiable_at(const Vec& theta, const Dataset& data, int i, int j,
                           double margin) const override;
    double margin() const { return b_; }

  private:
    double hinge_arg(const Vec& theta, const Dataset& data, int i, int j) const;
    double b_;
    bool hinge_plus_;
};

/// Smooth ranking risk with a linear scorer:
/// f(theta; i, j) = log(1 + exp(-(theta^T x_i - theta^T x_j)(l_i - l_j))).
class RankingLogistic : public PairwiseObjective {
  public:
    int param_dim(const Dataset& data) const override { return data.dim; }
    double value(const Vec& theta, const Dataset& data, int i, int j) const override;
    void add_grad(const Vec& theta, const Dataset& data, int i, int j, double w,
                  Vec& out) const override;
    double lipschitz(const Dataset& data) const override;
};

/// AUC(theta): proportion of correctly ordered positive-negative pairs under
/// the linear score x^T theta. Tied scores count as incorrectly ordered.
/// Throws data_error when the labels contain a single class.
double auc(const Dataset& data, const Vec& theta);

struct GradCheckResult {
    bool skipped = false;       // kink too close for central differences
    double max_rel_err = 0.0;
};

/// Central-difference validation of add_grad at one pair. Relative error is
/// measured against max(1, ||grad||). Hinge-style objectives are skipped
/// when the hinge argument is within 10*h_step of the kink.
GradCheckResult grad_check(const PairwiseObjective& obj, const Vec& theta, const Dataset& data,
                           int i, int j, double h_step);

double softplus(double u);
double sigmoid(double u);

}  // namespace pg

#endif

#ifndef PG_OBJECTIVE_HPP
#define PG_OBJECTIVE_HPP

#include "pg/matrix.hpp"
#include "pg/pairwise.hpp"

namespace pg {

/// Convex pairwise objective f(theta; x_i, x_j) with analytic subgradients,
/// evaluated on dataset indices. The full risk is the 1/n^2 double sum over
/// ordered pairs, diagonal included.
class PairwiseObjective {
  public:
    virtual ~PairwiseObjective() = default;

    virtual int param_dim(const Dataset& data) const = 0;
    virtual double value(const Vec& theta, const Dataset& data, int i, int j) const = 0;
    /// out += w * grad f(theta; x_i, x_j)
    virtual void add_grad(const Vec& theta, const Dataset& data, int i, int j, double w,
                          Vec& out) const = 0;
    /// Lipschitz constant of the pair losses, computed from the data.
    virtual double lipschitz(const Dataset& data) const = 0;

    /// True when f(.; x_i, x_j) is differentiable at theta with the given
    /// margin to the nearest kink (hinge losses override).
    virtual bool differentiable_at(const Vec&, const Dataset&, int, int, double) const {
        return true;
    }

    virtual double risk(const Vec& theta, const Dataset& data) const;
};

double risk(const PairwiseObjective& obj, const Dataset& data, const Vec& theta);
Vec grad_pair(const PairwiseObjective& obj, const Vec& theta, const Dataset& data, int i, int j);
/// Gradient of the partial objective f_i = (1/n) sum_j f(.; x_i, x_j).
Vec grad_partial(const PairwiseObjective& obj, const Vec& theta, const Dataset& data, int i);

}  // namespace pg

#endif

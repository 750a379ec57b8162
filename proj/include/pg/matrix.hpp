#ifndef PG_MATRIX_HPP
#define PG_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace pg {

using Vec = std::vector<double>;

/// Dense row-major matrix, sized once at construction.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    const std::vector<double>& data() const { return data_; }

    Vec matvec(const Vec& x) const;
    Matrix matmul(const Matrix& other) const;
    Matrix transpose() const;

    double frobenius_norm() const;
    /// Frobenius norm of the strictly off-diagonal part (square matrices).
    double offdiag_norm() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

struct EigenSym {
    Vec values;       // ascending
    Matrix vectors;   // column j is the eigenvector for values[j]; empty unless requested
};

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Sweeps until the off-diagonal Frobenius norm drops below tol_rel * ||A||_F
/// (default 1e-12). Throws numeric_error if the sweep limit is hit.
EigenSym jacobi_eigen_sym(const Matrix& a, bool want_vectors = false, double tol_rel = 1e-12);

// Small vector helpers shared across modules.
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
void axpy(double alpha, const Vec& x, Vec& y);   // y += alpha * x
void scale(double alpha, Vec& x);
Vec sub(const Vec& a, const Vec& b);

}  // namespace pg

#endif

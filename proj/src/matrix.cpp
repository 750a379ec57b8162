#include "pg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pg/errors.hpp"

namespace pg {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec Matrix::matvec(const Vec& x) const {
    Vec y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        const double* r = row(i);
        double acc = 0.0;
        for (int j = 0; j < cols_; ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

Matrix Matrix::matmul(const Matrix& other) const {
    Matrix out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            const double* bk = other.row(k);
            double* oi = out.row(i);
            for (int j = 0; j < other.cols_; ++j) oi[j] += aik * bk[j];
        }
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double Matrix::offdiag_norm() const {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (i != j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
}

EigenSym jacobi_eigen_sym(const Matrix& a, bool want_vectors, double tol_rel) {
    if (a.rows() != a.cols()) throw param_error("jacobi_eigen_sym: matrix not square");
    const int n = a.rows();
    Matrix m = a;
    Matrix v;
    if (want_vectors) v = Matrix::identity(n);

    const double tol = tol_rel * std::max(m.frobenius_norm(), 1e-300);
    const int max_sweeps = 100;

    int sweep = 0;
    while (m.offdiag_norm() > tol) {
        if (++sweep > max_sweeps)
            throw numeric_error("jacobi_eigen_sym: sweep limit reached without convergence");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double app = m(p, p);
                const double aqq = m(q, q);
                // Rotation angle that annihilates m(p,q).
                const double theta = 0.5 * (aqq - app) / apq;
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0) ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                       : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Symmetry-aware update: rotate rows p and q in place, patch
                // the 2x2 pivot block analytically, then mirror into columns.
                double* rp = m.row(p);
                double* rq = m.row(q);
                for (int k = 0; k < n; ++k) {
                    const double akp = rp[k];
                    const double akq = rq[k];
                    rp[k] = c * akp - s * akq;
                    rq[k] = s * akp + c * akq;
                }
                rp[p] = app - t * apq;
                rq[q] = aqq + t * apq;
                rp[q] = 0.0;
                rq[p] = 0.0;
                for (int k = 0; k < n; ++k) {
                    m(k, p) = rp[k];
                    m(k, q) = rq[k];
                }
                if (want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const double vkp = v(k, p);
                        const double vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&m](int i, int j) { return m(i, i) < m(j, j); });

    EigenSym out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = m(order[i], order[i]);
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, Vec& x) {
    for (double& v : x) v *= alpha;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace pg

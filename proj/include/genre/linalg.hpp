// genre/linalg.hpp -- small dense matrices, Cholesky, cyclic Jacobi
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "genre/errors.hpp"

namespace genre {

/// Row-major dense matrix of doubles.  Sized for stylometric work: tens of
/// rows and columns, not thousands.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
        Matrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

inline double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

inline bool is_symmetric(const Matrix& a, double tol = 1e-10) {
    if (a.rows() != a.cols()) return false;
    double scale = std::max(1.0, max_abs(a));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol * scale) return false;
    return true;
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
inline Matrix cholesky_lower(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("cholesky needs a square matrix");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = a(j, j);
        for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (!(pivot > 0.0))
            throw NotPositiveDefiniteError(
                "matrix is not positive definite at pivot " + std::to_string(j), j);
        l(j, j) = std::sqrt(pivot);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

/// Solves L X = B for lower-triangular L.
inline Matrix forward_solve(const Matrix& l, const Matrix& b) {
    const std::size_t n = l.rows();
    Matrix x = b;
    for (std::size_t j = 0; j < x.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            double s = x(i, j);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
            x(i, j) = s / l(i, i);
        }
    return x;
}

/// Solves L^T X = B for lower-triangular L.
inline Matrix backward_solve_transposed(const Matrix& l, const Matrix& b) {
    const std::size_t n = l.rows();
    Matrix x = b;
    for (std::size_t j = 0; j < x.cols(); ++j)
        for (std::size_t ii = n; ii-- > 0;) {
            double s = x(ii, j);
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x(k, j);
            x(ii, j) = s / l(ii, ii);
        }
    return x;
}

/// Solves A X = B for symmetric positive definite A by Cholesky.
inline Matrix solve_spd(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("solve_spd dimension mismatch");
    if (!is_symmetric(a)) throw InputError("solve_spd needs a symmetric matrix");
    Matrix l = cholesky_lower(a);
    return backward_solve_transposed(l, forward_solve(l, b));
}

inline std::vector<double> solve_spd(const Matrix& a, std::span<const double> b) {
    Matrix col(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) col(i, 0) = b[i];
    Matrix x = solve_spd(a, col);
    std::vector<double> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
    return out;
}

struct SymmetricEigen {
    std::vector<double> values;  // unordered; pair i goes with vectors column i
    Matrix vectors;              // orthonormal columns
};

/// Cyclic Jacobi iteration for a symmetric matrix.  Runs sweeps until the
/// off-diagonal Frobenius norm drops below tol times the matrix norm.
inline SymmetricEigen jacobi_eigen(Matrix c, double tol = 1e-12, int max_sweeps = 64) {
    if (c.rows() != c.cols()) throw DimensionError("jacobi_eigen needs a square matrix");
    const std::size_t n = c.rows();
    Matrix v = Matrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += c(i, j) * c(i, j);
        return std::sqrt(2.0 * s);
    };
    double full = 0.0;
    for (double x : c.data()) full += x * x;
    full = std::sqrt(full);
    if (full == 0.0) full = 1.0;

    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * full; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = c(p, q);
                if (apq == 0.0) continue;
                double theta = (c(q, q) - c(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = t * cs;
                // rotate rows/columns p and q of C
                for (std::size_t k = 0; k < n; ++k) {
                    double ckp = c(k, p), ckq = c(k, q);
                    c(k, p) = cs * ckp - sn * ckq;
                    c(k, q) = sn * ckp + cs * ckq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double cpk = c(p, k), cqk = c(q, k);
                    c(p, k) = cs * cpk - sn * cqk;
                    c(q, k) = sn * cpk + cs * cqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = cs * vkp - sn * vkq;
                    v(k, q) = sn * vkp + cs * vkq;
                }
            }
        }
    }

    SymmetricEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = c(i, i);
    out.vectors = std::move(v);
    return out;
}

}  // namespace genre

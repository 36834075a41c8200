#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "dspca/errors.hpp"

namespace dspca {

// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double>&& values)
        : rows_(rows), cols_(cols), data_(std::move(values)) {
        if (data_.size() != rows * cols)
            throw InvalidInputError("Matrix: buffer size does not match shape");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Dense symmetric matrix, full n x n row-major storage. Mutation goes
// through set() so both triangles stay in sync; code that fills the raw
// buffer directly is responsible for restoring symmetry (symmetrize()).
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {
        if (n == 0) throw InvalidInputError("SymmetricMatrix: dimension must be >= 1");
    }

    // Validates symmetry of a dense matrix up to `tol` on the entry mismatch,
    // then averages the two triangles so the invariant holds exactly.
    static SymmetricMatrix from_dense(const Matrix& m, double tol = 1e-12) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw InvalidInputError("SymmetricMatrix: input must be square and non-empty");
        const std::size_t n = m.rows();
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(m(i, j)));
        SymmetricMatrix s(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                if (std::fabs(m(i, j) - m(j, i)) > tol * scale)
                    throw InvalidInputError("SymmetricMatrix: input is not symmetric");
                double v = 0.5 * (m(i, j) + m(j, i));
                s.data_[i * n + j] = v;
                s.data_[j * n + i] = v;
            }
        return s;
    }

    static SymmetricMatrix identity(std::size_t n) {
        SymmetricMatrix s(n);
        for (std::size_t i = 0; i < n; ++i) s.data_[i * n + i] = 1.0;
        return s;
    }

    std::size_t dim() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    // Restores exact symmetry after raw-buffer writes.
    void symmetrize() {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                double v = 0.5 * (data_[i * n_ + j] + data_[j * n_ + i]);
                data_[i * n_ + j] = v;
                data_[j * n_ + i] = v;
            }
    }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::fabs(v));
        return m;
    }

    // Max row sum of absolute values; upper bound on the spectral radius.
    double infinity_norm() const {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double r = 0.0;
            for (std::size_t j = 0; j < n_; ++j) r += std::fabs(data_[i * n_ + j]);
            m = std::max(m, r);
        }
        return m;
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Eigendecomposition with eigenvalues sorted descending and matching
// orthonormal eigenvector columns.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors; // n x k, column i pairs with eigenvalues[i]
};

// Normalized matrix-exponential gradient built from the leading eigenpairs.
struct TruncatedGradient {
    SymmetricMatrix matrix;             // PSD, unit trace
    int eigs_used = 0;                  // j, or n when a full decomposition ran
    std::vector<double> top_eigenvalues; // the j leading eigenvalues, descending
    bool condition_satisfied = false;
};

} // namespace dspca

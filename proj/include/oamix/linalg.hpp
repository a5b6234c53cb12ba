#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oamix::linalg {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Pivots below this magnitude are treated as zero.
inline constexpr double kSingularPivot = 1e-12;

/// X^T X, symmetric by construction.
Matrix xtx(const Matrix& x);

/// LU factorization with partial (row) pivoting: P M = L U.
class LuDecomposition {
public:
    /// Throws SingularMatrixError when a pivot falls below kSingularPivot.
    explicit LuDecomposition(Matrix m);

    double determinant() const;
    std::vector<double> solve(std::span<const double> b) const;
    Matrix inverse() const;

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

struct DetInverse {
    double determinant;
    Matrix inverse;
};

DetInverse lu_det_inv(const Matrix& m);
std::vector<double> solve(const Matrix& m, std::span<const double> b);

/// Numerical rank from the count of pivots above `tol` relative to the largest
/// absolute entry.
std::size_t rank(const Matrix& m, double tol = 1e-10);

/// Indices of columns of a symmetric positive semidefinite matrix that are
/// linearly dependent on earlier columns. Works on the diagonally scaled matrix
/// so the threshold is relative.
std::vector<std::size_t> dependent_columns(const Matrix& gram, double tol = 1e-10);

/// Inverse of a symmetric positive definite matrix computed on its unit-diagonal
/// scaling, together with log|M|. Throws SingularMatrixError.
struct SymmetricInverse {
    Matrix inverse;
    double log_det;
};
SymmetricInverse symmetric_inverse(const Matrix& gram);

double max_abs(const Matrix& m);

}  // namespace oamix::linalg

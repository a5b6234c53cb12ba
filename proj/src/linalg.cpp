#include "oamix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oamix/error.hpp"

namespace oamix::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols)
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                        std::to_string(rows * cols));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
    return id;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        out[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
    }
    return out;
}

Matrix xtx(const Matrix& x) {
    const std::size_t p = x.cols();
    Matrix g(p, p);
    for (std::size_t u = 0; u < x.rows(); ++u) {
        const auto r = x.row(u);
        for (std::size_t i = 0; i < p; ++i) {
            if (r[i] == 0.0) continue;
            for (std::size_t j = i; j < p; ++j) g(i, j) += r[i] * r[j];
        }
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

LuDecomposition::LuDecomposition(Matrix m) : lu_(std::move(m)) {
    if (!lu_.square()) throw Error(ErrorKind::DimensionMismatch, "LU needs a square matrix");
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu_(i, k)) > std::abs(lu_(pivot, k))) pivot = i;
        if (std::abs(lu_(pivot, k)) < kSingularPivot)
            throw SingularMatrixError("pivot " + std::to_string(k) + " below threshold");
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
            std::swap(perm_[k], perm_[pivot]);
            sign_ = -sign_;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) / lu_(k, k);
            lu_(i, k) = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

double LuDecomposition::determinant() const {
    double det = sign_;
    for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
    return det;
}

std::vector<double> LuDecomposition::solve(std::span<const double> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

Matrix LuDecomposition::inverse() const {
    const std::size_t n = lu_.rows();
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        e[c] = 1.0;
        const auto col = solve(e);
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
        e[c] = 0.0;
    }
    return inv;
}

DetInverse lu_det_inv(const Matrix& m) {
    LuDecomposition lu(m);
    return {lu.determinant(), lu.inverse()};
}

std::vector<double> solve(const Matrix& m, std::span<const double> b) {
    return LuDecomposition(m).solve(b);
}

double max_abs(const Matrix& m) {
    double best = 0.0;
    for (double v : m.data()) best = std::max(best, std::abs(v));
    return best;
}

std::size_t rank(const Matrix& m, double tol) {
    Matrix a = m;
    const double scale = max_abs(a);
    if (scale == 0.0) return 0;
    std::size_t r = 0;
    std::vector<bool> used(a.rows(), false);
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t best = a.rows();
        double best_val = tol * scale;
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (!used[i] && std::abs(a(i, c)) > best_val) {
                best = i;
                best_val = std::abs(a(i, c));
            }
        if (best == a.rows()) continue;
        used[best] = true;
        ++r;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (used[i]) continue;
            const double f = a(i, c) / a(best, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(best, j);
        }
    }
    return r;
}

namespace {

// D^{-1} M D^{-1} with D = sqrt(diag M); zero diagonals stay unscaled.
Matrix equilibrate(const Matrix& gram, std::vector<double>& d) {
    const std::size_t p = gram.rows();
    d.assign(p, 1.0);
    for (std::size_t i = 0; i < p; ++i)
        if (gram(i, i) > 0.0) d[i] = std::sqrt(gram(i, i));
    Matrix s(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) s(i, j) = gram(i, j) / (d[i] * d[j]);
    return s;
}

}  // namespace

std::vector<std::size_t> dependent_columns(const Matrix& gram, double tol) {
    if (!gram.square()) throw Error(ErrorKind::DimensionMismatch, "Gram matrix must be square");
    std::vector<double> d;
    Matrix a = equilibrate(gram, d);
    const std::size_t p = a.rows();
    std::vector<std::size_t> dependent;
    // symmetric elimination in column order without pivoting
    for (std::size_t k = 0; k < p; ++k) {
        if (a(k, k) <= tol) {
            dependent.push_back(k);
            continue;
        }
        for (std::size_t i = k + 1; i < p; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k + 1; j < p; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return dependent;
}

SymmetricInverse symmetric_inverse(const Matrix& gram) {
    if (!gram.square()) throw Error(ErrorKind::DimensionMismatch, "Gram matrix must be square");
    std::vector<double> d;
    const Matrix scaled = equilibrate(gram, d);
    LuDecomposition lu(scaled);
    Matrix inv = lu.inverse();
    const std::size_t p = gram.rows();
    double log_det = std::log(std::abs(lu.determinant()));
    for (std::size_t i = 0; i < p; ++i) {
        log_det += 2.0 * std::log(d[i]);
        for (std::size_t j = 0; j < p; ++j) inv(i, j) /= d[i] * d[j];
    }
    // symmetrize away rounding asymmetry
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double v = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = v;
            inv(j, i) = v;
        }
    return {std::move(inv), log_det};
}

}  // namespace oamix::linalg

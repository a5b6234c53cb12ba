// Independent reference computations used by the unit and acceptance tests.
// None of these call into the linear algebra or evaluation code under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/math/distributions/non_central_t.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "oamix/core.hpp"
#include "oamix/modelmat.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

// Laplace expansion along the first row.
inline double cofactor_det(const Dense& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    double det = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        Dense minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        det += ((c % 2 == 0) ? 1.0 : -1.0) * a[0][c] * cofactor_det(minor);
    }
    return det;
}

// Adjugate divided by the determinant.
inline Dense cofactor_inverse(const Dense& a) {
    const std::size_t n = a.size();
    const double det = cofactor_det(a);
    Dense inv(n, std::vector<double>(n));
    if (n == 1) {
        inv[0][0] = 1.0 / det;
        return inv;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Dense minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<double> row;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != j) row.push_back(a[r][k]);
                minor.push_back(std::move(row));
            }
            inv[j][i] = (((i + j) % 2 == 0) ? 1.0 : -1.0) * cofactor_det(minor) / det;
        }
    return inv;
}

// Least squares by modified Gram-Schmidt QR on the columns of X.
struct QrFit {
    std::vector<double> beta;
    double rss = 0.0;
};

inline QrFit qr_least_squares(const std::vector<std::vector<double>>& cols, const std::vector<double>& y) {
    const std::size_t p = cols.size();
    const std::size_t n = y.size();
    std::vector<std::vector<double>> q = cols;
    Dense r(p, std::vector<double>(p, 0.0));
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += q[i][k] * q[j][k];
            r[i][j] = dot;
            for (std::size_t k = 0; k < n; ++k) q[j][k] -= dot * q[i][k];
        }
        double norm = 0.0;
        for (double v : q[j]) norm += v * v;
        norm = std::sqrt(norm);
        r[j][j] = norm;
        for (double& v : q[j]) v /= norm;
    }
    std::vector<double> qty(p, 0.0);
    std::vector<double> resid = y;
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < n; ++k) qty[j] += q[j][k] * resid[k];
        for (std::size_t k = 0; k < n; ++k) resid[k] -= qty[j] * q[j][k];
    }
    QrFit fit;
    fit.beta.assign(p, 0.0);
    for (std::size_t j = p; j-- > 0;) {
        double s = qty[j];
        for (std::size_t k = j + 1; k < p; ++k) s -= r[j][k] * fit.beta[k];
        fit.beta[j] = s / r[j][j];
    }
    for (double e : resid) fit.rss += e * e;
    return fit;
}

inline std::vector<double> column(const oamix::ModelMatrix& x, std::size_t j) {
    std::vector<double> c(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) c[r] = x(r, j);
    return c;
}

// R^2 of column j regressed on the remaining columns, by explicit regression.
inline double regression_r_squared(const oamix::ModelMatrix& x, std::size_t j) {
    const bool intercept = x.column_index("1").has_value();
    std::vector<std::vector<double>> others;
    for (std::size_t k = 0; k < x.cols(); ++k)
        if (k != j) others.push_back(column(x, k));
    const auto y = column(x, j);
    const auto fit = qr_least_squares(others, y);
    const double mean = intercept ? std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size()) : 0.0;
    double tss = 0.0;
    for (double v : y) tss += (v - mean) * (v - mean);
    return 1.0 - fit.rss / tss;
}

// Two-sided t-test power from the noncentral t distribution.
inline double t_power(double delta, double df, double alpha) {
    const double crit = boost::math::quantile(boost::math::students_t(df), 1.0 - alpha / 2.0);
    const boost::math::non_central_t nct(df, delta);
    return boost::math::cdf(boost::math::complement(nct, crit)) + boost::math::cdf(nct, -crit);
}

// Maximum prediction variance over a simplex lattice with `levels` points per
// edge, every total amount of the design and every block. Each lattice point
// is paired with the orderings of every support containing its own, because a
// full-support sample can lie arbitrarily close to a boundary point while
// keeping its full set of ordering signs.
template <class PvFn>
double lattice_max_pv(const oamix::BlockedDesign& design, const oamix::ModelSpec& resolved, int levels,
                      const std::vector<double>& amounts, PvFn pv) {
    const int m = design.m;
    const int steps = levels - 1;
    double best = 0.0;
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    std::vector<double> totals = amounts;
    if (totals.empty()) totals.push_back(0.0);

    auto visit = [&](const std::vector<int>& cnt) {
        std::vector<double> x(static_cast<std::size_t>(m));
        unsigned own = 0;
        for (int i = 0; i < m; ++i) {
            x[static_cast<std::size_t>(i)] = static_cast<double>(cnt[static_cast<std::size_t>(i)]) / steps;
            if (cnt[static_cast<std::size_t>(i)] > 0) own |= 1u << i;
        }
        for (unsigned sup = 1; sup < (1u << m); ++sup) {
            if ((sup & own) != own) continue;
            std::vector<int> order;
            for (int i = 0; i < m; ++i)
                if (sup & (1u << i)) order.push_back(i + 1);
            do {
                oamix::Run run;
                run.pwo.assign(oamix::pair_count(m), 0);
                for (std::size_t a = 0; a < order.size(); ++a)
                    for (std::size_t b = a + 1; b < order.size(); ++b) {
                        const int j = std::min(order[a], order[b]);
                        const int k = std::max(order[a], order[b]);
                        run.pwo[oamix::pair_index(j, k, m)] = order[a] == j ? 1 : -1;
                    }
                for (double total : totals) {
                    run.amount = total;
                    run.values = x;
                    if (design.kind == oamix::DesignKind::Amount)
                        for (auto& v : run.values) v *= total;
                    for (int block = 1; block <= std::max(1, design.n_blocks); ++block) {
                        run.block = block;
                        const auto row = oamix::modelmat::model_row(run, m, design.kind, resolved);
                        best = std::max(best, pv(row));
                    }
                }
            } while (std::next_permutation(order.begin(), order.end()));
        }
    };

    // compositions of `steps` into m non-negative parts
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) {
            counts[static_cast<std::size_t>(i)] = left;
            visit(counts);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[static_cast<std::size_t>(i)] = c;
            self(self, i + 1, left - c);
        }
    };
    rec(rec, 0, steps);
    return best;
}

// Dense x' M x with M given as a row-major vector of vectors.
inline double quad_form(const Dense& m, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) s += v[i] * m[i][j] * v[j];
    return s;
}

}  // namespace oracle

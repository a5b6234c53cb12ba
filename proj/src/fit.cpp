#include "oamix/fit.hpp"

#include <cmath>
#include <numeric>

#include "oamix/error.hpp"
#include "oamix/evaluate.hpp"
#include "oamix/modelmat.hpp"

namespace oamix::fit {

std::vector<std::string> FitResult::names() const {
    std::vector<std::string> out;
    for (const auto& c : coefficients) out.push_back(c.name);
    return out;
}

std::vector<double> FitResult::estimates() const {
    std::vector<double> out;
    for (const auto& c : coefficients) out.push_back(c.estimate);
    return out;
}

namespace {

// Least-squares residual of the constant vector on X is zero iff 1 is in span(X).
bool spans_constant(const linalg::Matrix& xtx_inv, const linalg::Matrix& x) {
    const std::size_t n = x.rows();
    const std::vector<double> ones(n, 1.0);
    const auto xt1 = x.transpose() * std::span<const double>(ones);
    const auto b = xtx_inv * std::span<const double>(xt1);
    const auto fitted = x * std::span<const double>(b);
    double rss = 0.0;
    for (double f : fitted) rss += (1.0 - f) * (1.0 - f);
    return rss <= 1e-16 * static_cast<double>(n);
}

}  // namespace

FitResult ols_fit(const ModelMatrix& x, std::span<const double> y) {
    if (y.size() != x.rows)
        throw Error(ErrorKind::DimensionMismatch, "response has " + std::to_string(y.size()) +
                                                      " values for " + std::to_string(x.rows) +
                                                      " runs");
    if (x.rows <= x.cols())
        throw Error(ErrorKind::InsufficientDF, "n=" + std::to_string(x.rows) +
                                                   " must exceed p=" + std::to_string(x.cols()));
    const auto info = evaluate::information(x);
    const linalg::Matrix xm = modelmat::to_matrix(x);
    const auto xty = xm.transpose() * y;
    auto beta = info.inverse * std::span<const double>(xty);
    {
        // one step of iterative refinement
        const auto fitted = xm * std::span<const double>(beta);
        std::vector<double> resid(x.rows);
        for (std::size_t u = 0; u < x.rows; ++u) resid[u] = y[u] - fitted[u];
        const auto xtr = xm.transpose() * std::span<const double>(resid);
        const auto delta = info.inverse * std::span<const double>(xtr);
        for (std::size_t j = 0; j < beta.size(); ++j) beta[j] += delta[j];
    }

    FitResult r;
    r.info_inverse = info.inverse;
    r.fitted = xm * std::span<const double>(beta);
    r.residuals.resize(x.rows);
    double rss = 0.0;
    for (std::size_t u = 0; u < x.rows; ++u) {
        r.residuals[u] = y[u] - r.fitted[u];
        rss += r.residuals[u] * r.residuals[u];
    }
    r.df_residual = x.rows - x.cols();
    r.sigma_hat = std::sqrt(rss / static_cast<double>(r.df_residual));

    r.centered_r_squared = spans_constant(info.inverse, xm);
    const double mean = r.centered_r_squared
                            ? std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size())
                            : 0.0;
    double tss = 0.0;
    for (double v : y) tss += (v - mean) * (v - mean);
    r.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;

    for (std::size_t j = 0; j < x.cols(); ++j)
        r.coefficients.push_back({x.columns[j], beta[j], r.sigma_hat * std::sqrt(info.inverse(j, j))});
    return r;
}

Prediction predict(const FitResult& fit, const ModelMatrix& x_new) {
    if (x_new.columns != fit.names())
        throw Error(ErrorKind::SchemaError, "prediction columns do not match the fitted model");
    const auto beta = fit.estimates();
    Prediction out;
    const double s2 = fit.sigma_hat * fit.sigma_hat;
    for (std::size_t u = 0; u < x_new.rows; ++u) {
        const std::span<const double> row(x_new.data.data() + u * x_new.cols(), x_new.cols());
        out.values.push_back(std::inner_product(row.begin(), row.end(), beta.begin(), 0.0));
        out.variances.push_back(s2 * evaluate::prediction_variance(fit.info_inverse, row));
    }
    return out;
}

}  // namespace oamix::fit

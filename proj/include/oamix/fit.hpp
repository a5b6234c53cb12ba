#pragma once

#include <span>
#include <string>
#include <vector>

#include "oamix/core.hpp"
#include "oamix/linalg.hpp"

namespace oamix::fit {

struct Coefficient {
    std::string name;
    double estimate = 0.0;
    double se = 0.0;
};

struct FitResult {
    std::vector<Coefficient> coefficients;
    double sigma_hat = 0.0;
    std::size_t df_residual = 0;
    double r_squared = 0.0;
    bool centered_r_squared = false;  // true when the constant lies in the column space
    std::vector<double> fitted;
    std::vector<double> residuals;
    linalg::Matrix info_inverse;  // (X^T X)^{-1}

    std::vector<std::string> names() const;
    std::vector<double> estimates() const;
};

/// Ordinary least squares via the normal equations. Throws SingularMatrixError,
/// InsufficientDF or DimensionMismatch.
FitResult ols_fit(const ModelMatrix& x, std::span<const double> y);

struct Prediction {
    std::vector<double> values;
    std::vector<double> variances;  // sigma_hat^2 * x'(X^T X)^{-1} x
};

/// Throws SchemaError unless x_new has exactly the fitted columns.
Prediction predict(const FitResult& fit, const ModelMatrix& x_new);

}  // namespace oamix::fit

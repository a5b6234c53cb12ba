#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oamix/core.hpp"
#include "oamix/linalg.hpp"

namespace oamix::evaluate {

// ---------------------------------------------------------------------------
// Orthogonal blocking
// ---------------------------------------------------------------------------

/// One equal-sums condition: the per-block sums of a model term and the largest
/// cross-block discrepancy. `family` is one of block_size, linear, square,
/// cross, amount_scaled, pwo, pwo_interaction.
struct BlockCondition {
    std::string family;
    std::string term;
    std::vector<double> block_sums;
    double discrepancy = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct BlockingReport {
    std::vector<BlockCondition> conditions;
    bool pass = true;

    std::vector<std::string> failed_terms() const;
};

/// Mixture tolerance absorbs printed rounding (0.333 vs 0.334); ordering
/// columns are integers and are compared exactly.
struct BlockingTolerance {
    double mixture = 5e-3;
    double pwo = 0.0;
};

/// Per-block run counts (term "1") and column sums of every non-block model
/// term, compared across blocks. Sums are exact (correctly rounded). Throws
/// NothingToCheck when the design has fewer than two blocks.
BlockingReport check_orthogonal_blocking(const BlockedDesign& design, const ModelSpec& spec,
                                         BlockingTolerance tol = {});

/// Correctly rounded sum of `values`.
double exact_sum(std::span<const double> values);

// ---------------------------------------------------------------------------
// Information matrix and design criteria
// ---------------------------------------------------------------------------

struct Information {
    linalg::Matrix xtx;
    linalg::Matrix inverse;
    double log_det = 0.0;
};

/// (X^T X)^{-1} and log|X^T X|. Throws SingularMatrixError naming the columns
/// that depend on earlier ones.
Information information(const ModelMatrix& x);

/// row^T M row, in units of the error variance.
double prediction_variance(const linalg::Matrix& info_inv, std::span<const double> row);

struct PowerOptions {
    double sigma = 1.0;
    double alpha = 0.05;
    double effect_sd = 2.0;  // coefficient size, in units of sigma
};

struct ColumnReport {
    std::string name;
    double se = 0.0;
    std::optional<double> r_squared;
    std::optional<double> power;  // absent when n <= p
};

struct EvalReport {
    std::size_t n = 0;
    std::size_t p = 0;
    double det_xtx = 0.0;
    double log_det_xtx = 0.0;
    double d_criterion = 0.0;  // |X^T X|^{1/p} / n
    double a_criterion = 0.0;  // trace (X^T X)^{-1}
    double max_pv = 0.0;
    std::size_t max_pv_index = 0;
    double avg_pv = 0.0;
    double g_efficiency = 0.0;  // percent: 100 p / (n max_pv)
    PowerOptions power_options;
    std::vector<ColumnReport> columns;
    std::vector<std::string> notes;
};

/// Design criteria. Prediction variances are taken over the design rows, or
/// over `eval_points` (same columns) when given.
EvalReport criteria_report(const ModelMatrix& x, const ModelMatrix* eval_points = nullptr,
                           const PowerOptions& power = {});

// ---------------------------------------------------------------------------
// Power and collinearity
// ---------------------------------------------------------------------------

struct PowerRow {
    std::string name;
    double se = 0.0;
    double noncentrality = 0.0;
    double power = 0.0;
};

/// Power of the two-sided t-test (df = n - p) for each coefficient when its
/// true value is effect_sd * sigma. Throws InsufficientDF when n <= p.
std::vector<PowerRow> power_table(const ModelMatrix& x, const PowerOptions& options = {});

/// P(|T| > t_{1-alpha/2, df}) for T noncentral t with the given df and
/// noncentrality, by quadrature over the chi distribution of the denominator.
double t_test_power(double noncentrality, double df, double alpha);

/// Squared multiple correlation of each column with all the others. Total sum
/// of squares is taken about the column mean when an intercept column ("1") is
/// present, about zero otherwise. The intercept itself gets no value.
std::vector<std::optional<double>> term_r_squared(const ModelMatrix& x);

// ---------------------------------------------------------------------------
// Fraction of design space
// ---------------------------------------------------------------------------

struct FdsPoint {
    double fraction = 0.0;
    double variance = 0.0;
};

struct FdsCurve {
    std::vector<FdsPoint> points;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Samples points uniformly from the design space (simplex direction, total
/// amount from the design's amount levels, a uniform ordering of the support,
/// a uniform block) and returns their sorted prediction variances. Samples
/// are drawn in fixed-size substreams, so the result does not depend on
/// `threads`.
FdsCurve fds_curve(const BlockedDesign& design, const ModelSpec& spec, std::size_t n_samples,
                   std::uint64_t seed, unsigned threads = 1);

/// Distinct total amounts of the design, ascending; empty when no run has a
/// positive total.
std::vector<double> amount_levels(const BlockedDesign& design);

}  // namespace oamix::evaluate

#include "oamix/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oamix/error.hpp"
#include "oamix/modelmat.hpp"
#include "oamix/pwo.hpp"

namespace oamix::evaluate {

// ---------------------------------------------------------------------------
// Blocking
// ---------------------------------------------------------------------------

double exact_sum(std::span<const double> values) {
    // Shewchuk's non-overlapping partials
    std::vector<double> partials;
    for (double x : values) {
        std::size_t i = 0;
        for (double y : partials) {
            if (std::abs(x) < std::abs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials[i++] = lo;
            x = hi;
        }
        partials.resize(i);
        partials.push_back(x);
    }
    double total = 0.0;
    for (auto it = partials.rbegin(); it != partials.rend(); ++it) total += *it;
    return total;
}

namespace {

std::string condition_family(const std::string& term) {
    if (term == "1") return "block_size";
    if (term.front() == 'z') return "pwo";
    if (term.find("*z") != std::string::npos) return "pwo_interaction";
    if (term.find("*A") != std::string::npos) return "amount_scaled";
    if (term.find('*') != std::string::npos) return "cross";
    if (term.find("^2") != std::string::npos) return "square";
    return "linear";
}

}  // namespace

std::vector<std::string> BlockingReport::failed_terms() const {
    std::vector<std::string> out;
    for (const auto& c : conditions)
        if (!c.pass) out.push_back(c.term);
    return out;
}

BlockingReport check_orthogonal_blocking(const BlockedDesign& design, const ModelSpec& spec_in,
                                         BlockingTolerance tol) {
    if (design.n_blocks < 2)
        throw Error(ErrorKind::NothingToCheck, "design has a single block");
    ModelSpec spec = spec_in;
    spec.include_block = false;
    spec.coding = Coding::Raw;
    const ModelMatrix x = modelmat::build_model_matrix(design, spec);

    const auto blocks = static_cast<std::size_t>(design.n_blocks);
    const bool has_intercept = x.column_index("1").has_value();
    BlockingReport report;
    for (std::size_t c = has_intercept ? 1 : 0; c <= x.cols(); ++c) {
        // column 0 (without an intercept) is the implicit all-ones column
        std::vector<std::vector<double>> per_block(blocks);
        for (std::size_t u = 0; u < x.rows; ++u)
            per_block[static_cast<std::size_t>(design.runs[u].block - 1)].push_back(c == 0 ? 1.0 : x(u, c - 1));

        BlockCondition cond;
        cond.term = c == 0 ? "1" : x.columns[c - 1];
        cond.family = condition_family(cond.term);
        for (const auto& values : per_block) cond.block_sums.push_back(exact_sum(values));
        const auto [lo, hi] = std::minmax_element(cond.block_sums.begin(), cond.block_sums.end());
        cond.discrepancy = *hi - *lo;
        const bool ordering = cond.family == "pwo" || cond.family == "pwo_interaction";
        cond.tolerance = ordering ? tol.pwo : tol.mixture;
        cond.pass = cond.discrepancy <= cond.tolerance;
        report.pass = report.pass && cond.pass;
        report.conditions.push_back(std::move(cond));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Information and criteria
// ---------------------------------------------------------------------------

Information information(const ModelMatrix& x) {
    const linalg::Matrix xm = modelmat::to_matrix(x);
    Information info;
    info.xtx = linalg::xtx(xm);
    const auto dependent = linalg::dependent_columns(info.xtx);
    if (!dependent.empty() || x.rows < x.cols()) {
        std::vector<std::string> names;
        for (auto c : dependent) names.push_back(x.columns[c]);
        std::string what = "model matrix is rank deficient";
        if (!names.empty()) {
            what += "; dependent columns:";
            for (const auto& n : names) what += " " + n;
        }
        throw SingularMatrixError(what, std::move(names));
    }
    try {
        auto inv = linalg::symmetric_inverse(info.xtx);
        info.inverse = std::move(inv.inverse);
        info.log_det = inv.log_det;
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("information matrix is numerically singular");
    }
    return info;
}

double prediction_variance(const linalg::Matrix& info_inv, std::span<const double> row) {
    if (!info_inv.square() || info_inv.cols() != row.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "row has " + std::to_string(row.size()) + " entries, matrix is " +
                        std::to_string(info_inv.rows()) + "x" + std::to_string(info_inv.cols()));
    double pv = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0.0) continue;
        double s = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) s += info_inv(i, j) * row[j];
        pv += row[i] * s;
    }
    return pv;
}

namespace {

std::vector<std::optional<double>> r_squared_from(const ModelMatrix& x, const linalg::Matrix& inv) {
    const std::size_t p = x.cols();
    const auto intercept = x.column_index("1");
    std::vector<std::optional<double>> out(p);
    if (p < 2) return out;
    for (std::size_t j = 0; j < p; ++j) {
        if (intercept && *intercept == j) continue;
        double mean = 0.0;
        if (intercept) {
            for (std::size_t u = 0; u < x.rows; ++u) mean += x(u, j);
            mean /= static_cast<double>(x.rows);
        }
        double tss = 0.0;
        for (std::size_t u = 0; u < x.rows; ++u) tss += (x(u, j) - mean) * (x(u, j) - mean);
        if (tss <= 0.0) continue;
        // residual sum of squares of column j on the rest is 1 / [(X'X)^{-1}]_jj
        const double rss = 1.0 / inv(j, j);
        out[j] = 1.0 - rss / tss;
    }
    return out;
}

}  // namespace

EvalReport criteria_report(const ModelMatrix& x, const ModelMatrix* eval_points,
                           const PowerOptions& power) {
    const Information info = information(x);
    EvalReport r;
    r.n = x.rows;
    r.p = x.cols();
    r.power_options = power;
    r.log_det_xtx = info.log_det;
    r.det_xtx = std::exp(info.log_det);
    r.d_criterion = std::exp(info.log_det / static_cast<double>(r.p)) / static_cast<double>(r.n);
    for (std::size_t i = 0; i < r.p; ++i) r.a_criterion += info.inverse(i, i);

    const ModelMatrix& points = eval_points ? *eval_points : x;
    if (points.columns != x.columns)
        throw Error(ErrorKind::SchemaError, "evaluation points do not match the model columns");
    if (points.rows == 0) throw Error(ErrorKind::EmptyDesign, "no evaluation points");
    double total = 0.0;
    for (std::size_t u = 0; u < points.rows; ++u) {
        const std::span<const double> row(points.data.data() + u * points.cols(), points.cols());
        const double pv = prediction_variance(info.inverse, row);
        total += pv;
        if (pv > r.max_pv) {
            r.max_pv = pv;
            r.max_pv_index = u;
        }
    }
    r.avg_pv = total / static_cast<double>(points.rows);
    r.g_efficiency = 100.0 * static_cast<double>(r.p) / (static_cast<double>(r.n) * r.max_pv);

    const auto r2 = r_squared_from(x, info.inverse);
    const double df = static_cast<double>(r.n) - static_cast<double>(r.p);
    for (std::size_t j = 0; j < r.p; ++j) {
        ColumnReport c;
        c.name = x.columns[j];
        c.se = power.sigma * std::sqrt(info.inverse(j, j));
        c.r_squared = r2[j];
        if (df > 0) c.power = t_test_power(power.effect_sd * power.sigma / c.se, df, power.alpha);
        r.columns.push_back(std::move(c));
    }
    r.notes = {
        "prediction variance is x'(X'X)^-1 x in units of sigma^2; G-efficiency = 100 p / (n max_pv)",
        "d_criterion = |X'X|^(1/p) / n; the published D-efficiency value 9411.03 follows an "
        "unstated convention and is not reproduced",
        "power: two-sided t-test, df = n - p, true coefficient = effect_sd * sigma; the published "
        "'2 Std. Dev' power percentages follow an unstated convention and are not reproduced",
    };
    return r;
}

// ---------------------------------------------------------------------------
// Power
// ---------------------------------------------------------------------------

double t_test_power(double noncentrality, double df, double alpha) {
    if (!(df > 0.0)) throw Error(ErrorKind::InsufficientDF, "t-test needs positive df");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::SpecError, "alpha must lie in (0,1)");
    const boost::math::students_t dist(df);
    const double tc = boost::math::quantile(dist, 1.0 - alpha / 2.0);
    const double delta = noncentrality;

    // s = sqrt(W/df), W ~ chi^2_df; T = (Z + delta) / s
    const double half = df / 2.0;
    const double log_norm = std::log(2.0) + half * std::log(half) - std::lgamma(half);
    auto density = [&](double s) {
        if (s <= 0.0) return 0.0;
        return std::exp(log_norm + (df - 1.0) * std::log(s) - half * s * s);
    };
    auto phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    auto integrand = [&](double s) {
        return density(s) * (phi(delta - tc * s) + phi(-delta - tc * s));
    };

    const double spread = 1.0 / std::sqrt(2.0 * df);
    const double lo = std::max(0.0, 1.0 - 14.0 * spread);
    const double hi = 1.0 + 14.0 * std::max(spread, 0.75);
    using boost::math::quadrature::gauss_kronrod;
    double result = gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 20, 1e-12);
    return std::clamp(result, 0.0, 1.0);
}

std::vector<PowerRow> power_table(const ModelMatrix& x, const PowerOptions& options) {
    if (x.rows <= x.cols())
        throw Error(ErrorKind::InsufficientDF, "n=" + std::to_string(x.rows) +
                                                   " must exceed p=" + std::to_string(x.cols()));
    if (!(options.sigma > 0.0)) throw Error(ErrorKind::SpecError, "sigma must be positive");
    const Information info = information(x);
    const double df = static_cast<double>(x.rows - x.cols());
    std::vector<PowerRow> rows;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        PowerRow r;
        r.name = x.columns[j];
        r.se = options.sigma * std::sqrt(info.inverse(j, j));
        r.noncentrality = options.effect_sd * options.sigma / r.se;
        r.power = t_test_power(r.noncentrality, df, options.alpha);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::optional<double>> term_r_squared(const ModelMatrix& x) {
    if (x.cols() < 2) throw Error(ErrorKind::SpecError, "term R^2 needs at least two columns");
    return r_squared_from(x, information(x).inverse);
}

// ---------------------------------------------------------------------------
// FDS
// ---------------------------------------------------------------------------

std::vector<double> amount_levels(const BlockedDesign& design) {
    std::vector<double> levels;
    for (const auto& run : design.runs)
        if (run.amount > 0.0) levels.push_back(run.amount);
    std::sort(levels.begin(), levels.end());
    std::vector<double> distinct;
    for (double a : levels)
        if (distinct.empty() || a - distinct.back() > kSumTolerance) distinct.push_back(a);
    return distinct;
}

namespace {

constexpr std::size_t kSubstreamSize = 256;

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

Run sample_run(std::mt19937_64& eng, const BlockedDesign& design,
               const std::vector<double>& levels) {
    const auto m = static_cast<std::size_t>(design.m);
    std::vector<double> x(m);
    double total = 0.0;
    for (auto& v : x) {
        v = -std::log1p(-uniform01(eng));
        total += v;
    }
    if (total <= 0.0) x.assign(m, 1.0 / static_cast<double>(m));
    else
        for (auto& v : x) v /= total;

    Run run;
    run.amount = levels.empty() ? 0.0 : levels[eng() % levels.size()];
    run.values = x;
    if (design.kind == DesignKind::Amount)
        for (auto& v : run.values) v *= run.amount;

    Permutation order = pwo::support_of(x);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[eng() % i]);
    run.pwo = pwo::from_run(run.values, order);
    run.block = design.n_blocks >= 2 ? 1 + static_cast<int>(eng() & 1u) : 1;
    return run;
}

}  // namespace

FdsCurve fds_curve(const BlockedDesign& design, const ModelSpec& spec_in, std::size_t n_samples,
                   std::uint64_t seed, unsigned threads) {
    if (n_samples == 0) throw Error(ErrorKind::SpecError, "n_samples must be at least 1");
    const ModelMatrix x = modelmat::build_model_matrix(design, spec_in);
    const Information info = information(x);
    const ModelSpec spec = modelmat::resolve_coding(design, spec_in);
    const auto levels = amount_levels(design);

    std::vector<double> variances(n_samples);
    const std::size_t streams = (n_samples + kSubstreamSize - 1) / kSubstreamSize;
    auto work = [&](std::size_t first, std::size_t step) {
        for (std::size_t s = first; s < streams; s += step) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(s)};
            std::mt19937_64 eng(seq);
            const std::size_t end = std::min(n_samples, (s + 1) * kSubstreamSize);
            for (std::size_t i = s * kSubstreamSize; i < end; ++i) {
                const Run run = sample_run(eng, design, levels);
                const auto row = modelmat::model_row(run, design.m, design.kind, spec);
                variances[i] = prediction_variance(info.inverse, row);
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, streams);
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& t : pool) t.join();
    }

    std::sort(variances.begin(), variances.end());
    FdsCurve curve;
    curve.samples = n_samples;
    curve.seed = seed;
    curve.points.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i)
        curve.points.push_back({(static_cast<double>(i) + 0.5) / static_cast<double>(n_samples),
                                variances[i]});
    return curve;
}

}  // namespace oamix::evaluate

#include "oamix/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "oamix/error.hpp"

namespace oamix {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidPermutation: return "InvalidPermutation";
        case ErrorKind::SupportMismatch: return "SupportMismatch";
        case ErrorKind::InconsistentPWO: return "InconsistentPWO";
        case ErrorKind::EmptySupport: return "EmptySupport";
        case ErrorKind::AlreadyExpanded: return "AlreadyExpanded";
        case ErrorKind::InvalidAmount: return "InvalidAmount";
        case ErrorKind::KindMismatch: return "KindMismatch";
        case ErrorKind::SpecError: return "SpecError";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NothingToCheck: return "NothingToCheck";
        case ErrorKind::InsufficientDF: return "InsufficientDF";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::EmptyDesign: return "EmptyDesign";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::IOError: return "IOError";
    }
    return "Error";
}

bool BlockedDesign::has_pwo() const noexcept {
    for (const auto& run : runs)
        for (int z : run.pwo)
            if (z != 0) return true;
    return false;
}

std::optional<std::size_t> ModelMatrix::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    return std::nullopt;
}

std::size_t pair_count(int m) {
    return m < 2 ? 0 : static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2;
}

std::size_t pair_index(int j, int k, int m) {
    if (j < 1 || k <= j || k > m)
        throw Error(ErrorKind::SpecError, "invalid pair (" + std::to_string(j) + "," +
                                              std::to_string(k) + ") for m=" + std::to_string(m));
    // pairs starting with 1..j-1 come first
    std::size_t before = 0;
    for (int r = 1; r < j; ++r) before += static_cast<std::size_t>(m - r);
    return before + static_cast<std::size_t>(k - j - 1);
}

std::pair<int, int> pair_at(std::size_t index, int m) {
    for (int j = 1; j < m; ++j) {
        const auto row = static_cast<std::size_t>(m - j);
        if (index < row) return {j, j + 1 + static_cast<int>(index)};
        index -= row;
    }
    throw Error(ErrorKind::SpecError, "pair index out of range");
}

bool is_amount_family(ModelFamily family) {
    return family == ModelFamily::ComponentAmountLinear ||
           family == ModelFamily::ComponentAmountQuadratic;
}

const char* family_name(ModelFamily family) {
    switch (family) {
        case ModelFamily::ScheffeLinear: return "scheffe_linear";
        case ModelFamily::ScheffeQuadratic: return "scheffe_quadratic";
        case ModelFamily::KQuadratic: return "k_quadratic";
        case ModelFamily::MixtureAmountLinear: return "mixture_amount_linear";
        case ModelFamily::MixtureAmountQuadratic: return "mixture_amount_quadratic";
        case ModelFamily::ComponentAmountLinear: return "component_amount_linear";
        case ModelFamily::ComponentAmountQuadratic: return "component_amount_quadratic";
    }
    return "unknown";
}

const char* kind_name(DesignKind kind) {
    return kind == DesignKind::Amount ? "amount" : "proportion";
}

ValidationReport validate_design(const BlockedDesign& design) {
    ValidationReport report;
    auto add = [&](std::optional<std::size_t> run, const char* rule, std::string detail) {
        report.push_back({run, rule, std::move(detail)});
    };

    if (design.m < 2) add(std::nullopt, "too_few_components", "m=" + std::to_string(design.m));
    if (design.n_blocks < 1)
        add(std::nullopt, "n_blocks", "n_blocks=" + std::to_string(design.n_blocks));

    const std::size_t pairs = pair_count(design.m);
    std::vector<std::size_t> block_sizes(static_cast<std::size_t>(std::max(design.n_blocks, 0)), 0);

    for (std::size_t u = 0; u < design.runs.size(); ++u) {
        const Run& run = design.runs[u];
        const bool values_ok = run.values.size() == static_cast<std::size_t>(design.m);
        if (!values_ok)
            add(u, "value_count", "expected " + std::to_string(design.m) + " values, got " +
                                      std::to_string(run.values.size()));
        for (std::size_t i = 0; i < run.values.size(); ++i)
            if (!(run.values[i] >= 0.0))
                add(u, "negative_value", "component " + std::to_string(i + 1));

        const bool pwo_ok = run.pwo.size() == pairs;
        if (!pwo_ok)
            add(u, "pwo_length", "expected " + std::to_string(pairs) + " entries, got " +
                                     std::to_string(run.pwo.size()));
        for (std::size_t p = 0; p < run.pwo.size(); ++p)
            if (run.pwo[p] < -1 || run.pwo[p] > 1)
                add(u, "pwo_entry_out_of_range", "entry " + std::to_string(p));

        if (values_ok && pwo_ok) {
            for (std::size_t p = 0; p < pairs; ++p) {
                const auto [j, k] = pair_at(p, design.m);
                const bool absent = run.values[static_cast<std::size_t>(j - 1)] == 0.0 ||
                                    run.values[static_cast<std::size_t>(k - 1)] == 0.0;
                if (absent && run.pwo[p] != 0)
                    add(u, "pwo_nonzero_for_zero_component",
                        "z" + std::to_string(j) + std::to_string(k));
            }
        }

        const double sum = std::accumulate(run.values.begin(), run.values.end(), 0.0);
        if (design.kind == DesignKind::Proportion) {
            if (std::abs(sum - 1.0) > kSumTolerance) {
                std::ostringstream os;
                os << "sum=" << sum;
                add(u, "proportion_sum", os.str());
            }
        } else {
            if (!(run.amount >= 0.0)) add(u, "negative_amount", "");
            if (std::abs(run.amount - sum) > kSumTolerance) {
                std::ostringstream os;
                os << "A=" << run.amount << " sum=" << sum;
                add(u, "amount_mismatch", os.str());
            }
        }

        if (run.block < 1 || run.block > design.n_blocks)
            add(u, "block_out_of_range", "block=" + std::to_string(run.block));
        else
            ++block_sizes[static_cast<std::size_t>(run.block - 1)];
    }

    for (std::size_t w = 0; w < block_sizes.size(); ++w)
        if (block_sizes[w] == 0) add(std::nullopt, "empty_block", "block " + std::to_string(w + 1));

    return report;
}

void require_valid(const BlockedDesign& design) {
    const auto report = validate_design(design);
    if (report.empty()) return;
    std::ostringstream os;
    os << report.size() << " violation(s)";
    for (std::size_t i = 0; i < report.size() && i < 5; ++i) {
        os << "; " << report[i].rule;
        if (report[i].run) os << " at run " << (*report[i].run + 1);
        if (!report[i].detail.empty()) os << " (" << report[i].detail << ")";
    }
    throw Error(ErrorKind::ValidationError, os.str());
}

}  // namespace oamix

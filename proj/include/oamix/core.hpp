#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oamix {

/// Pair-wise ordering vector. Entry for pair (j,k), j<k, is +1 if j is added
/// before k, -1 if after, 0 if either component is absent from the blend.
/// Pairs are stored lexicographically: z12, z13, ..., z1m, z23, ...
using Pwo = std::vector<int>;

/// Order of addition over a support set. Elements are 1-based component indices.
using Permutation = std::vector<int>;

enum class DesignKind { Proportion, Amount };

struct Run {
    std::vector<double> values;  // proportions x_i or amounts a_i
    Pwo pwo;
    int block = 1;
    double amount = 0.0;  // total amount A; amount designs require A == sum(values)

    bool operator==(const Run&) const = default;
};

struct BlockedDesign {
    int m = 0;
    DesignKind kind = DesignKind::Proportion;
    std::vector<Run> runs;
    int n_blocks = 1;

    std::size_t size() const noexcept { return runs.size(); }
    bool has_pwo() const noexcept;
    bool operator==(const BlockedDesign&) const = default;
};

enum class ModelFamily {
    ScheffeLinear,
    ScheffeQuadratic,
    KQuadratic,
    MixtureAmountLinear,
    MixtureAmountQuadratic,
    ComponentAmountLinear,
    ComponentAmountQuadratic,
};

/// x_i * z_kl term; all indices 1-based, pair.first < pair.second.
struct InteractionTerm {
    int component = 0;
    std::pair<int, int> pair{0, 0};

    bool operator==(const InteractionTerm&) const = default;
};

/// How component columns enter the model matrix. `Coded` maps each component
/// value v to 2 v / R - 1 over the range [0, R]; R is 1 for proportions and the
/// largest total amount for amount designs unless `coding_range` is given.
/// Coding is an affine change of basis, so fitted values and prediction
/// variances are unaffected; coefficient standard errors are not.
enum class Coding { Raw, Coded };

struct ModelSpec {
    ModelFamily family = ModelFamily::ScheffeQuadratic;
    bool include_pwo = false;
    std::vector<InteractionTerm> interaction_terms;
    bool include_block = false;
    std::optional<bool> include_intercept;  // nullopt: family default
    Coding coding = Coding::Raw;
    std::optional<double> coding_range;
};

struct ModelMatrix {
    std::vector<std::string> columns;
    std::size_t rows = 0;
    std::vector<double> data;  // row-major, rows x columns.size()

    std::size_t cols() const noexcept { return columns.size(); }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
    std::optional<std::size_t> column_index(const std::string& name) const;
};

struct Violation {
    std::optional<std::size_t> run;  // nullopt for design-level rules
    std::string rule;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

inline constexpr double kSumTolerance = 1e-9;

std::size_t pair_count(int m);
/// Position of pair (j,k), 1 <= j < k <= m, in a Pwo vector.
std::size_t pair_index(int j, int k, int m);
/// Inverse of pair_index.
std::pair<int, int> pair_at(std::size_t index, int m);

bool is_amount_family(ModelFamily family);
const char* family_name(ModelFamily family);
const char* kind_name(DesignKind kind);

/// Checks every Run/BlockedDesign invariant. Never throws; an empty report
/// means the design is valid.
ValidationReport validate_design(const BlockedDesign& design);

/// Throws Error(ValidationError) listing the first violations when invalid.
void require_valid(const BlockedDesign& design);

}  // namespace oamix

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oamix/core.hpp"
#include "oamix/linalg.hpp"

namespace oamix::modelmat {

/// Column names, in canonical order, that build_model_matrix produces for
/// `spec` on an m-component design. Validates `spec`; throws SpecError.
std::vector<std::string> column_names(const ModelSpec& spec, int m);

/// Expands a design into its model matrix. Column order: intercept, linear,
/// pure quadratic, cross products, amount-multiplied groups, z columns,
/// interactions (spec order), block. Throws KindMismatch, SpecError,
/// ValidationError.
ModelMatrix build_model_matrix(const BlockedDesign& design, const ModelSpec& spec);

/// Returns `spec` with coding_range filled in from the design when coding is
/// requested and no explicit range was given.
ModelSpec resolve_coding(const BlockedDesign& design, ModelSpec spec);

/// Model row for a single run without design-level validation; `spec` must
/// already be resolved. Used to evaluate points that are not design runs.
std::vector<double> model_row(const Run& run, int m, DesignKind kind, const ModelSpec& spec);

/// The mixture-order interactions reported for three components:
/// x1*z12, x1*z13, x2*z23. Throws Unsupported for m != 3.
std::vector<InteractionTerm> default_interaction_subset(int m);

/// Every x_i*z_kl with i in {k,l}, ordered by pair then component.
std::vector<InteractionTerm> full_interaction_set(int m);

linalg::Matrix to_matrix(const ModelMatrix& x);

/// Short model names: scheffe-l, scheffe-q, k-q, ma-l, ma-q, ca-l, ca-q.
/// Throws SpecError for anything else.
ModelFamily family_from_name(std::string_view name);
const std::vector<std::string>& family_short_names();

/// "none", "default", "full", or a comma list of terms written x1*z12 (a1*z12)
/// or 1:12. Throws SpecError or Unsupported.
std::vector<InteractionTerm> parse_interactions(std::string_view text, int m);

}  // namespace oamix::modelmat

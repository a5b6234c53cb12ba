#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oamix/core.hpp"

namespace oamix::catalog {

/// Which base runs are replicated over their orderings. Runs with two or more
/// nonzero components always receive every ordering; a single-component run
/// has one trivial ordering, kept or dropped by `vertex_orders`.
struct ExpansionPolicy {
    enum class Vertex { All, None };
    Vertex vertex_orders = Vertex::All;
};

/// Czitrom's three-component D-optimal design for the quadratic Scheffe model,
/// two Latin-square blocks plus a centroid in each.
BlockedDesign czitrom_d_optimal();

/// Aggarwal's A-optimal design for the quadratic K-model, same layout.
BlockedDesign aggarwal_a_optimal();

/// Order-of-addition versions of the two designs above (24 runs, 12 per
/// block) with the ordering columns as published.
BlockedDesign czitrom_d_oofa();
BlockedDesign aggarwal_a_oofa();

/// 36-run component-amount design in two blocks of 18: the published
/// projection design at unit total amount, scaled by `a_max`.
BlockedDesign component_amount_projection_design(double a_max);

/// Replaces each base run, inside its block, by one run per ordering of its
/// support. Throws AlreadyExpanded when a base run carries ordering data.
BlockedDesign oofa_expand(const BlockedDesign& base, ExpansionPolicy policy = {});

/// Names accepted by by_name().
const std::vector<std::string>& names();

/// Catalog lookup; `a_max` only applies to "ca-projection".
BlockedDesign by_name(std::string_view name, double a_max = 1.0);

}  // namespace oamix::catalog

#pragma once

#include <span>
#include <vector>

#include "oamix/core.hpp"

namespace oamix::pwo {

/// PWO vector of a full ordering of components 1..m. Throws InvalidPermutation.
Pwo from_permutation(std::span<const int> perm, int m);

/// PWO vector of a blend: pairs touching a zero component are 0, all other
/// pairs follow the order in `perm`, which must list exactly the nonzero
/// components. Throws SupportMismatch.
Pwo from_run(std::span<const double> values, std::span<const int> perm);

/// Recovers the order encoded by `pwo` over `support` (1-based indices).
/// Throws SupportMismatch or InconsistentPWO.
Permutation to_permutation(std::span<const int> pwo, std::span<const int> support, int m);

/// 1-based indices of the nonzero components.
std::vector<int> support_of(std::span<const double> values);

/// One PWO vector per ordering of the blend's support, sorted in descending
/// lexicographic order of the vectors (so the identity order comes first and
/// the full reversal last). Throws EmptySupport.
std::vector<Pwo> enumerate_orderings(std::span<const double> values);

}  // namespace oamix::pwo

#include "oamix/pwo.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "oamix/error.hpp"

namespace oamix::pwo {
namespace {

// position[c] = place of component c in perm, or -1 when absent
std::vector<int> positions(std::span<const int> perm, int m, ErrorKind on_error) {
    std::vector<int> position(static_cast<std::size_t>(m + 1), -1);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        const int c = perm[i];
        if (c < 1 || c > m)
            throw Error(on_error, "component " + std::to_string(c) + " outside 1.." +
                                      std::to_string(m));
        if (position[static_cast<std::size_t>(c)] != -1)
            throw Error(on_error, "component " + std::to_string(c) + " repeated");
        position[static_cast<std::size_t>(c)] = static_cast<int>(i);
    }
    return position;
}

}  // namespace

Pwo from_permutation(std::span<const int> perm, int m) {
    if (m < 1 || perm.size() != static_cast<std::size_t>(m))
        throw Error(ErrorKind::InvalidPermutation,
                    "expected a permutation of 1.." + std::to_string(m));
    const auto position = positions(perm, m, ErrorKind::InvalidPermutation);
    Pwo z;
    z.reserve(pair_count(m));
    for (int j = 1; j < m; ++j)
        for (int k = j + 1; k <= m; ++k) z.push_back(position[j] < position[k] ? 1 : -1);
    return z;
}

std::vector<int> support_of(std::span<const double> values) {
    std::vector<int> support;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0.0) support.push_back(static_cast<int>(i + 1));
    return support;
}

Pwo from_run(std::span<const double> values, std::span<const int> perm) {
    const int m = static_cast<int>(values.size());
    const auto position = positions(perm, m, ErrorKind::SupportMismatch);
    for (int c = 1; c <= m; ++c) {
        const bool present = values[static_cast<std::size_t>(c - 1)] != 0.0;
        const bool ordered = position[static_cast<std::size_t>(c)] != -1;
        if (present != ordered)
            throw Error(ErrorKind::SupportMismatch,
                        "component " + std::to_string(c) +
                            (present ? " is nonzero but not ordered" : " is zero but ordered"));
    }
    Pwo z;
    z.reserve(pair_count(m));
    for (int j = 1; j < m; ++j)
        for (int k = j + 1; k <= m; ++k) {
            const int pj = position[static_cast<std::size_t>(j)];
            const int pk = position[static_cast<std::size_t>(k)];
            z.push_back(pj < 0 || pk < 0 ? 0 : (pj < pk ? 1 : -1));
        }
    return z;
}

Permutation to_permutation(std::span<const int> pwo, std::span<const int> support, int m) {
    if (pwo.size() != pair_count(m))
        throw Error(ErrorKind::SupportMismatch, "PWO vector has wrong length");
    std::vector<bool> in_support(static_cast<std::size_t>(m + 1), false);
    for (int c : support) {
        if (c < 1 || c > m || in_support[static_cast<std::size_t>(c)])
            throw Error(ErrorKind::SupportMismatch, "invalid support set");
        in_support[static_cast<std::size_t>(c)] = true;
    }

    // A total order on s elements has precedence out-degrees {s-1, ..., 0}.
    const std::size_t s = support.size();
    std::vector<std::size_t> out_degree(static_cast<std::size_t>(m + 1), 0);
    for (std::size_t p = 0; p < pwo.size(); ++p) {
        const auto [j, k] = pair_at(p, m);
        const bool on_support = in_support[static_cast<std::size_t>(j)] &&
                                in_support[static_cast<std::size_t>(k)];
        const int z = pwo[p];
        if (!on_support) {
            if (z != 0)
                throw Error(ErrorKind::SupportMismatch,
                            "z" + std::to_string(j) + std::to_string(k) +
                                " is nonzero off the support");
            continue;
        }
        if (z == 1)
            ++out_degree[static_cast<std::size_t>(j)];
        else if (z == -1)
            ++out_degree[static_cast<std::size_t>(k)];
        else
            throw Error(ErrorKind::SupportMismatch,
                        "z" + std::to_string(j) + std::to_string(k) + " is zero on the support");
    }

    Permutation order(s, 0);
    for (int c : support) {
        const std::size_t slot = s - 1 - out_degree[static_cast<std::size_t>(c)];
        if (order[slot] != 0)
            throw Error(ErrorKind::InconsistentPWO, "precedence relation is not a total order");
        order[slot] = c;
    }
    return order;
}

std::vector<Pwo> enumerate_orderings(std::span<const double> values) {
    Permutation perm = support_of(values);
    if (perm.empty()) throw Error(ErrorKind::EmptySupport, "blend has no nonzero component");
    std::vector<Pwo> out;
    do {
        out.push_back(from_run(values, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace oamix::pwo

#include "oamix/catalog.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "oamix/error.hpp"
#include "oamix/pwo.hpp"

namespace oamix::catalog {
namespace {

struct Row3 {
    double x1, x2, x3;
    int z12, z13, z23;
};

BlockedDesign proportion_design(const std::vector<Row3>& block1, const std::vector<Row3>& block2) {
    BlockedDesign d;
    d.m = 3;
    d.kind = DesignKind::Proportion;
    d.n_blocks = 2;
    int block = 1;
    for (const auto* rows : {&block1, &block2}) {
        for (const Row3& r : *rows)
            d.runs.push_back(Run{{r.x1, r.x2, r.x3}, {r.z12, r.z13, r.z23}, block, 0.0});
        ++block;
    }
    return d;
}

// Latin-square design with support points (lo, hi) and the printed centroid.
BlockedDesign latin_square_design(double lo, double hi) {
    return proportion_design(
        {
            {lo, hi, 0, 0, 0, 0},
            {hi, 0, lo, 0, 0, 0},
            {0, lo, hi, 0, 0, 0},
            {0.333, 0.333, 0.334, 0, 0, 0},
        },
        {
            {lo, 0, hi, 0, 0, 0},
            {hi, lo, 0, 0, 0, 0},
            {0, hi, lo, 0, 0, 0},
            {0.333, 0.333, 0.334, 0, 0, 0},
        });
}

const std::array<std::array<int, 3>, 6> kCentroidOrders{{
    {1, 1, 1},
    {1, 1, -1},
    {1, -1, -1},
    {-1, 1, 1},
    {-1, -1, 1},
    {-1, -1, -1},
}};

// Published OofA layout: edge pairs in the printed order, then the centroid
// under all six orderings.
BlockedDesign latin_square_oofa(double lo, double hi) {
    std::vector<Row3> b1{
        {lo, hi, 0, 1, 0, 0},
        {lo, hi, 0, -1, 0, 0},
        {hi, 0, lo, 0, -1, 0},
        {hi, 0, lo, 0, 1, 0},
        {0, lo, hi, 0, 0, 1},
        {0, lo, hi, 0, 0, -1},
    };
    std::vector<Row3> b2{
        {lo, 0, hi, 0, 1, 0},
        {lo, 0, hi, 0, -1, 0},
        {hi, lo, 0, -1, 0, 0},
        {hi, lo, 0, 1, 0, 0},
        {0, hi, lo, 0, 0, -1},
        {0, hi, lo, 0, 0, 1},
    };
    for (const auto& z : kCentroidOrders) {
        b1.push_back({0.333, 0.333, 0.334, z[0], z[1], z[2]});
        b2.push_back({0.333, 0.333, 0.334, z[0], z[1], z[2]});
    }
    return proportion_design(b1, b2);
}

// Component amounts in hundredths of the maximum total amount.
struct AmountRow {
    int a1, a2, a3;
    int z12, z13, z23;
};

// Run 27 has a blank z12 cell in print; its support is a single component so
// every ordering entry is 0. Run 23 of the 100 mg table prints "076".
const std::array<AmountRow, 12> kProjectionBlock1{{
    {0, 0, 24, 0, 0, 0},
    {0, 76, 0, 0, 0, 0},
    {24, 0, 76, 0, 1, 0},
    {24, 0, 76, 0, -1, 0},
    {76, 24, 0, -1, 0, 0},
    {76, 24, 0, 1, 0, 0},
    {0, 0, 24, 0, 0, 0},
    {0, 24, 76, 0, 0, 1},
    {0, 24, 76, 0, 0, -1},
    {24, 76, 0, 1, 0, 0},
    {24, 76, 0, -1, 0, 0},
    {76, 0, 0, 0, 0, 0},
}};

const std::array<AmountRow, 12> kProjectionBlock2{{
    {0, 24, 0, 0, 0, 0},
    {0, 0, 76, 0, 0, 0},
    {24, 76, 0, 1, 0, 0},
    {24, 76, 0, -1, 0, 0},
    {76, 0, 24, 0, -1, 0},
    {76, 0, 24, 0, 1, 0},
    {0, 76, 24, 0, 0, -1},
    {0, 76, 24, 0, 0, 1},
    {0, 0, 76, 0, 0, 0},
    {24, 0, 0, 0, 0, 0},
    {76, 24, 0, -1, 0, 0},
    {76, 24, 0, 1, 0, 0},
}};

}  // namespace

BlockedDesign czitrom_d_optimal() { return latin_square_design(0.168, 0.832); }
BlockedDesign aggarwal_a_optimal() { return latin_square_design(0.239, 0.761); }
BlockedDesign czitrom_d_oofa() { return latin_square_oofa(0.168, 0.832); }
BlockedDesign aggarwal_a_oofa() { return latin_square_oofa(0.239, 0.761); }

BlockedDesign component_amount_projection_design(double a_max) {
    if (!(a_max > 0.0))
        throw Error(ErrorKind::InvalidAmount, "a_max must be positive");
    const double unit = a_max / 100.0;

    BlockedDesign d;
    d.m = 3;
    d.kind = DesignKind::Amount;
    d.n_blocks = 2;
    auto append = [&](const AmountRow& r, int block) {
        Run run;
        run.values = {r.a1 * unit, r.a2 * unit, r.a3 * unit};
        run.pwo = {r.z12, r.z13, r.z23};
        run.block = block;
        run.amount = (r.a1 + r.a2 + r.a3) * unit;
        d.runs.push_back(std::move(run));
    };
    int block = 1;
    for (const auto* rows : {&kProjectionBlock1, &kProjectionBlock2}) {
        for (const auto& r : *rows) append(r, block);
        for (const auto& z : kCentroidOrders) append({25, 25, 25, z[0], z[1], z[2]}, block);
        ++block;
    }
    return d;
}

BlockedDesign oofa_expand(const BlockedDesign& base, ExpansionPolicy policy) {
    BlockedDesign out = base;
    out.runs.clear();
    for (std::size_t u = 0; u < base.runs.size(); ++u) {
        const Run& run = base.runs[u];
        for (int z : run.pwo)
            if (z != 0)
                throw Error(ErrorKind::AlreadyExpanded,
                            "base run " + std::to_string(u + 1) + " already carries an ordering");
        const auto support = pwo::support_of(run.values);
        if (support.size() == 1 && policy.vertex_orders == ExpansionPolicy::Vertex::None)
            continue;
        for (auto& z : pwo::enumerate_orderings(run.values)) {
            Run expanded = run;
            expanded.pwo = std::move(z);
            out.runs.push_back(std::move(expanded));
        }
    }
    // keep runs grouped by block, base order preserved inside each block
    std::stable_sort(out.runs.begin(), out.runs.end(),
                     [](const Run& a, const Run& b) { return a.block < b.block; });
    return out;
}

const std::vector<std::string>& names() {
    static const std::vector<std::string> kNames{"czitrom-d", "aggarwal-a", "czitrom-d-oofa",
                                                 "aggarwal-a-oofa", "ca-projection"};
    return kNames;
}

BlockedDesign by_name(std::string_view name, double a_max) {
    if (name == "czitrom-d") return czitrom_d_optimal();
    if (name == "aggarwal-a") return aggarwal_a_optimal();
    if (name == "czitrom-d-oofa") return czitrom_d_oofa();
    if (name == "aggarwal-a-oofa") return aggarwal_a_oofa();
    if (name == "ca-projection") return component_amount_projection_design(a_max);
    throw Error(ErrorKind::SpecError, "unknown catalog design '" + std::string(name) + "'");
}

}  // namespace oamix::catalog

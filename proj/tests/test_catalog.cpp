#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oamix/catalog.hpp"
#include "oamix/error.hpp"
#include "support.hpp"

using namespace oamix;

namespace {

std::multiset<std::pair<std::vector<double>, Pwo>> block_multiset(const BlockedDesign& d, int block) {
    std::multiset<std::pair<std::vector<double>, Pwo>> out;
    for (const auto& r : d.runs)
        if (r.block == block) out.insert({r.values, r.pwo});
    return out;
}

}  // namespace

TEST_CASE("catalog designs equal the transcribed tables") {
    CHECK(catalog::czitrom_d_optimal() == testing::golden_design("table1.csv"));
    CHECK(catalog::aggarwal_a_optimal() == testing::golden_design("table2.csv"));
    CHECK(catalog::czitrom_d_oofa() == testing::golden_design("table3.csv"));
    CHECK(catalog::aggarwal_a_oofa() == testing::golden_design("table4.csv"));
    CHECK(catalog::component_amount_projection_design(1.0) == testing::golden_design("table7.csv"));
    CHECK(catalog::component_amount_projection_design(100.0) == testing::golden_design("table8.csv"));
}

TEST_CASE("catalog shapes") {
    const auto t1 = catalog::czitrom_d_optimal();
    CHECK(t1.m == 3);
    CHECK(t1.size() == 8);
    CHECK(t1.n_blocks == 2);
    CHECK_FALSE(t1.has_pwo());
    const auto t8 = catalog::component_amount_projection_design(100.0);
    CHECK(t8.kind == DesignKind::Amount);
    CHECK(t8.size() == 36);
    CHECK(t8.has_pwo());
    std::map<double, int> reps;
    for (const auto& r : t8.runs) ++reps[r.amount];
    CHECK(reps == std::map<double, int>{{24.0, 4}, {75.0, 12}, {76.0, 4}, {100.0, 16}});
}

TEST_CASE("expansion gives the published run multisets in each block") {
    const auto expanded = catalog::oofa_expand(catalog::czitrom_d_optimal());
    const auto printed = catalog::czitrom_d_oofa();
    REQUIRE(expanded.size() == 24);
    for (int b = 1; b <= 2; ++b) CHECK(block_multiset(expanded, b) == block_multiset(printed, b));

    const auto expanded_a = catalog::oofa_expand(catalog::aggarwal_a_optimal());
    const auto printed_a = catalog::aggarwal_a_oofa();
    for (int b = 1; b <= 2; ++b) CHECK(block_multiset(expanded_a, b) == block_multiset(printed_a, b));

    // blocks stay contiguous and in order
    CHECK(std::is_sorted(expanded.runs.begin(), expanded.runs.end(),
                         [](const Run& a, const Run& b) { return a.block < b.block; }));
}

TEST_CASE("expansion vertex policy") {
    BlockedDesign base;
    base.m = 3;
    base.runs.push_back({{1.0, 0.0, 0.0}, {0, 0, 0}, 1, 0.0});
    base.runs.push_back({{0.5, 0.5, 0.0}, {0, 0, 0}, 1, 0.0});
    CHECK(catalog::oofa_expand(base).size() == 3);
    catalog::ExpansionPolicy drop;
    drop.vertex_orders = catalog::ExpansionPolicy::Vertex::None;
    CHECK(catalog::oofa_expand(base, drop).size() == 2);
}

TEST_CASE("expanding an expanded design is an error") {
    CHECK_THROWS_AS(catalog::oofa_expand(catalog::czitrom_d_oofa()), Error);
    try {
        catalog::oofa_expand(catalog::czitrom_d_oofa());
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AlreadyExpanded);
    }
}

TEST_CASE("catalog lookup") {
    CHECK(catalog::names().size() == 5);
    CHECK(catalog::by_name("ca-projection", 100.0) == catalog::component_amount_projection_design(100.0));
    CHECK_THROWS_AS(catalog::by_name("nope"), Error);
    CHECK_THROWS_AS(catalog::component_amount_projection_design(0.0), Error);
    CHECK_THROWS_AS(catalog::component_amount_projection_design(-5.0), Error);
}

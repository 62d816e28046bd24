#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ucurve;
using testsupport::b4_node;
using testsupport::brute_partitions;

namespace {

// Bell numbers through Stirling numbers of the second kind.
BigInt bell_via_stirling(std::size_t n) {
    std::vector<std::vector<BigInt>> s(n + 1, std::vector<BigInt>(n + 1, 0));
    s[0][0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 1; k <= i; ++k) s[i][k] = BigInt(k) * s[i - 1][k] + s[i - 1][k - 1];
    }
    BigInt total = 0;
    for (std::size_t k = 0; k <= n; ++k) total += s[n][k];
    return total;
}

}  // namespace

TEST_CASE("Bell numbers") {
    for (std::size_t n = 0; n <= 30; ++n) CHECK(bell_number(n) == bell_via_stirling(n));
    CHECK(bell_number(11) == 678570);
    CHECK(LearningSpace::full_partition_lattice(12).node_count() == 4213597);
}

TEST_CASE("full lattice neighbors match split and merge") {
    const auto space = LearningSpace::full_partition_lattice(4);
    CHECK(space.members() == nullptr);
    const auto p = Partition::parse("1,2|3,4");
    CHECK(neighbors(space, p, Direction::up) == split_neighbors(p));
    CHECK(neighbors(space, p, Direction::down) == merge_neighbors(p));
    CHECK(all_neighbors(space, p).size() == 3);
    CHECK(covers(space, p, Partition::parse("1|2|3,4")));
    CHECK_FALSE(covers(space, p, Partition::finest(4)));
    CHECK(hasse_distance(space, Partition::coarsest(4), Partition::finest(4)) == std::optional<std::size_t>(3));
    CHECK_THROWS_AS(neighbors(space, Partition::finest(5), Direction::up), std::invalid_argument);
}

TEST_CASE("cursor and enumerate_nodes agree") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto space = LearningSpace::full_partition_lattice(n);
        const auto nodes = all_nodes(space);
        CHECK(BigInt(nodes.size()) == space.node_count());
        NodeCursor cursor(space);
        std::size_t i = 0;
        while (auto p = cursor.next()) CHECK(*p == nodes.at(i++));
        CHECK(i == nodes.size());
    }
}

TEST_CASE("feature lattice on B4 is the Boolean lattice") {
    const auto cube = FiniteDomain::boolean_cube(4);
    const auto space = LearningSpace::feature_lattice(cube);
    CHECK(space.node_count() == 16);
    CHECK(space.feature_width() == 4);
    CHECK(space.feature_set(b4_node("13")) == std::optional<FeatureSet>(FeatureSet{1, 3}));
    CHECK(vc_dim(space, b4_node("13")) == 4);
    CHECK(vc_dim(space, b4_node("")) == 1);
    const auto up = neighbors(space, b4_node("13"), Direction::up);
    CHECK(up.size() == 2);
    CHECK(std::count(up.begin(), up.end(), b4_node("123")) == 1);
    CHECK(std::count(up.begin(), up.end(), b4_node("134")) == 1);
    CHECK(neighbors(space, b4_node("13"), Direction::down).size() == 2);
    CHECK(hasse_distance(space, b4_node(""), b4_node("1234")) == std::optional<std::size_t>(4));
    CHECK_FALSE(space.contains(Partition::parse("1|2,3,4,5,6,7,8,9,10,11,12,13,14,15,16")));
}

TEST_CASE("feature lattice merges feature sets inducing the same partition") {
    // Feature 2 duplicates feature 1.
    const auto domain = FiniteDomain::from_features({{0, 0, 0}, {0, 0, 1}, {1, 1, 0}, {1, 1, 1}});
    const auto space = LearningSpace::feature_lattice(domain);
    CHECK(space.node_count() == 4);
    CHECK(space.feature_set(Partition::parse("1,2|3,4")) == std::optional<FeatureSet>(FeatureSet{1}));
}

TEST_CASE("restricted and two-block spaces") {
    const auto l2 = LearningSpace::two_block(5);
    CHECK(l2.node_count() == 16);
    const auto coarse = Partition::coarsest(5);
    CHECK(neighbors(l2, coarse, Direction::up).size() == 15);
    CHECK(neighbors(l2, Partition::parse("1,2|3,4,5"), Direction::up).empty());

    const auto full = LearningSpace::full_partition_lattice(4);
    const auto even = LearningSpace::restricted(full, [](const Partition& p) { return p.block_count() != 2; });
    CHECK(even.node_count() == 1 + 6 + 1);
    // Covers inside the restriction skip the removed level.
    CHECK(covers(even, Partition::coarsest(4), Partition::parse("1,2|3|4")));
}

TEST_CASE("from_nodes builds covers among the listed nodes") {
    const auto space = LearningSpace::from_nodes(
        4, {Partition::parse("1,2,3|4"), Partition::parse("1,2|3|4"), Partition::parse("1,3|2|4"),
            Partition::parse("1|2|3|4"), Partition::parse("1,2|3|4")});
    CHECK(space.node_count() == 4);
    CHECK(neighbors(space, Partition::parse("1,2,3|4"), Direction::up).size() == 2);
    CHECK(covers(space, Partition::parse("1,3|2|4"), Partition::finest(4)));
    CHECK_THROWS_AS(hasse_distance(space, Partition::parse("1,2,3|4"), Partition::coarsest(4)), std::invalid_argument);
}

TEST_CASE("feature_set_to_partition") {
    const auto cube = FiniteDomain::boolean_cube(2);
    CHECK(feature_set_to_partition(cube, {}).encode() == "1,2,3,4");
    CHECK(feature_set_to_partition(cube, {1}).encode() == "1,2|3,4");
    CHECK(feature_set_to_partition(cube, {2}).encode() == "1,3|2,4");
    CHECK_THROWS(feature_set_to_partition(cube, {3}));
    CHECK_THROWS(feature_set_to_partition(FiniteDomain({"a", "b"}), {1}));
}

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <unordered_set>

#include "support.hpp"

using namespace ucurve;
using testsupport::brute_partitions;
using testsupport::refines;

TEST_CASE("encoding round trip and canonical form") {
    const auto p = Partition::parse("3|4,1|2", 4);
    CHECK(p.encode() == "1,4|2|3");
    CHECK(p.block_count() == 3);
    CHECK(p.growth_string() == std::vector<std::uint32_t>{0, 1, 2, 0});
    CHECK(Partition::parse(p.encode()) == p);
    CHECK(Partition::coarsest(3).encode() == "1,2,3");
    CHECK(Partition::finest(3).encode() == "1|2|3");
    CHECK(Partition::from_labels(std::vector<std::uint32_t>{7, 7, 2}).encode() == "1,2|3");
}

TEST_CASE("parse rejects malformed encodings") {
    for (const char* bad : {"", "1,1|2", "0|1", "1|x", "1,,2", "1|3"}) {
        CHECK_THROWS_AS(Partition::parse(bad, 3), std::invalid_argument);
    }
    CHECK_THROWS_AS(Partition::parse("1|2", 3), std::invalid_argument);
}

TEST_CASE("canonical order: fewer blocks first") {
    CHECK(Partition::parse("1,2,3") < Partition::parse("1|2,3"));
    CHECK(Partition::parse("1,2|3") < Partition::parse("1,3|2"));
    CHECK(Partition::parse("1,3|2") < Partition::parse("1|2,3"));
    CHECK(Partition::parse("1|2,3") < Partition::parse("1|2|3"));
}

TEST_CASE("enumeration matches brute force over all labelings") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto expected = brute_partitions(n);
        std::vector<Partition> seen;
        for_each_partition(n, [&](const Partition& p) {
            seen.push_back(p);
            return true;
        });
        CHECK(std::is_sorted(seen.begin(), seen.end()));
        CHECK(std::set<Partition>(seen.begin(), seen.end()) == expected);
        CHECK(seen.size() == expected.size());

        PartitionEnumerator e(n);
        std::size_t count = 0;
        while (auto p = e.next()) CHECK(*p == seen[count++]);
        CHECK(count == seen.size());
    }
}

TEST_CASE("enumeration by block count gives Stirling numbers") {
    // S(6, k)
    const std::size_t stirling[] = {0, 1, 31, 90, 65, 15, 1};
    for (std::size_t k = 1; k <= 6; ++k) {
        std::size_t c = 0;
        PartitionEnumerator e(6, k);
        while (auto p = e.next()) {
            CHECK(p->block_count() == k);
            ++c;
        }
        CHECK(c == stirling[k]);
    }
}

TEST_CASE("order, meet and join agree with brute-force lattice operations") {
    const auto all = brute_partitions(4);
    for (const auto& a : all) {
        for (const auto& b : all) {
            CHECK(leq(a, b) == refines(b, a));
            const auto m = meet(a, b);
            const auto j = join(a, b);
            // meet: coarsened by both, finest such; join: refines both, coarsest such.
            CHECK(refines(a, m));
            CHECK(refines(b, m));
            CHECK(refines(j, a));
            CHECK(refines(j, b));
            for (const auto& c : all) {
                if (refines(a, c) && refines(b, c)) CHECK(refines(m, c));
                if (refines(c, a) && refines(c, b)) CHECK(refines(c, j));
            }
        }
    }
}

TEST_CASE("lattice identities on random pairs") {
    const auto all = brute_partitions(5);
    const std::vector<Partition> v(all.begin(), all.end());
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto& a = v[uniform_below(rng, v.size())];
        const auto& b = v[uniform_below(rng, v.size())];
        const auto& c = v[uniform_below(rng, v.size())];
        CHECK(meet(a, b) == meet(b, a));
        CHECK(join(a, b) == join(b, a));
        CHECK(meet(a, join(a, b)) == a);
        CHECK(join(a, meet(a, b)) == a);
        CHECK(meet(meet(a, b), c) == meet(a, meet(b, c)));
        CHECK(join(join(a, b), c) == join(a, join(b, c)));
        CHECK(comparable(a, b) == (leq(a, b) || leq(b, a)));
    }
    CHECK_THROWS(meet(Partition::finest(3), Partition::finest(4)));
}

TEST_CASE("split and merge neighbors are the covers") {
    const auto all = brute_partitions(5);
    for (const auto& p : all) {
        const auto up = split_neighbors(p);
        const auto down = merge_neighbors(p);
        CHECK(std::is_sorted(up.begin(), up.end()));
        CHECK(std::is_sorted(down.begin(), down.end()));
        std::set<Partition> expected_up, expected_down;
        for (const auto& q : all) {
            if (refines(q, p) && q.block_count() == p.block_count() + 1) expected_up.insert(q);
            if (refines(p, q) && q.block_count() + 1 == p.block_count()) expected_down.insert(q);
        }
        CHECK(std::set<Partition>(up.begin(), up.end()) == expected_up);
        CHECK(std::set<Partition>(down.begin(), down.end()) == expected_down);
    }
    // Splitting a k-block gives 2^(k-1) - 1 choices.
    CHECK(split_neighbors(Partition::coarsest(4)).size() == 7);
    CHECK(merge_neighbors(Partition::finest(4)).size() == 6);
}

TEST_CASE("hash distinguishes partitions of different sizes") {
    std::unordered_set<Partition> set;
    for (std::size_t n = 1; n <= 5; ++n) {
        for (const auto& p : brute_partitions(n)) set.insert(p);
    }
    CHECK(set.size() == 1 + 2 + 5 + 15 + 52);
}

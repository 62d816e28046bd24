#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "ucurve/analysis.hpp"

using namespace ucurve;
using testsupport::appendix_b_sample;
using testsupport::b4_node;
using testsupport::fig5_costs;
using testsupport::q;

namespace {

BigInt factorial(std::size_t n) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// Sup over every labeling constant on the blocks, enumerated directly.
Rational brute_type_i(const Partition& p, const JointDistribution& d, const Sample& s) {
    const auto m = empirical_measure(s);
    Rational best = 0;
    const std::size_t n = p.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Hypothesis h;
        for (PointIndex x = 0; x < n; ++x) h.labels.push_back((mask >> x) & 1);
        if (!h.respects(p)) continue;
        const Rational gap = empirical_loss(h, m) - true_loss(h, d);
        best = std::max(best, gap < 0 ? Rational(-gap) : gap);
    }
    return best;
}

}  // namespace

TEST_CASE("classification of the B4 example") {
    const auto space = LearningSpace::feature_lattice(FiniteDomain::boolean_cube(4));
    const auto costs = fig5_costs();
    const std::set<std::string> strong{"13", "23", "124"};
    const std::set<std::string> weak_only{"1", "4", "24", "123", "134", "234"};
    for (const std::string f : {"", "1", "2", "3", "4", "12", "13", "14", "23", "24", "34", "123", "124", "134",
                                "234", "1234"}) {
        INFO("features " << f);
        const auto c = classify_minimum(costs, space, b4_node(f));
        CHECK(c.strong_local == (strong.count(f) == 1));
        CHECK(c.weak_local == (strong.count(f) + weak_only.count(f) == 1));
        CHECK(c.global == (f == "23"));
    }
    CHECK(check_ucurve(costs, space, UCurveStrength::weak).holds);
    CHECK(check_ucurve(costs, space, UCurveStrength::weak).chains_checked == 24);
}

TEST_CASE("convexity on the published counterexample") {
    const auto space = LearningSpace::from_nodes(4, {Partition::parse("1,2,3|4"), Partition::parse("1,2|3|4"),
                                                     Partition::parse("1,3|2|4"), Partition::finest(4)});
    CostTable costs;
    ModelEstimator est(appendix_b_sample(), EstimatorSpec::holdout(100));
    for (const auto& p : *space.members()) costs[p] = est.cost(p);
    const auto check = check_lattice_convexity(costs, space);
    CHECK_FALSE(check.holds);
    REQUIRE(check.violations.size() == 1);
    CHECK(check.violations[0].join_cost == q("0.33"));
    CHECK(check.violations[0].bound == q("0.37"));
    CHECK(check.compatible);
}

TEST_CASE("additive costs satisfy convexity with equality") {
    const auto space = LearningSpace::feature_lattice(FiniteDomain::boolean_cube(3));
    CostTable costs;
    for (const auto& p : *space.members()) costs[p] = Rational(static_cast<long>(space.feature_set(p)->size()));
    const auto check = check_lattice_convexity(costs, space);
    CHECK(check.holds);
    // One diamond per square face of the cube.
    CHECK(check.pairs_checked == 6);
}

TEST_CASE("maximal chain counts") {
    // Maximal chains of the partition lattice: n!(n-1)!/2^(n-1).
    for (std::size_t n = 1; n <= 6; ++n) {
        const BigInt expected = factorial(n) * factorial(n - 1) / (BigInt(1) << (n - 1));
        CHECK(count_maximal_chains(LearningSpace::full_partition_lattice(n)) == expected);
    }
    CHECK(count_maximal_chains(LearningSpace::full_partition_lattice(4)) == 18);
    CHECK(count_maximal_chains(LearningSpace::full_partition_lattice(5)) == 180);
    CHECK(count_maximal_chains(LearningSpace::feature_lattice(FiniteDomain::boolean_cube(4))) == 24);
    const auto stats = space_stats(LearningSpace::two_block(5));
    CHECK(stats.node_count == 16);
    CHECK(stats.vc_dim_max == 2);
    CHECK(stats.maximal_count == 15);

    std::size_t visited = 0;
    for_each_maximal_chain(LearningSpace::full_partition_lattice(4), [&](const std::vector<Partition>& chain) {
        CHECK(chain.size() == 4);
        for (std::size_t i = 1; i < chain.size(); ++i) CHECK(covers(LearningSpace::full_partition_lattice(4), chain[i - 1], chain[i]));
        ++visited;
    });
    CHECK(visited == 18);
    CHECK_THROWS_AS(for_each_maximal_chain(LearningSpace::full_partition_lattice(5), [](const auto&) {}, 10),
                    std::length_error);
}

TEST_CASE("U-curve compatibility") {
    CHECK(check_ucurve_compatibility(LearningSpace::full_partition_lattice(4)).compatible);
    CHECK(check_ucurve_compatibility(LearningSpace::feature_lattice(FiniteDomain::boolean_cube(3))).compatible);
}

TEST_CASE("target model on the two-point example") {
    const JointDistribution d(2, {q("9/20"), q("1/20"), q("1/20"), q("9/20")});
    const auto space = LearningSpace::full_partition_lattice(2);
    const auto t = target_model(space, d);
    CHECK(t.target_node == Partition::finest(2));
    CHECK(t.target_error == q("1/10"));
    REQUIRE(t.mde);
    CHECK(*t.mde == q("2/5"));
    CHECK(t.model_errors.at(Partition::coarsest(2)) == q("1/2"));
}

TEST_CASE("target model of a point mass has infinite MDE") {
    const JointDistribution d(3, {q("0"), q("1"), q("0"), q("0"), q("0"), q("0")});
    const auto t = target_model(LearningSpace::full_partition_lattice(3), d);
    CHECK(t.target_node == Partition::coarsest(3));
    CHECK(t.target_error == 0);
    CHECK_FALSE(t.mde);
}

TEST_CASE("target model picks the least-VC node among equal minima") {
    // Labels follow point 1 versus the rest; the finer nodes tie.
    const JointDistribution d(3, {q("1/3"), q("0"), q("0"), q("1/3"), q("0"), q("1/3")});
    const auto t = target_model(LearningSpace::full_partition_lattice(3), d);
    CHECK(t.target_node == Partition::parse("1|2,3"));
    CHECK(t.target_error == 0);
    REQUIRE(t.mde);
    CHECK(*t.mde == q("1/3"));
}

TEST_CASE("type I error matches brute force and the identity holds") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const auto d = testsupport::random_distribution(n, rng);
        const auto s = sample_from(d, 25, rng());
        const auto space = LearningSpace::full_partition_lattice(n);
        for (const auto& p : all_nodes(space)) CHECK(type_i_error(p, d, s) == brute_type_i(p, d, s));
        const auto target = target_model(space, d);
        const auto r = ucurve_search(space, s, EstimatorSpec::holdout(10));
        const auto e = estimation_errors(r, target, d, s);
        CHECK(e.type_iv == e.type_ii + e.type_iii);
        CHECK(e.type_ii >= 0);
        CHECK(e.type_iii >= 0);
    }
    CHECK_THROWS_AS(type_i_error(Partition::finest(21), JointDistribution(21, std::vector<Rational>(42, q("1/42"))),
                                 Sample(21, {{0, 0}})),
                    std::length_error);
}

TEST_CASE("derive_seed is order independent and spreads") {
    CHECK(derive_seed(1, 20, 0) == derive_seed(1, 20, 0));
    std::set<std::uint64_t> seeds;
    for (std::uint64_t n : {20, 200, 2000}) {
        for (std::uint64_t r = 0; r < 50; ++r) seeds.insert(derive_seed(7, n, r));
    }
    CHECK(seeds.size() == 150);
}

TEST_CASE("consistency experiment edge cases") {
    const JointDistribution point(2, {q("1"), q("0"), q("0"), q("0")});
    const auto space = LearningSpace::full_partition_lattice(2);
    CHECK(consistency_experiment(point, space, {10}, 0, EstimatorSpec::holdout_fraction(q("1/2")), 1).empty());
    const auto rows = consistency_experiment(point, space, {2, 10, 40}, 20, EstimatorSpec::holdout_fraction(q("1/2")), 1);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.fraction_equivalent == 1);
        CHECK(row.fraction_same_error == 1);
        CHECK(row.mean_type_iii == 0);
    }
}

TEST_CASE("cost_table respects the cap") {
    std::mt19937_64 rng(2);
    ModelEstimator est(testsupport::random_sample(5, 20, rng), EstimatorSpec::holdout(10));
    CHECK(cost_table(LearningSpace::full_partition_lattice(5), est).size() == 52);
    CHECK_THROWS_AS(cost_table(LearningSpace::full_partition_lattice(5), est, 51), std::length_error);
}

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ucurve;
using testsupport::q;

TEST_CASE("rational parsing accepts fractions, integers and decimals") {
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational(" 4/8 ") == Rational(1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("0.048") == Rational(48, 1000));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("010") == Rational(10));
    CHECK(to_fraction_string(Rational(33, 100)) == "33/100");
    CHECK(to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("rational parsing rejects junk") {
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "0x10", "1/", "."}) {
        CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
    }
}

TEST_CASE("boolean cube is lexicographic with feature 1 most significant") {
    const auto cube = FiniteDomain::boolean_cube(3);
    REQUIRE(cube.size() == 8);
    CHECK(cube.name(0) == "000");
    CHECK(cube.name(1) == "001");
    CHECK(cube.name(4) == "100");
    CHECK(cube.features(6) == FeatureRow{1, 1, 0});
    CHECK(cube.find("101") == std::optional<PointIndex>(5));
    CHECK_FALSE(cube.find("2"));
}

TEST_CASE("joint distributions must be probability tables") {
    CHECK_THROWS_AS(JointDistribution(2, {q("1/2"), q("1/2"), q("1/2"), q("0")}), std::invalid_argument);
    CHECK_THROWS_AS(JointDistribution(1, {q("3/2"), q("-1/2")}), std::invalid_argument);
    CHECK_THROWS_AS(JointDistribution(2, {q("1")}), std::invalid_argument);
    const JointDistribution d(2, {q("9/20"), q("1/20"), q("1/20"), q("9/20")});
    CHECK(d.marginal(0) == q("1/2"));
    CHECK(d.prob(1, 1) == q("9/20"));
}

TEST_CASE("from_conditional builds the joint table") {
    const std::vector<Rational> marginal{q("1/4"), q("3/4")};
    const std::vector<Rational> p_one{q("1/2"), q("1/3")};
    const auto d = JointDistribution::from_conditional(marginal, p_one);
    CHECK(d.prob(0, 0) == q("1/8"));
    CHECK(d.prob(0, 1) == q("1/8"));
    CHECK(d.prob(1, 0) == q("1/2"));
    CHECK(d.prob(1, 1) == q("1/4"));
}

TEST_CASE("empirical measure counts pairs") {
    const Sample s(3, {{0, 1}, {0, 1}, {2, 0}, {1, 1}});
    const auto m = empirical_measure(s);
    CHECK(m.total() == 4);
    CHECK(m.count(0, 1) == 2);
    CHECK(m.count(0, 0) == 0);
    CHECK(m.frequency(0, 1) == q("1/2"));
    CHECK(m.to_distribution().prob(2, 0) == q("1/4"));
    CHECK_THROWS_AS(empirical_measure(Sample(3)), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and respects zero cells") {
    const JointDistribution d(2, {q("0"), q("1/3"), q("2/3"), q("0")});
    const auto a = sample_from(d, 500, 42);
    const auto b = sample_from(d, 500, 42);
    CHECK(a == b);
    CHECK(a.size() == 500);
    const auto m = empirical_measure(a);
    CHECK(m.count(0, 0) == 0);
    CHECK(m.count(1, 1) == 0);
    CHECK(m.count(0, 1) > 120);
    CHECK(m.count(1, 0) > 280);
    CHECK_FALSE(sample_from(d, 500, 43) == a);
}

TEST_CASE("uniform_below stays in range and covers it") {
    std::mt19937_64 rng(7);
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 1000; ++i) ++hits.at(uniform_below(rng, 5));
    for (int h : hits) CHECK(h > 150);
}

TEST_CASE("holdout and k-fold splits") {
    std::vector<Observation> obs;
    for (PointIndex i = 0; i < 6; ++i) obs.push_back({i % 3, static_cast<Label>(i % 2)});
    const Sample s(3, obs);
    const auto h = split_holdout(s, 2);
    CHECK(h.train.size() == 4);
    CHECK(h.validation[0] == obs[4]);
    CHECK_THROWS(split_holdout(s, 0));
    CHECK_THROWS(split_holdout(s, 6));
    const auto folds = kfold_split(s, 3);
    REQUIRE(folds.size() == 3);
    CHECK(folds[1][0] == obs[2]);
    CHECK_THROWS(kfold_split(s, 4));
    CHECK_THROWS(kfold_split(s, 1));
    CHECK(s.slice(1, 3).concat(s.slice(3, 6)) == s.slice(1, 6));
}

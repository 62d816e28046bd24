#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "ucurve/estimators.hpp"
#include "ucurve/learner.hpp"

using namespace ucurve;
using testsupport::appendix_b_sample;
using testsupport::brute_partitions;
using testsupport::q;

namespace {

// Least empirical loss over every hypothesis constant on the blocks.
Rational brute_erm_loss(const Partition& p, const EmpiricalMeasure& m) {
    const std::size_t k = p.block_count();
    std::optional<Rational> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Rational loss = 0;
        for (PointIndex x = 0; x < p.size(); ++x) {
            const Label h = (mask >> p.block_of(x)) & 1;
            loss += m.frequency(x, static_cast<Label>(1 - h));
        }
        if (!best || loss < *best) best = loss;
    }
    return *best;
}

}  // namespace

TEST_CASE("ERM is a per-block majority with the tie rule") {
    const Sample s(3, {{0, 1}, {0, 0}, {1, 0}, {1, 0}, {2, 1}});
    const auto m = empirical_measure(s);
    CHECK(erm_on_partition(Partition::finest(3), m).labels == std::vector<Label>{1, 0, 1});
    CHECK(erm_on_partition(Partition::finest(3), m, TieRule::prefer_zero).labels == std::vector<Label>{0, 0, 1});
    CHECK(erm_on_partition(Partition::coarsest(3), m).labels == std::vector<Label>{0, 0, 0});
    // Unseen points follow the tie rule.
    const auto sparse = empirical_measure(Sample(3, {{0, 0}}));
    CHECK(erm_on_partition(Partition::finest(3), sparse).labels == std::vector<Label>{0, 1, 1});
    CHECK(erm_on_partition(Partition::finest(3), sparse).respects(Partition::parse("1|2,3")));
    CHECK_FALSE(Hypothesis{{0, 1, 1}}.respects(Partition::coarsest(3)));
}

TEST_CASE("ERM attains the brute-force minimum on small domains") {
    std::mt19937_64 rng(5);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto m = empirical_measure(testsupport::random_sample(n, 1 + uniform_below(rng, 40), rng));
            for (const auto& p : brute_partitions(n)) {
                const auto h = erm_on_partition(p, m);
                CHECK(h.respects(p));
                CHECK(empirical_loss(h, m) == brute_erm_loss(p, m));
            }
        }
    }
}

TEST_CASE("in-sample ERM loss does not increase under refinement") {
    std::mt19937_64 rng(9);
    const auto space = LearningSpace::full_partition_lattice(5);
    for (int rep = 0; rep < 20; ++rep) {
        const auto m = empirical_measure(testsupport::random_sample(5, 50, rng));
        for (const auto& p : all_nodes(space)) {
            const auto base = empirical_loss(erm_on_partition(p, m), m);
            for (const auto& up : split_neighbors(p)) CHECK(empirical_loss(erm_on_partition(up, m), m) <= base);
        }
    }
}

TEST_CASE("best_in_model and true_loss") {
    const JointDistribution d(2, {q("9/20"), q("1/20"), q("1/20"), q("9/20")});
    const auto [h1, l1] = best_in_model(Partition::coarsest(2), d);
    CHECK(l1 == q("1/2"));
    CHECK(h1.labels == std::vector<Label>{1, 1});
    const auto [h2, l2] = best_in_model(Partition::finest(2), d);
    CHECK(l2 == q("1/10"));
    CHECK(h2.labels == std::vector<Label>{0, 1});
    CHECK(true_loss(Hypothesis{{1, 0}}, d) == q("9/10"));
}

TEST_CASE("holdout estimates reproduce the published table") {
    const auto s = appendix_b_sample();
    const auto spec = EstimatorSpec::holdout(100);
    const auto meet_est = estimate(Partition::parse("1,2,3|4"), s, spec);
    CHECK(meet_est.value == q("0.48"));
    CHECK(meet_est.per_pair.at(0).hypothesis.labels == std::vector<Label>{1, 1, 1, 1});
    const auto p1 = estimate(Partition::parse("1,2|3|4"), s, spec);
    CHECK(p1.value == q("0.44"));
    CHECK(p1.per_pair.at(0).hypothesis.labels == std::vector<Label>{0, 0, 1, 1});
    const auto p2 = estimate(Partition::parse("1,3|2|4"), s, spec);
    CHECK(p2.value == q("0.41"));
    CHECK(p2.per_pair.at(0).hypothesis.labels == std::vector<Label>{0, 1, 0, 1});
    const auto top = estimate(Partition::finest(4), s, spec);
    CHECK(top.value == q("0.33"));
    CHECK(top.per_pair.at(0).hypothesis.labels == std::vector<Label>{0, 1, 1, 1});
}

TEST_CASE("k-fold estimate is the mean over folds") {
    std::mt19937_64 rng(3);
    const auto s = testsupport::random_sample(3, 30, rng);
    const auto node = Partition::parse("1,2|3");
    Rational expected = 0;
    for (std::size_t f = 0; f < 3; ++f) {
        const auto val = s.slice(10 * f, 10 * f + 10);
        const auto train = s.slice(0, 10 * f).concat(s.slice(10 * f + 10, 30));
        const auto h = erm_on_partition(node, empirical_measure(train));
        expected += empirical_loss(h, empirical_measure(val));
    }
    expected /= 3;
    CHECK(estimate(node, s, EstimatorSpec::kfold(3)).value == expected);
    ModelEstimator cached(s, EstimatorSpec::kfold(3));
    CHECK(cached.cost(node) == expected);
    CHECK(cached.cost(node) == expected);
    CHECK(cached.evaluations() == 1);
    CHECK(cached.cached(node) == std::optional<Rational>(expected));
    CHECK_FALSE(cached.cached(Partition::finest(3)));
}

TEST_CASE("estimator specs are validated") {
    CHECK_THROWS_AS(EstimatorSpec::holdout(0).resolve(10), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorSpec::holdout(10).resolve(10), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorSpec::kfold(3).resolve(10), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorSpec::kfold(1).resolve(10), std::invalid_argument);
    CHECK(EstimatorSpec::holdout_fraction(q("1/3")).resolve(10).at(0).validation.size() == 3);
    CHECK_THROWS_AS(EstimatorSpec::pairs({{{0, 1}, {1, 2}}}).resolve(3), std::invalid_argument);
    CHECK_THROWS_AS(EstimatorSpec::pairs({{{0}, {}}}).resolve(3), std::invalid_argument);
    const auto pairs = EstimatorSpec::pairs({{{0, 1}, {2}}, {{2}, {0}}}).resolve(3);
    CHECK(pairs.size() == 2);
}

TEST_CASE("injected costs reject unknown nodes") {
    InjectedCosts costs({{Partition::coarsest(2), q("1/2")}});
    CHECK(costs.cost(Partition::coarsest(2)) == q("1/2"));
    CHECK_THROWS_AS(costs.cost(Partition::finest(2)), std::out_of_range);
    CHECK(costs.evaluations() == 1);
}

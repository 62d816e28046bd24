#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ucurve/finite_domain.hpp"
#include "ucurve/learner.hpp"
#include "ucurve/partition.hpp"
#include "ucurve/rational.hpp"

namespace ucurve {

struct IndexPair {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

// Model-error estimator: m (train, validation) pairs, value = mean over pairs
// of the validation loss of the ERM hypothesis learned on the train part.
// Hold-out and k-fold are constructors of the general form.
struct EstimatorSpec {
    enum class Kind { holdout, kfold, pairs };

    Kind kind = Kind::holdout;
    std::size_t validation_size = 0;            // holdout, absolute
    std::optional<Rational> validation_fraction;  // holdout, relative to N (used when set)
    std::size_t k = 0;                          // kfold
    std::vector<IndexPair> index_pairs;         // pairs
    TieRule tie = TieRule::prefer_one;

    static EstimatorSpec holdout(std::size_t validation_size, TieRule tie = TieRule::prefer_one);
    static EstimatorSpec holdout_fraction(Rational fraction, TieRule tie = TieRule::prefer_one);
    static EstimatorSpec kfold(std::size_t k, TieRule tie = TieRule::prefer_one);
    static EstimatorSpec pairs(std::vector<IndexPair> pairs, TieRule tie = TieRule::prefer_one);

    // The concrete index pairs for a sample of size n. Throws
    // std::invalid_argument when the spec is invalid for n.
    std::vector<IndexPair> resolve(std::size_t n) const;
};

struct PairResult {
    Hypothesis hypothesis;
    Rational loss;
};

struct ModelEstimate {
    Partition node;
    Rational value;
    std::vector<PairResult> per_pair;
};

ModelEstimate estimate(const Partition& node, const Sample& sample, const EstimatorSpec& spec);

// One entry per distinct node.
std::map<Partition, ModelEstimate> estimate_all(const std::vector<Partition>& nodes, const Sample& sample,
                                                const EstimatorSpec& spec);

// Memoized node costs. cost() computes a node at most once; evaluations()
// counts distinct nodes computed so far.
class CostOracle {
public:
    virtual ~CostOracle() = default;
    virtual Rational cost(const Partition& node) = 0;
    virtual std::optional<Rational> cached(const Partition& node) const = 0;
    virtual std::size_t evaluations() const = 0;
};

// Costs from a sample and estimator spec. Count tables for each pair are
// built once, so a node evaluation is O(m * |X|).
class ModelEstimator final : public CostOracle {
public:
    ModelEstimator(const Sample& sample, EstimatorSpec spec);

    Rational cost(const Partition& node) override;
    std::optional<Rational> cached(const Partition& node) const override;
    std::size_t evaluations() const override;

    ModelEstimate estimate(const Partition& node) const;
    const EstimatorSpec& spec() const { return spec_; }
    std::size_t domain_size() const { return domain_size_; }

private:
    Rational compute(const Partition& node) const;

    std::size_t domain_size_;
    EstimatorSpec spec_;
    std::vector<EmpiricalMeasure> train_;
    std::vector<EmpiricalMeasure> validation_;
    mutable std::mutex mutex_;
    std::unordered_map<Partition, Rational, PartitionHash> cache_;
};

// Fixed costs; querying a node without a cost throws std::out_of_range.
class InjectedCosts final : public CostOracle {
public:
    explicit InjectedCosts(std::map<Partition, Rational> costs);

    Rational cost(const Partition& node) override;
    std::optional<Rational> cached(const Partition& node) const override;
    std::size_t evaluations() const override;

    const std::map<Partition, Rational>& table() const { return costs_; }

private:
    std::map<Partition, Rational> costs_;
    mutable std::mutex mutex_;
    std::unordered_map<Partition, bool, PartitionHash> seen_;
};

}  // namespace ucurve

#include "ucurve/estimators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ucurve {

EstimatorSpec EstimatorSpec::holdout(std::size_t validation_size, TieRule tie) {
    EstimatorSpec s;
    s.kind = Kind::holdout;
    s.validation_size = validation_size;
    s.tie = tie;
    return s;
}

EstimatorSpec EstimatorSpec::holdout_fraction(Rational fraction, TieRule tie) {
    if (fraction <= 0 || fraction >= 1) throw std::invalid_argument("holdout fraction must lie in (0,1)");
    EstimatorSpec s;
    s.kind = Kind::holdout;
    s.validation_fraction = std::move(fraction);
    s.tie = tie;
    return s;
}

EstimatorSpec EstimatorSpec::kfold(std::size_t k, TieRule tie) {
    EstimatorSpec s;
    s.kind = Kind::kfold;
    s.k = k;
    s.tie = tie;
    return s;
}

EstimatorSpec EstimatorSpec::pairs(std::vector<IndexPair> pairs, TieRule tie) {
    EstimatorSpec s;
    s.kind = Kind::pairs;
    s.index_pairs = std::move(pairs);
    s.tie = tie;
    return s;
}

namespace {

std::vector<std::size_t> range(std::size_t begin, std::size_t end) {
    std::vector<std::size_t> out(end - begin);
    std::iota(out.begin(), out.end(), begin);
    return out;
}

}  // namespace

std::vector<IndexPair> EstimatorSpec::resolve(std::size_t n) const {
    switch (kind) {
        case Kind::holdout: {
            std::size_t v = validation_size;
            if (validation_fraction) {
                Rational scaled = *validation_fraction * n;
                v = static_cast<std::size_t>(BigInt(numerator(scaled) / denominator(scaled)));
            }
            if (v == 0 || v >= n) throw std::invalid_argument("holdout needs 0 < validation size < sample size");
            return {IndexPair{range(0, n - v), range(n - v, n)}};
        }
        case Kind::kfold: {
            if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
            if (n == 0 || n % k != 0) throw std::invalid_argument("sample size is not divisible by k");
            const std::size_t fold = n / k;
            std::vector<IndexPair> out;
            for (std::size_t j = 0; j < k; ++j) {
                IndexPair pair;
                pair.validation = range(j * fold, (j + 1) * fold);
                pair.train = range(0, j * fold);
                auto tail = range((j + 1) * fold, n);
                pair.train.insert(pair.train.end(), tail.begin(), tail.end());
                out.push_back(std::move(pair));
            }
            return out;
        }
        case Kind::pairs: {
            if (index_pairs.empty()) throw std::invalid_argument("estimator needs at least one pair");
            for (const auto& pair : index_pairs) {
                if (pair.train.empty() || pair.validation.empty()) {
                    throw std::invalid_argument("train and validation parts must be nonempty");
                }
                for (auto i : pair.train) {
                    if (i >= n) throw std::invalid_argument("pair index outside the sample");
                }
                for (auto i : pair.validation) {
                    if (i >= n) throw std::invalid_argument("pair index outside the sample");
                    if (std::find(pair.train.begin(), pair.train.end(), i) != pair.train.end()) {
                        throw std::invalid_argument("train and validation parts overlap");
                    }
                }
            }
            return index_pairs;
        }
    }
    throw std::logic_error("unknown estimator kind");
}

ModelEstimator::ModelEstimator(const Sample& sample, EstimatorSpec spec)
    : domain_size_(sample.domain_size()), spec_(std::move(spec)) {
    for (const auto& pair : spec_.resolve(sample.size())) {
        train_.push_back(empirical_measure(sample.subset(pair.train)));
        validation_.push_back(empirical_measure(sample.subset(pair.validation)));
    }
}

ModelEstimate ModelEstimator::estimate(const Partition& node) const {
    if (node.size() != domain_size_) throw std::invalid_argument("node and sample over different domains");
    ModelEstimate out{node, 0, {}};
    for (std::size_t j = 0; j < train_.size(); ++j) {
        Hypothesis h = erm_on_partition(node, train_[j], spec_.tie);
        Rational loss = empirical_loss(h, validation_[j]);
        out.value += loss;
        out.per_pair.push_back({std::move(h), std::move(loss)});
    }
    out.value /= static_cast<long long>(train_.size());
    return out;
}

Rational ModelEstimator::compute(const Partition& node) const {
    return estimate(node).value;
}

Rational ModelEstimator::cost(const Partition& node) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(node); it != cache_.end()) return it->second;
    }
    Rational value = compute(node);
    std::lock_guard lock(mutex_);
    return cache_.emplace(node, std::move(value)).first->second;
}

std::optional<Rational> ModelEstimator::cached(const Partition& node) const {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(node); it != cache_.end()) return it->second;
    return std::nullopt;
}

std::size_t ModelEstimator::evaluations() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

ModelEstimate estimate(const Partition& node, const Sample& sample, const EstimatorSpec& spec) {
    return ModelEstimator(sample, spec).estimate(node);
}

std::map<Partition, ModelEstimate> estimate_all(const std::vector<Partition>& nodes, const Sample& sample,
                                                const EstimatorSpec& spec) {
    ModelEstimator estimator(sample, spec);
    std::map<Partition, ModelEstimate> out;
    for (const auto& node : nodes) {
        if (!out.count(node)) out.emplace(node, estimator.estimate(node));
    }
    return out;
}

InjectedCosts::InjectedCosts(std::map<Partition, Rational> costs) : costs_(std::move(costs)) {}

Rational InjectedCosts::cost(const Partition& node) {
    auto it = costs_.find(node);
    if (it == costs_.end()) throw std::out_of_range("no cost for node " + node.encode());
    std::lock_guard lock(mutex_);
    seen_.emplace(node, true);
    return it->second;
}

std::optional<Rational> InjectedCosts::cached(const Partition& node) const {
    auto it = costs_.find(node);
    if (it == costs_.end()) return std::nullopt;
    return it->second;
}

std::size_t InjectedCosts::evaluations() const {
    std::lock_guard lock(mutex_);
    return seen_.size();
}

}  // namespace ucurve

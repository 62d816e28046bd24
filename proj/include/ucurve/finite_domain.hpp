#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ucurve/rational.hpp"

namespace ucurve {

using PointIndex = std::size_t;
using Label = std::uint8_t;  // 0 or 1
using FeatureRow = std::vector<std::uint8_t>;

// Ordered set of distinct points. Point i is addressed by its index; the
// index order is the canonical order used by partitions and reports.
class FiniteDomain {
public:
    explicit FiniteDomain(std::vector<std::string> names);

    // Points carry binary feature vectors of a common width; names are the
    // bit strings ("0110"). Rows keep the given order.
    static FiniteDomain from_features(std::vector<FeatureRow> rows);

    // {0,1}^d in lexicographic order, feature 1 most significant.
    static FiniteDomain boolean_cube(std::size_t d);

    std::size_t size() const { return names_.size(); }
    const std::string& name(PointIndex i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<PointIndex> find(std::string_view name) const;

    bool has_features() const { return !features_.empty(); }
    std::size_t feature_width() const { return width_; }
    const FeatureRow& features(PointIndex i) const;

private:
    std::vector<std::string> names_;
    std::vector<FeatureRow> features_;
    std::size_t width_ = 0;
    std::unordered_map<std::string, PointIndex> index_;
};

// Exact table P(x, y) over X x {0,1}. Entries are nonnegative and sum to 1.
class JointDistribution {
public:
    // table[2 * x + y]; throws std::invalid_argument unless it is a
    // probability table of the right size.
    JointDistribution(std::size_t domain_size, std::vector<Rational> table);

    // Builds P(x, y) from a marginal over X and P(Y = 1 | x).
    static JointDistribution from_conditional(std::span<const Rational> marginal,
                                              std::span<const Rational> p_one);

    std::size_t domain_size() const { return table_.size() / 2; }
    const Rational& prob(PointIndex x, Label y) const { return table_.at(2 * x + y); }
    Rational marginal(PointIndex x) const { return prob(x, 0) + prob(x, 1); }
    const std::vector<Rational>& table() const { return table_; }

    friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

private:
    std::vector<Rational> table_;
};

struct Observation {
    PointIndex point = 0;
    Label label = 0;

    friend bool operator==(const Observation&, const Observation&) = default;
};

class Sample {
public:
    explicit Sample(std::size_t domain_size, std::vector<Observation> pairs = {});

    std::size_t domain_size() const { return domain_size_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    const Observation& operator[](std::size_t i) const { return pairs_[i]; }
    const std::vector<Observation>& pairs() const { return pairs_; }

    Sample subset(std::span<const std::size_t> indices) const;
    Sample slice(std::size_t begin, std::size_t end) const;
    Sample concat(const Sample& other) const;

    friend bool operator==(const Sample&, const Sample&) = default;

private:
    std::size_t domain_size_;
    std::vector<Observation> pairs_;
};

// Integer counts of (x, y) in a sample; frequencies are counts / total.
class EmpiricalMeasure {
public:
    EmpiricalMeasure(std::size_t domain_size, std::vector<std::uint64_t> counts);

    std::size_t domain_size() const { return counts_.size() / 2; }
    std::uint64_t count(PointIndex x, Label y) const { return counts_.at(2 * x + y); }
    std::uint64_t total() const { return total_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    Rational frequency(PointIndex x, Label y) const;
    JointDistribution to_distribution() const;

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Throws std::invalid_argument for an empty sample.
EmpiricalMeasure empirical_measure(const Sample& sample);

// Uniform draw from [0, bound) by rejection; the same sequence on every
// standard library, unlike std::uniform_int_distribution. bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// n i.i.d. draws, exact in the rational table; deterministic for a fixed seed.
// Throws std::domain_error if the common denominator of the table exceeds 64 bits.
Sample sample_from(const JointDistribution& dist, std::size_t n, std::uint64_t seed);

struct HoldoutSplit {
    Sample train;
    Sample validation;
};

// train = first n - v pairs, validation = last v pairs. Requires 0 < v < n.
HoldoutSplit split_holdout(const Sample& sample, std::size_t validation_size);

// k consecutive folds of n / k pairs each. Requires k >= 2 and k | n.
std::vector<Sample> kfold_split(const Sample& sample, std::size_t k);

}  // namespace ucurve

#include "ucurve/finite_domain.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ucurve {

FiniteDomain::FiniteDomain(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("domain must be nonempty");
    for (PointIndex i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second) {
            throw std::invalid_argument("duplicate point identifier '" + names_[i] + "'");
        }
    }
}

FiniteDomain FiniteDomain::from_features(std::vector<FeatureRow> rows) {
    if (rows.empty()) throw std::invalid_argument("domain must be nonempty");
    const std::size_t width = rows.front().size();
    std::vector<std::string> names;
    names.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != width) throw std::invalid_argument("feature rows differ in width");
        std::string name;
        for (auto bit : row) {
            if (bit > 1) throw std::invalid_argument("features must be 0 or 1");
            name.push_back(bit ? '1' : '0');
        }
        names.push_back(std::move(name));
    }
    FiniteDomain domain(std::move(names));
    domain.features_ = std::move(rows);
    domain.width_ = width;
    return domain;
}

FiniteDomain FiniteDomain::boolean_cube(std::size_t d) {
    if (d == 0 || d > 20) throw std::invalid_argument("cube dimension must be in 1..20");
    std::vector<FeatureRow> rows;
    for (std::size_t v = 0; v < (std::size_t{1} << d); ++v) {
        FeatureRow row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = (v >> (d - 1 - j)) & 1U;
        rows.push_back(std::move(row));
    }
    return from_features(std::move(rows));
}

std::optional<PointIndex> FiniteDomain::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const FeatureRow& FiniteDomain::features(PointIndex i) const {
    if (!has_features()) throw std::logic_error("domain points carry no feature vectors");
    return features_.at(i);
}

JointDistribution::JointDistribution(std::size_t domain_size, std::vector<Rational> table)
    : table_(std::move(table)) {
    if (domain_size == 0) throw std::invalid_argument("distribution over an empty domain");
    if (table_.size() != 2 * domain_size) throw std::invalid_argument("distribution table has wrong size");
    Rational sum = 0;
    for (const auto& p : table_) {
        if (p < 0) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("probabilities sum to " + to_fraction_string(sum) + ", not 1");
}

JointDistribution JointDistribution::from_conditional(std::span<const Rational> marginal,
                                                      std::span<const Rational> p_one) {
    if (marginal.size() != p_one.size()) throw std::invalid_argument("marginal/conditional size mismatch");
    std::vector<Rational> table;
    table.reserve(2 * marginal.size());
    for (std::size_t x = 0; x < marginal.size(); ++x) {
        if (p_one[x] < 0 || p_one[x] > 1) throw std::invalid_argument("conditional probability outside [0,1]");
        table.push_back(marginal[x] * (1 - p_one[x]));
        table.push_back(marginal[x] * p_one[x]);
    }
    return JointDistribution(marginal.size(), std::move(table));
}

Sample::Sample(std::size_t domain_size, std::vector<Observation> pairs)
    : domain_size_(domain_size), pairs_(std::move(pairs)) {
    for (const auto& o : pairs_) {
        if (o.point >= domain_size_) throw std::invalid_argument("observation outside the domain");
        if (o.label > 1) throw std::invalid_argument("labels must be 0 or 1");
    }
}

Sample Sample::subset(std::span<const std::size_t> indices) const {
    std::vector<Observation> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(pairs_.at(i));
    return Sample(domain_size_, std::move(out));
}

Sample Sample::slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > pairs_.size()) throw std::out_of_range("bad sample slice");
    return Sample(domain_size_, std::vector<Observation>(pairs_.begin() + begin, pairs_.begin() + end));
}

Sample Sample::concat(const Sample& other) const {
    if (other.domain_size_ != domain_size_) throw std::invalid_argument("samples over different domains");
    std::vector<Observation> out = pairs_;
    out.insert(out.end(), other.pairs_.begin(), other.pairs_.end());
    return Sample(domain_size_, std::move(out));
}

EmpiricalMeasure::EmpiricalMeasure(std::size_t domain_size, std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)) {
    if (counts_.size() != 2 * domain_size) throw std::invalid_argument("count table has wrong size");
    for (auto c : counts_) total_ += c;
    if (total_ == 0) throw std::invalid_argument("empirical measure of an empty sample is undefined");
}

Rational EmpiricalMeasure::frequency(PointIndex x, Label y) const {
    return Rational(BigInt(count(x, y)), BigInt(total_));
}

JointDistribution EmpiricalMeasure::to_distribution() const {
    std::vector<Rational> table;
    table.reserve(counts_.size());
    for (auto c : counts_) table.emplace_back(BigInt(c), BigInt(total_));
    return JointDistribution(domain_size(), std::move(table));
}

EmpiricalMeasure empirical_measure(const Sample& sample) {
    if (sample.empty()) throw std::invalid_argument("empirical measure of an empty sample is undefined");
    std::vector<std::uint64_t> counts(2 * sample.domain_size(), 0);
    for (const auto& o : sample.pairs()) ++counts[2 * o.point + o.label];
    return EmpiricalMeasure(sample.domain_size(), std::move(counts));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        std::uint64_t v = rng();
        if (v < limit) return v % bound;
    }
}

Sample sample_from(const JointDistribution& dist, std::size_t n, std::uint64_t seed) {
    const auto& table = dist.table();
    BigInt common = 1;
    for (const auto& p : table) common = boost::multiprecision::lcm(common, BigInt(denominator(p)));
    if (common > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        throw std::domain_error("distribution denominators too large for exact sampling");
    }
    const auto scale = common.convert_to<std::uint64_t>();

    // cumulative[i] = scale * sum_{j <= i} table[j]
    std::vector<std::uint64_t> cumulative;
    cumulative.reserve(table.size());
    BigInt running = 0;
    for (const auto& p : table) {
        running += numerator(p) * (common / denominator(p));
        cumulative.push_back(running.convert_to<std::uint64_t>());
    }

    std::mt19937_64 rng(seed);
    std::vector<Observation> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t u = uniform_below(rng, scale);
        const auto cell = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        pairs.push_back({cell / 2, static_cast<Label>(cell % 2)});
    }
    return Sample(dist.domain_size(), std::move(pairs));
}

HoldoutSplit split_holdout(const Sample& sample, std::size_t validation_size) {
    const std::size_t n = sample.size();
    if (validation_size == 0 || validation_size >= n) {
        throw std::invalid_argument("holdout needs 0 < validation size < sample size");
    }
    return {sample.slice(0, n - validation_size), sample.slice(n - validation_size, n)};
}

std::vector<Sample> kfold_split(const Sample& sample, std::size_t k) {
    const std::size_t n = sample.size();
    if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
    if (n == 0 || n % k != 0) throw std::invalid_argument("sample size is not divisible by k");
    const std::size_t fold = n / k;
    std::vector<Sample> folds;
    folds.reserve(k);
    for (std::size_t j = 0; j < k; ++j) folds.push_back(sample.slice(j * fold, (j + 1) * fold));
    return folds;
}

}  // namespace ucurve

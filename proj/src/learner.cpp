#include "ucurve/learner.hpp"

#include <stdexcept>

namespace ucurve {

bool Hypothesis::respects(const Partition& p) const {
    if (p.size() != labels.size()) return false;
    std::vector<int> block_label(p.block_count(), -1);
    for (PointIndex x = 0; x < labels.size(); ++x) {
        int& b = block_label[p.block_of(x)];
        if (b == -1) {
            b = labels[x];
        } else if (b != labels[x]) {
            return false;
        }
    }
    return true;
}

namespace {

template <typename Mass>
Hypothesis majority_per_block(const Partition& node, const std::vector<Mass>& table, TieRule tie) {
    std::vector<Mass> zero(node.block_count(), Mass(0)), one(node.block_count(), Mass(0));
    for (PointIndex x = 0; x < node.size(); ++x) {
        zero[node.block_of(x)] += table[2 * x];
        one[node.block_of(x)] += table[2 * x + 1];
    }
    Hypothesis h{std::vector<Label>(node.size())};
    for (PointIndex x = 0; x < node.size(); ++x) {
        const auto b = node.block_of(x);
        if (one[b] != zero[b]) {
            h.labels[x] = one[b] > zero[b] ? 1 : 0;
        } else {
            h.labels[x] = tie == TieRule::prefer_one ? 1 : 0;
        }
    }
    return h;
}

}  // namespace

Hypothesis erm_on_partition(const Partition& node, const EmpiricalMeasure& measure, TieRule tie) {
    if (measure.domain_size() != node.size()) throw std::invalid_argument("measure and node over different domains");
    return majority_per_block(node, measure.counts(), tie);
}

Rational empirical_loss(const Hypothesis& h, const EmpiricalMeasure& measure) {
    if (measure.domain_size() != h.size()) throw std::invalid_argument("hypothesis and measure over different domains");
    std::uint64_t wrong = 0;
    for (PointIndex x = 0; x < h.size(); ++x) wrong += measure.count(x, h(x) ? 0 : 1);
    return Rational(BigInt(wrong), BigInt(measure.total()));
}

Rational true_loss(const Hypothesis& h, const JointDistribution& dist) {
    if (dist.domain_size() != h.size()) throw std::invalid_argument("hypothesis and distribution over different domains");
    Rational loss = 0;
    for (PointIndex x = 0; x < h.size(); ++x) loss += dist.prob(x, h(x) ? 0 : 1);
    return loss;
}

std::pair<Hypothesis, Rational> best_in_model(const Partition& node, const JointDistribution& dist, TieRule tie) {
    if (dist.domain_size() != node.size()) throw std::invalid_argument("distribution and node over different domains");
    Hypothesis h = majority_per_block(node, dist.table(), tie);
    Rational loss = true_loss(h, dist);
    return {std::move(h), std::move(loss)};
}

}  // namespace ucurve

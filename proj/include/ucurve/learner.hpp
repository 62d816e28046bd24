#pragma once

#include <utility>
#include <vector>

#include "ucurve/finite_domain.hpp"
#include "ucurve/partition.hpp"
#include "ucurve/rational.hpp"

namespace ucurve {

// Total labeling of the domain: labels[x] in {0,1}.
struct Hypothesis {
    std::vector<Label> labels;

    std::size_t size() const { return labels.size(); }
    Label operator()(PointIndex x) const { return labels.at(x); }
    bool respects(const Partition& p) const;

    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

enum class TieRule { prefer_one, prefer_zero };

// Per-block majority label under the measure; equal (including zero) mass
// goes to the tie rule's label.
Hypothesis erm_on_partition(const Partition& node, const EmpiricalMeasure& measure, TieRule tie = TieRule::prefer_one);

Rational empirical_loss(const Hypothesis& h, const EmpiricalMeasure& measure);
Rational true_loss(const Hypothesis& h, const JointDistribution& dist);

// Bayes labeling within the model of the node and its exact loss.
std::pair<Hypothesis, Rational> best_in_model(const Partition& node, const JointDistribution& dist,
                                              TieRule tie = TieRule::prefer_one);

}  // namespace ucurve

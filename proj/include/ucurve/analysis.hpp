#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ucurve/estimators.hpp"
#include "ucurve/finite_domain.hpp"
#include "ucurve/learner.hpp"
#include "ucurve/learning_space.hpp"
#include "ucurve/search.hpp"

namespace ucurve {

using CostTable = std::map<Partition, Rational>;

// Costs of every node of the space; throws std::length_error beyond node_cap.
CostTable cost_table(const LearningSpace& space, CostOracle& costs, std::size_t node_cap = 1'000'000);

struct TargetSummary {
    Partition target_node;            // least-VC minimum-error node, canonical representative
    Rational target_error;            // L(M*)
    std::optional<Rational> mde;      // nullopt: every node attains L(M*) (+infinity)
    Hypothesis target_hypothesis;     // best hypothesis of M*
    std::map<Partition, Rational> model_errors;  // L(M) for every node
};

TargetSummary target_model(const LearningSpace& space, const JointDistribution& dist,
                           std::size_t node_cap = 1'000'000, TieRule tie = TieRule::prefer_one);

struct ErrorQuadruple {
    Rational type_i;    // sup over the selected model of |L_eval(h) - L(h)|
    Rational type_ii;   // L(final) - L(best in selected)
    Rational type_iii;  // L(best in selected) - L(target)
    Rational type_iv;   // L(final) - L(target)
};

// Sup over the 2^|pi| hypotheses of the model of |empirical - true loss|.
// Throws std::length_error when |pi| > 20.
Rational type_i_error(const Partition& model, const JointDistribution& dist, const Sample& eval_sample);

ErrorQuadruple estimation_errors(const Partition& selected, const Hypothesis& final_hypothesis,
                                 const TargetSummary& target, const JointDistribution& dist,
                                 const Sample& eval_sample);
ErrorQuadruple estimation_errors(const SearchReport& report, const TargetSummary& target,
                                 const JointDistribution& dist, const Sample& eval_sample);

struct MinimumClass {
    bool strong_local = false;
    bool weak_local = false;  // local minimum of some maximal continuous chain
    bool global = false;

    bool none() const { return !strong_local && !weak_local && !global; }
};

// Costs must cover the node and its neighbors.
MinimumClass classify_minimum(const CostTable& costs, const LearningSpace& space, const Partition& node);

// Visits every maximal continuous chain (minimal element to maximal element
// through covers). Throws std::length_error if there are more than chain_cap.
void for_each_maximal_chain(const LearningSpace& space, const std::function<void(const std::vector<Partition>&)>& visit,
                            std::size_t chain_cap = 1'000'000);
BigInt count_maximal_chains(const LearningSpace& space);

enum class UCurveStrength { weak, strong };

struct UCurveViolation {
    std::vector<Partition> chain;
    Partition minimum;
    Partition cheaper;
};

struct UCurveCheck {
    bool holds = true;
    std::size_t chains_checked = 0;
    std::size_t violation_count = 0;
    std::vector<UCurveViolation> violations;  // first max_reported
};

UCurveCheck check_ucurve(const CostTable& costs, const LearningSpace& space, UCurveStrength strength,
                         std::size_t chain_cap = 1'000'000, std::size_t max_reported = 100);

struct ConvexityViolation {
    Partition low;    // meet
    Partition left;
    Partition right;
    Partition high;   // join
    Rational join_cost;
    Rational bound;   // cost(left) + cost(right) - cost(meet)
};

struct ConvexityCheck {
    bool holds = true;
    std::size_t pairs_checked = 0;
    std::vector<ConvexityViolation> violations;
    bool compatible = true;  // U-curve compatibility of the space
    std::optional<std::pair<Partition, Partition>> incompatibility;  // (M, M_i) witness
};

ConvexityCheck check_lattice_convexity(const CostTable& costs, const LearningSpace& space);

struct UCurveCompatibility {
    bool compatible = true;
    std::optional<std::pair<Partition, Partition>> witness;
};

UCurveCompatibility check_ucurve_compatibility(const LearningSpace& space);

struct SpaceStats {
    BigInt node_count;
    std::size_t vc_dim_max = 0;
    BigInt maximal_count;
};

SpaceStats space_stats(const LearningSpace& space, std::size_t node_cap = 10'000'000);

struct ConsistencyRow {
    std::size_t sample_size = 0;
    std::size_t reps = 0;
    Rational fraction_equivalent;  // M-hat in the class of M* (same VC dimension and error)
    Rational fraction_same_error;  // L(M-hat) = L(M*)
    Rational mean_type_iii;
};

// Seed for repetition rep at sample size n; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t rep);

std::vector<ConsistencyRow> consistency_experiment(const JointDistribution& dist, const LearningSpace& space,
                                                   const std::vector<std::size_t>& sizes, std::size_t reps,
                                                   const EstimatorSpec& spec, std::uint64_t seed,
                                                   const SearchConfig& config = {});

}  // namespace ucurve

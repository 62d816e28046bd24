#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ucurve/estimators.hpp"
#include "ucurve/learner.hpp"
#include "ucurve/learning_space.hpp"

namespace ucurve {

enum class StartPolicy { coarsest, seeded_random };
enum class NeighborOrder { canonical, cheapest_first };

struct StochasticConfig {
    std::size_t restarts = 1;
    std::size_t budget = 1;  // cost evaluations
    std::uint64_t seed = 0;
};

struct SearchConfig {
    StartPolicy start_policy = StartPolicy::coarsest;
    std::uint64_t seed = 0;
    // Exhaustively evaluate the candidates once fewer than this many remain; 0 disables.
    std::size_t exhaustive_fallback_threshold = 0;
    bool prune_visited_worse_neighbors = false;
    // Asserts the lattice-convexity condition holds for the costs; enables join skipping.
    bool convexity_prune = false;
    std::optional<StochasticConfig> stochastic;
    NeighborOrder neighbor_order = NeighborOrder::canonical;
};

struct NodeValue {
    Partition node;
    Rational value;

    friend bool operator==(const NodeValue&, const NodeValue&) = default;
};

enum class TraceEvent { start, move, strong_minimum, dead_end, pruned, exhaustive, budget_exhausted };

struct TraceStep {
    TraceEvent event;
    Partition node;
    std::optional<Rational> value;
};

std::string to_string(TraceEvent event);

struct SearchReport {
    std::vector<NodeValue> strong_local_minima;  // in discovery order
    std::vector<NodeValue> exhaustively_checked;
    std::vector<NodeValue> global_minima;        // canonical order
    Partition selected;
    Rational selected_value;
    std::optional<Hypothesis> final_hypothesis;
    std::size_t nodes_visited = 0;
    std::size_t estimates_computed = 0;
    std::vector<TraceStep> trace;
    bool suboptimal = false;
    bool fallback_used = false;
};

// The candidate set of the search, stored implicitly: a node is excluded iff
// it is comparable to (or equal to) a recorded minimum, or was removed.
class ExclusionSet {
public:
    void record_minimum(const Partition& node);
    void remove(const Partition& node);
    bool excluded(const Partition& node) const;

    const std::vector<Partition>& minima() const { return minima_; }
    std::size_t removed_count() const { return removed_.size(); }

private:
    std::vector<Partition> minima_;
    std::unordered_set<Partition, PartitionHash> removed_;
};

// True iff no immediate neighbor costs less than value. Stops at the first
// cheaper neighbor unless exhaust_all. With prune_worse set, neighbors found
// strictly costlier are removed from it.
bool minimum_exhausted(const Partition& node, const Rational& value, const LearningSpace& space, CostOracle& costs,
                       bool exhaust_all = false, ExclusionSet* prune_worse = nullptr);

// True iff the flag is set and min(cost(p1), cost(p2)) > cost(meet(p1, p2));
// all three costs must already be cached.
bool convexity_skip(const Partition& p1, const Partition& p2, const CostOracle& costs, bool convexity_flag);

SearchReport ucurve_search(const LearningSpace& space, CostOracle& costs, const SearchConfig& config = {});
SearchReport exhaustive_search(const LearningSpace& space, CostOracle& costs);

// As above, with costs from the estimator and the final hypothesis learned by
// reusing the whole sample.
SearchReport ucurve_search(const LearningSpace& space, const Sample& sample, const EstimatorSpec& spec,
                           const SearchConfig& config = {});
SearchReport exhaustive_search(const LearningSpace& space, const Sample& sample, const EstimatorSpec& spec);

// The least-VC node among the minima and every node reachable from them by
// descending through equal-cost down-neighbors; ties broken canonically.
// Throws std::invalid_argument if the minima are empty or differ in value.
Partition select_least_vc(const std::vector<NodeValue>& global_minima, const LearningSpace& space, CostOracle& costs);

enum class FinalMode { reuse, independent };

// ERM of the selected node on the selection sample (reuse) or on the
// independent sample. Throws std::invalid_argument if the sample used is
// missing or empty.
Hypothesis learn_final_hypothesis(const Partition& selected, FinalMode mode, const Sample& selection_sample,
                                  const std::optional<Sample>& independent_sample, TieRule tie = TieRule::prefer_one);

}  // namespace ucurve

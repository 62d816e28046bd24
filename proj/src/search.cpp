#include "ucurve/search.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace ucurve {

std::string to_string(TraceEvent event) {
    switch (event) {
        case TraceEvent::start: return "start";
        case TraceEvent::move: return "move";
        case TraceEvent::strong_minimum: return "strong_minimum";
        case TraceEvent::dead_end: return "dead_end";
        case TraceEvent::pruned: return "pruned";
        case TraceEvent::exhaustive: return "exhaustive";
        case TraceEvent::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

void ExclusionSet::record_minimum(const Partition& node) {
    minima_.push_back(node);
}

void ExclusionSet::remove(const Partition& node) {
    removed_.insert(node);
}

bool ExclusionSet::excluded(const Partition& node) const {
    if (removed_.count(node)) return true;
    return std::any_of(minima_.begin(), minima_.end(), [&](const Partition& m) { return comparable(node, m); });
}

bool minimum_exhausted(const Partition& node, const Rational& value, const LearningSpace& space, CostOracle& costs,
                       bool exhaust_all, ExclusionSet* prune_worse) {
    bool minimum = true;
    for (const auto& q : all_neighbors(space, node)) {
        Rational cq = costs.cost(q);
        if (cq < value) {
            minimum = false;
            if (!exhaust_all) break;
        } else if (prune_worse && cq > value) {
            prune_worse->remove(q);
        }
    }
    return minimum;
}

bool convexity_skip(const Partition& p1, const Partition& p2, const CostOracle& costs, bool convexity_flag) {
    if (!convexity_flag) return false;
    auto c1 = costs.cached(p1);
    auto c2 = costs.cached(p2);
    auto cm = costs.cached(meet(p1, p2));
    if (!c1 || !c2 || !cm) throw std::logic_error("convexity_skip needs cached costs");
    return std::min(*c1, *c2) > *cm;
}

namespace {

struct BudgetExhausted {};

// Charges each new evaluation against a budget.
class BudgetedCosts final : public CostOracle {
public:
    BudgetedCosts(CostOracle& inner, std::size_t budget) : inner_(inner), budget_(budget) {}

    Rational cost(const Partition& node) override {
        if (auto c = inner_.cached(node); c && charged_.count(node)) return *c;
        if (used_ >= budget_) throw BudgetExhausted{};
        ++used_;
        charged_.insert(node);
        return inner_.cost(node);
    }
    std::optional<Rational> cached(const Partition& node) const override { return inner_.cached(node); }
    std::size_t evaluations() const override { return inner_.evaluations(); }

private:
    CostOracle& inner_;
    std::size_t budget_;
    std::size_t used_ = 0;
    std::unordered_set<Partition, PartitionHash> charged_;
};

// As select_least_vc, but only through nodes whose cost is already known.
Partition least_vc_known(const std::vector<NodeValue>& minima, const LearningSpace& space, const CostOracle& costs) {
    const Rational& value = minima.front().value;
    std::unordered_set<Partition, PartitionHash> seen;
    std::deque<Partition> queue;
    for (const auto& m : minima) {
        if (seen.insert(m.node).second) queue.push_back(m.node);
    }
    Partition best = queue.front();
    while (!queue.empty()) {
        Partition p = std::move(queue.front());
        queue.pop_front();
        if (p < best) best = p;
        for (auto& q : neighbors(space, p, Direction::down)) {
            if (!seen.insert(q).second) continue;
            if (costs.cached(q) == std::optional<Rational>(value)) queue.push_back(std::move(q));
        }
    }
    return best;
}

class SearchState {
public:
    SearchState(const LearningSpace& space, CostOracle& costs, const SearchConfig& config)
        : space_(space), costs_(costs), config_(config), before_(costs.evaluations()) {}

    void run_deterministic();
    void run_stochastic();
    void run_exhaustive();
    SearchReport finish();

private:
    std::optional<Partition> next_start();
    bool fewer_remaining_than(std::size_t c);
    std::vector<Partition> remaining();
    void walk(Partition start);
    void convexity_prune(const Partition& node);
    void trace(TraceEvent e, const Partition& node, std::optional<Rational> value = std::nullopt) {
        report_.trace.push_back({e, node, std::move(value)});
    }

    const LearningSpace& space_;
    CostOracle& costs_;
    const SearchConfig& config_;
    std::size_t before_;
    SearchReport report_;
    ExclusionSet exclusion_;
    std::unordered_set<Partition, PartitionHash> visited_;

    // Deterministic restarts: canonical cursor; exclusion only grows, so
    // skipped nodes never return.
    std::optional<NodeCursor> cursor_;
    std::optional<Partition> head_;
    // Random restarts: materialized candidates, compacted lazily.
    std::vector<Partition> pool_;
    std::mt19937_64 rng_;
};

std::optional<Partition> SearchState::next_start() {
    if (config_.start_policy == StartPolicy::coarsest) {
        if (!cursor_) cursor_.emplace(space_);
        for (;;) {
            if (!head_) {
                head_ = cursor_->next();
                if (!head_) return std::nullopt;
            }
            if (!exclusion_.excluded(*head_)) return head_;
            head_.reset();
        }
    }
    std::erase_if(pool_, [&](const Partition& p) { return exclusion_.excluded(p); });
    if (pool_.empty()) return std::nullopt;
    return pool_[uniform_below(rng_, pool_.size())];
}

bool SearchState::fewer_remaining_than(std::size_t c) {
    if (config_.start_policy == StartPolicy::seeded_random) return pool_.size() < c;
    std::size_t count = head_ ? 1 : 0;
    NodeCursor scan = *cursor_;
    while (count < c) {
        auto p = scan.next();
        if (!p) return true;
        if (!exclusion_.excluded(*p)) ++count;
    }
    return false;
}

std::vector<Partition> SearchState::remaining() {
    if (config_.start_policy == StartPolicy::seeded_random) {
        auto out = pool_;
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<Partition> out;
    if (head_) out.push_back(*head_);
    while (auto p = cursor_->next()) {
        if (!exclusion_.excluded(*p)) out.push_back(*p);
    }
    return out;
}

void SearchState::convexity_prune(const Partition& node) {
    if (!config_.convexity_prune) return;
    std::vector<Partition> ups;
    for (auto& q : neighbors(space_, node, Direction::up)) {
        if (costs_.cached(q)) ups.push_back(std::move(q));
    }
    for (std::size_t i = 0; i < ups.size(); ++i) {
        for (std::size_t j = i + 1; j < ups.size(); ++j) {
            if (meet(ups[i], ups[j]) != node) continue;
            Partition top = join(ups[i], ups[j]);
            if (!covers(space_, ups[i], top) || !covers(space_, ups[j], top)) continue;
            if (exclusion_.excluded(top)) continue;
            if (convexity_skip(ups[i], ups[j], costs_, true)) {
                exclusion_.remove(top);
                trace(TraceEvent::pruned, top);
            }
        }
    }
}

void SearchState::walk(Partition current) {
    Rational value = costs_.cost(current);
    visited_.insert(current);
    trace(TraceEvent::start, current, value);
    const bool exhaust_all = config_.neighbor_order == NeighborOrder::cheapest_first;
    for (;;) {
        ExclusionSet* prune = config_.prune_visited_worse_neighbors ? &exclusion_ : nullptr;
        const bool minimum = minimum_exhausted(current, value, space_, costs_, exhaust_all, prune);
        convexity_prune(current);
        if (minimum) {
            report_.strong_local_minima.push_back({current, value});
            exclusion_.record_minimum(current);
            trace(TraceEvent::strong_minimum, current, value);
            return;
        }
        std::optional<Partition> next;
        Rational next_value;
        for (auto& q : all_neighbors(space_, current)) {
            if (exclusion_.excluded(q)) continue;
            Rational cq = costs_.cost(q);
            if (cq >= value) continue;
            if (!next || cq < next_value) {
                next = std::move(q);
                next_value = std::move(cq);
                if (!exhaust_all) break;
            }
        }
        exclusion_.remove(current);
        if (!next) {
            trace(TraceEvent::dead_end, current, value);
            return;
        }
        current = std::move(*next);
        value = std::move(next_value);
        visited_.insert(current);
        trace(TraceEvent::move, current, value);
    }
}

void SearchState::run_deterministic() {
    if (config_.start_policy == StartPolicy::seeded_random) {
        pool_ = all_nodes(space_);
        rng_.seed(config_.seed);
    }
    while (auto start = next_start()) {
        const std::size_t c = config_.exhaustive_fallback_threshold;
        if (c > 0 && fewer_remaining_than(c)) {
            report_.fallback_used = true;
            for (const auto& p : remaining()) {
                Rational v = costs_.cost(p);
                trace(TraceEvent::exhaustive, p, v);
                report_.exhaustively_checked.push_back({p, std::move(v)});
            }
            return;
        }
        walk(*start);
    }
}

void SearchState::run_stochastic() {
    const auto& sc = *config_.stochastic;
    if (sc.budget == 0) throw std::invalid_argument("stochastic budget must be positive");
    BudgetedCosts budgeted(costs_, sc.budget);
    pool_ = all_nodes(space_);
    rng_.seed(sc.seed);
    const bool exhaust_all = config_.neighbor_order == NeighborOrder::cheapest_first;
    std::unordered_set<Partition, PartitionHash> recorded;
    std::optional<NodeValue> best_seen;
    auto seen = [&](const Partition& p, const Rational& v) {
        if (!best_seen || v < best_seen->value || (v == best_seen->value && p < best_seen->node)) best_seen = NodeValue{p, v};
    };
    try {
        for (std::size_t r = 0; r < sc.restarts; ++r) {
            Partition current = pool_[uniform_below(rng_, pool_.size())];
            Rational value = budgeted.cost(current);
            seen(current, value);
            visited_.insert(current);
            trace(TraceEvent::start, current, value);
            for (;;) {
                if (minimum_exhausted(current, value, space_, budgeted, exhaust_all)) {
                    if (recorded.insert(current).second) report_.strong_local_minima.push_back({current, value});
                    trace(TraceEvent::strong_minimum, current, value);
                    break;
                }
                std::optional<Partition> next;
                Rational next_value;
                for (auto& q : all_neighbors(space_, current)) {
                    Rational cq = budgeted.cost(q);
                    seen(q, cq);
                    if (cq >= value) continue;
                    if (!next || cq < next_value) {
                        next = std::move(q);
                        next_value = std::move(cq);
                        if (!exhaust_all) break;
                    }
                }
                current = std::move(*next);
                value = std::move(next_value);
                visited_.insert(current);
                trace(TraceEvent::move, current, value);
            }
        }
    } catch (const BudgetExhausted&) {
        report_.suboptimal = true;
        trace(TraceEvent::budget_exhausted, best_seen ? best_seen->node : Partition::coarsest(space_.domain_size()));
        if (report_.strong_local_minima.empty() && best_seen) report_.exhaustively_checked.push_back(*best_seen);
    }
}

void SearchState::run_exhaustive() {
    enumerate_nodes(space_, [&](const Partition& p) {
        report_.exhaustively_checked.push_back({p, costs_.cost(p)});
        return true;
    });
}

SearchReport SearchState::finish() {
    std::vector<NodeValue> candidates = report_.strong_local_minima;
    candidates.insert(candidates.end(), report_.exhaustively_checked.begin(), report_.exhaustively_checked.end());
    if (candidates.empty()) throw std::logic_error("search finished without candidates");
    Rational best = candidates.front().value;
    for (const auto& c : candidates) best = std::min(best, c.value);
    for (const auto& c : candidates) {
        if (c.value == best) report_.global_minima.push_back(c);
    }
    auto by_node = [](const NodeValue& a, const NodeValue& b) { return a.node < b.node; };
    std::sort(report_.global_minima.begin(), report_.global_minima.end(), by_node);
    report_.global_minima.erase(std::unique(report_.global_minima.begin(), report_.global_minima.end()),
                                report_.global_minima.end());

    // A stochastic run may not spend evaluations beyond its budget.
    const bool budgeted = config_.stochastic.has_value();
    report_.selected = budgeted ? least_vc_known(report_.global_minima, space_, costs_)
                                : select_least_vc(report_.global_minima, space_, costs_);
    report_.selected_value = best;
    auto pos = std::lower_bound(report_.global_minima.begin(), report_.global_minima.end(),
                                NodeValue{report_.selected, best}, by_node);
    if (pos == report_.global_minima.end() || pos->node != report_.selected) {
        report_.global_minima.insert(pos, NodeValue{report_.selected, best});
        if (!budgeted && minimum_exhausted(report_.selected, best, space_, costs_)) {
            report_.strong_local_minima.push_back({report_.selected, best});
        }
    }

    std::size_t visited = visited_.size();
    for (const auto& c : report_.exhaustively_checked) {
        if (!visited_.count(c.node)) ++visited;
    }
    report_.nodes_visited = visited;
    report_.estimates_computed = costs_.evaluations() - before_;
    return std::move(report_);
}

}  // namespace

SearchReport ucurve_search(const LearningSpace& space, CostOracle& costs, const SearchConfig& config) {
    SearchState state(space, costs, config);
    if (config.stochastic) {
        state.run_stochastic();
    } else {
        state.run_deterministic();
    }
    return state.finish();
}

SearchReport exhaustive_search(const LearningSpace& space, CostOracle& costs) {
    SearchConfig config;
    SearchState state(space, costs, config);
    state.run_exhaustive();
    return state.finish();
}

SearchReport ucurve_search(const LearningSpace& space, const Sample& sample, const EstimatorSpec& spec,
                           const SearchConfig& config) {
    ModelEstimator costs(sample, spec);
    SearchReport report = ucurve_search(space, costs, config);
    report.final_hypothesis = learn_final_hypothesis(report.selected, FinalMode::reuse, sample, std::nullopt, spec.tie);
    return report;
}

SearchReport exhaustive_search(const LearningSpace& space, const Sample& sample, const EstimatorSpec& spec) {
    ModelEstimator costs(sample, spec);
    SearchReport report = exhaustive_search(space, costs);
    report.final_hypothesis = learn_final_hypothesis(report.selected, FinalMode::reuse, sample, std::nullopt, spec.tie);
    return report;
}

Partition select_least_vc(const std::vector<NodeValue>& global_minima, const LearningSpace& space, CostOracle& costs) {
    if (global_minima.empty()) throw std::invalid_argument("no global minima to select from");
    const Rational& value = global_minima.front().value;
    for (const auto& m : global_minima) {
        if (m.value != value) throw std::invalid_argument("global minima have different estimates");
    }
    std::unordered_set<Partition, PartitionHash> seen;
    std::deque<Partition> queue;
    for (const auto& m : global_minima) {
        if (seen.insert(m.node).second) queue.push_back(m.node);
    }
    Partition best = queue.front();
    while (!queue.empty()) {
        Partition p = std::move(queue.front());
        queue.pop_front();
        if (p < best) best = p;
        for (auto& q : neighbors(space, p, Direction::down)) {
            if (seen.count(q)) continue;
            seen.insert(q);
            if (costs.cost(q) == value) queue.push_back(std::move(q));
        }
    }
    return best;
}

Hypothesis learn_final_hypothesis(const Partition& selected, FinalMode mode, const Sample& selection_sample,
                                  const std::optional<Sample>& independent_sample, TieRule tie) {
    if (mode == FinalMode::independent && !independent_sample) {
        throw std::invalid_argument("independent mode needs a second sample");
    }
    const Sample& sample = mode == FinalMode::reuse ? selection_sample : *independent_sample;
    if (sample.empty()) throw std::invalid_argument("cannot learn a hypothesis from an empty sample");
    return erm_on_partition(selected, empirical_measure(sample), tie);
}

}  // namespace ucurve

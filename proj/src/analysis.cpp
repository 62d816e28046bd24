#include "ucurve/analysis.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>

namespace ucurve {

namespace {

void require_enumerable(const LearningSpace& space, std::size_t node_cap) {
    if (space.node_count() > node_cap) {
        throw std::length_error("space has " + space.node_count().str() + " nodes, above the cap of " +
                                std::to_string(node_cap));
    }
}

const Rational& lookup(const CostTable& costs, const Partition& node) {
    auto it = costs.find(node);
    if (it == costs.end()) throw std::out_of_range("no cost for node " + node.encode());
    return it->second;
}

}  // namespace

CostTable cost_table(const LearningSpace& space, CostOracle& costs, std::size_t node_cap) {
    require_enumerable(space, node_cap);
    CostTable out;
    enumerate_nodes(space, [&](const Partition& p) {
        out.emplace(p, costs.cost(p));
        return true;
    });
    return out;
}

TargetSummary target_model(const LearningSpace& space, const JointDistribution& dist, std::size_t node_cap,
                           TieRule tie) {
    require_enumerable(space, node_cap);
    if (dist.domain_size() != space.domain_size()) throw std::invalid_argument("distribution and space differ in domain");
    std::map<Partition, Rational> errors;
    enumerate_nodes(space, [&](const Partition& p) {
        errors.emplace(p, best_in_model(p, dist, tie).second);
        return true;
    });
    Rational best = errors.begin()->second;
    for (const auto& [p, e] : errors) best = std::min(best, e);
    // Canonical order puts fewer blocks first, so the first minimum-error
    // node is the least-VC one with the smallest encoding.
    auto target = std::find_if(errors.begin(), errors.end(), [&](const auto& kv) { return kv.second == best; });
    std::optional<Rational> mde;
    for (const auto& [p, e] : errors) {
        if (e > best && (!mde || e - best < *mde)) mde = e - best;
    }
    auto [h, loss] = best_in_model(target->first, dist, tie);
    return TargetSummary{target->first, best, mde, std::move(h), std::move(errors)};
}

Rational type_i_error(const Partition& model, const JointDistribution& dist, const Sample& eval_sample) {
    const std::size_t k = model.block_count();
    if (k > 20) throw std::length_error("type I error enumeration is limited to 20 blocks");
    const EmpiricalMeasure measure = empirical_measure(eval_sample);
    if (measure.domain_size() != dist.domain_size()) throw std::invalid_argument("sample and distribution differ in domain");

    // gap[b][y]: contribution of block b labeled y to L_eval(h) - L(h).
    std::vector<std::array<Rational, 2>> gap(k);
    for (PointIndex x = 0; x < model.size(); ++x) {
        auto& g = gap[model.block_of(x)];
        for (Label y = 0; y < 2; ++y) {
            const Label wrong = 1 - y;
            g[y] += measure.frequency(x, wrong) - dist.prob(x, wrong);
        }
    }
    // Gray-code walk over the block labelings.
    std::vector<Label> label(k, 0);
    Rational diff = 0;
    for (const auto& g : gap) diff += g[0];
    Rational sup = abs(diff);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        const auto b = static_cast<std::size_t>(__builtin_ctzll(i));
        diff += gap[b][1 - label[b]] - gap[b][label[b]];
        label[b] = 1 - label[b];
        sup = std::max(sup, Rational(abs(diff)));
    }
    return sup;
}

ErrorQuadruple estimation_errors(const Partition& selected, const Hypothesis& final_hypothesis,
                                 const TargetSummary& target, const JointDistribution& dist,
                                 const Sample& eval_sample) {
    const Rational final_loss = true_loss(final_hypothesis, dist);
    const Rational model_loss = best_in_model(selected, dist).second;
    ErrorQuadruple e;
    e.type_i = type_i_error(selected, dist, eval_sample);
    e.type_ii = final_loss - model_loss;
    e.type_iii = model_loss - target.target_error;
    e.type_iv = final_loss - target.target_error;
    return e;
}

ErrorQuadruple estimation_errors(const SearchReport& report, const TargetSummary& target,
                                 const JointDistribution& dist, const Sample& eval_sample) {
    if (!report.final_hypothesis) throw std::invalid_argument("report has no final hypothesis");
    return estimation_errors(report.selected, *report.final_hypothesis, target, dist, eval_sample);
}

MinimumClass classify_minimum(const CostTable& costs, const LearningSpace& space, const Partition& node) {
    const Rational& c = lookup(costs, node);
    const auto down = neighbors(space, node, Direction::down);
    const auto up = neighbors(space, node, Direction::up);
    auto all_geq = [&](const std::vector<Partition>& ns) {
        return std::all_of(ns.begin(), ns.end(), [&](const Partition& q) { return lookup(costs, q) >= c; });
    };
    // A chain end counts as a +infinity neighbor.
    auto some_geq = [&](const std::vector<Partition>& ns) {
        return ns.empty() || std::any_of(ns.begin(), ns.end(), [&](const Partition& q) { return lookup(costs, q) >= c; });
    };
    MinimumClass out;
    out.strong_local = all_geq(down) && all_geq(up);
    out.weak_local = some_geq(down) && some_geq(up);
    bool global = true;
    enumerate_nodes(space, [&](const Partition& p) {
        if (lookup(costs, p) < c) {
            global = false;
            return false;
        }
        return true;
    });
    out.global = global;
    return out;
}

BigInt count_maximal_chains(const LearningSpace& space) {
    // Chains from each node up to a maximal element, by descending canonical order.
    auto nodes = all_nodes(space);
    std::unordered_map<Partition, BigInt, PartitionHash> above;
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
        const auto up = neighbors(space, *it, Direction::up);
        BigInt total = up.empty() ? BigInt(1) : BigInt(0);
        for (const auto& q : up) total += above.at(q);
        above.emplace(*it, total);
    }
    BigInt chains = 0;
    for (const auto& p : nodes) {
        if (neighbors(space, p, Direction::down).empty()) chains += above.at(p);
    }
    return chains;
}

void for_each_maximal_chain(const LearningSpace& space, const std::function<void(const std::vector<Partition>&)>& visit,
                            std::size_t chain_cap) {
    if (count_maximal_chains(space) > chain_cap) throw std::length_error("too many maximal chains to enumerate");
    std::unordered_map<Partition, std::vector<Partition>, PartitionHash> up_cache;
    auto ups = [&](const Partition& p) -> const std::vector<Partition>& {
        auto it = up_cache.find(p);
        if (it == up_cache.end()) it = up_cache.emplace(p, neighbors(space, p, Direction::up)).first;
        return it->second;
    };
    std::vector<Partition> chain;
    std::function<void()> extend = [&]() {
        const auto& next = ups(chain.back());
        if (next.empty()) {
            visit(chain);
            return;
        }
        for (const auto& q : next) {
            chain.push_back(q);
            extend();
            chain.pop_back();
        }
    };
    enumerate_nodes(space, [&](const Partition& p) {
        if (neighbors(space, p, Direction::down).empty()) {
            chain.assign(1, p);
            extend();
        }
        return true;
    });
}

UCurveCheck check_ucurve(const CostTable& costs, const LearningSpace& space, UCurveStrength strength,
                         std::size_t chain_cap, std::size_t max_reported) {
    std::unordered_map<Partition, bool, PartitionHash> strong;
    if (strength == UCurveStrength::weak) {
        enumerate_nodes(space, [&](const Partition& p) {
            const Rational& c = lookup(costs, p);
            bool is_min = true;
            for (const auto& q : all_neighbors(space, p)) {
                if (lookup(costs, q) < c) {
                    is_min = false;
                    break;
                }
            }
            strong.emplace(p, is_min);
            return true;
        });
    }
    UCurveCheck out;
    auto report = [&](const std::vector<Partition>& chain, const Partition& minimum, const Partition& cheaper) {
        out.holds = false;
        ++out.violation_count;
        if (out.violations.size() < max_reported) out.violations.push_back({chain, minimum, cheaper});
    };
    for_each_maximal_chain(
        space,
        [&](const std::vector<Partition>& chain) {
            ++out.chains_checked;
            std::vector<Rational> c;
            c.reserve(chain.size());
            for (const auto& p : chain) c.push_back(lookup(costs, p));
            const std::size_t argmin = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
            for (std::size_t i = 0; i < chain.size(); ++i) {
                if (c[i] == c[argmin]) continue;
                bool candidate = false;
                if (strength == UCurveStrength::weak) {
                    candidate = strong.at(chain[i]);
                } else {
                    const bool left = i == 0 || c[i - 1] >= c[i];
                    const bool right = i + 1 == chain.size() || c[i + 1] >= c[i];
                    candidate = left && right;
                }
                if (candidate) report(chain, chain[i], chain[argmin]);
            }
        },
        chain_cap);
    return out;
}

UCurveCompatibility check_ucurve_compatibility(const LearningSpace& space) {
    const auto nodes = all_nodes(space);
    for (const auto& m : nodes) {
        for (const auto& mi : nodes) {
            if (mi == m) continue;
            if (leq(m, mi)) {
                // Lower neighbors of mi relative to m.
                std::vector<Partition> rel;
                for (const auto& q : neighbors(space, mi, Direction::down)) {
                    if (leq(m, q)) rel.push_back(q);
                }
                if (rel.size() == 1 && rel.front() != m) return {false, std::make_pair(m, mi)};
            } else if (leq(mi, m)) {
                std::vector<Partition> rel;
                for (const auto& q : neighbors(space, mi, Direction::up)) {
                    if (leq(q, m)) rel.push_back(q);
                }
                if (rel.size() == 1 && rel.front() != m) return {false, std::make_pair(m, mi)};
            }
        }
    }
    return {};
}

ConvexityCheck check_lattice_convexity(const CostTable& costs, const LearningSpace& space) {
    ConvexityCheck out;
    enumerate_nodes(space, [&](const Partition& low) {
        const auto ups = neighbors(space, low, Direction::up);
        for (std::size_t i = 0; i < ups.size(); ++i) {
            for (std::size_t j = i + 1; j < ups.size(); ++j) {
                if (meet(ups[i], ups[j]) != low) continue;
                Partition high = join(ups[i], ups[j]);
                if (!covers(space, ups[i], high) || !covers(space, ups[j], high)) continue;
                ++out.pairs_checked;
                const Rational bound = lookup(costs, ups[i]) + lookup(costs, ups[j]) - lookup(costs, low);
                const Rational& top = lookup(costs, high);
                if (top < bound) {
                    out.holds = false;
                    out.violations.push_back({low, ups[i], ups[j], high, top, bound});
                }
            }
        }
        return true;
    });
    auto compat = check_ucurve_compatibility(space);
    out.compatible = compat.compatible;
    out.incompatibility = compat.witness;
    return out;
}

SpaceStats space_stats(const LearningSpace& space, std::size_t node_cap) {
    require_enumerable(space, node_cap);
    SpaceStats s;
    s.node_count = space.node_count();
    s.maximal_count = 0;
    enumerate_nodes(space, [&](const Partition& p) {
        s.vc_dim_max = std::max(s.vc_dim_max, p.block_count());
        if (space.kind() == LearningSpace::Kind::full_partition_lattice) {
            if (p.block_count() == p.size()) s.maximal_count += 1;
        } else if (neighbors(space, p, Direction::up).empty()) {
            s.maximal_count += 1;
        }
        return true;
    });
    return s;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t rep) {
    // splitmix64 over the combined inputs.
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ n) ^ rep);
}

std::vector<ConsistencyRow> consistency_experiment(const JointDistribution& dist, const LearningSpace& space,
                                                   const std::vector<std::size_t>& sizes, std::size_t reps,
                                                   const EstimatorSpec& spec, std::uint64_t seed,
                                                   const SearchConfig& config) {
    if (!std::is_sorted(sizes.begin(), sizes.end())) throw std::invalid_argument("sample sizes must be ascending");
    std::vector<ConsistencyRow> rows;
    if (reps == 0) return rows;
    const TargetSummary target = target_model(space, dist, 1'000'000, spec.tie);
    const std::size_t target_vc = target.target_node.block_count();
    for (auto n : sizes) {
        ConsistencyRow row;
        row.sample_size = n;
        row.reps = reps;
        std::size_t equivalent = 0, same_error = 0;
        Rational type_iii_sum = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            const Sample sample = sample_from(dist, n, derive_seed(seed, n, r));
            ModelEstimator costs(sample, spec);
            const SearchReport report = ucurve_search(space, costs, config);
            const Rational& model_error = target.model_errors.at(report.selected);
            if (model_error == target.target_error) {
                ++same_error;
                if (report.selected.block_count() == target_vc) ++equivalent;
            }
            type_iii_sum += model_error - target.target_error;
        }
        const auto denom = static_cast<long long>(reps);
        row.fraction_equivalent = Rational(static_cast<long long>(equivalent), denom);
        row.fraction_same_error = Rational(static_cast<long long>(same_error), denom);
        row.mean_type_iii = type_iii_sum / denom;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ucurve

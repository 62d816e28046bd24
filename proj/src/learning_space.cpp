#include "ucurve/learning_space.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ucurve {

namespace {

bool smaller_feature_set(const FeatureSet& a, const FeatureSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

LearningSpace LearningSpace::full_partition_lattice(std::size_t n) {
    if (n == 0) throw std::invalid_argument("learning space over an empty domain");
    return LearningSpace(Kind::full_partition_lattice, n);
}

LearningSpace LearningSpace::feature_lattice(const FiniteDomain& domain) {
    if (!domain.has_features()) throw std::invalid_argument("feature lattice needs feature vectors");
    const std::size_t d = domain.feature_width();
    if (d > 20) throw std::length_error("feature lattice limited to 20 features");

    std::unordered_map<Partition, FeatureSet, PartitionHash> best;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        FeatureSet a;
        for (std::size_t j = 0; j < d; ++j) {
            if ((mask >> j) & 1U) a.insert(j + 1);
        }
        Partition p = feature_set_to_partition(domain, a);
        auto it = best.find(p);
        if (it == best.end()) {
            best.emplace(std::move(p), std::move(a));
        } else if (smaller_feature_set(a, it->second)) {
            it->second = std::move(a);
        }
    }
    std::vector<Partition> nodes;
    nodes.reserve(best.size());
    for (const auto& [p, a] : best) nodes.push_back(p);
    std::sort(nodes.begin(), nodes.end());
    std::vector<FeatureSet> features;
    features.reserve(nodes.size());
    for (const auto& p : nodes) features.push_back(best.at(p));

    LearningSpace space(Kind::feature_lattice, domain.size());
    space.feature_width_ = d;
    space.graph_ = build_graph(std::move(nodes), std::move(features));
    return space;
}

LearningSpace LearningSpace::restricted(const LearningSpace& base, const std::function<bool(const Partition&)>& keep) {
    std::vector<Partition> nodes;
    std::vector<FeatureSet> features;
    enumerate_nodes(base, [&](const Partition& p) {
        if (keep(p)) {
            nodes.push_back(p);
            if (base.kind_ == Kind::feature_lattice) features.push_back(*base.feature_set(p));
        }
        return true;
    });
    if (nodes.empty()) throw std::invalid_argument("restriction leaves no nodes");
    LearningSpace space(Kind::restricted, base.n_);
    space.feature_width_ = base.feature_width_;
    space.graph_ = build_graph(std::move(nodes), std::move(features));
    return space;
}

LearningSpace LearningSpace::two_block(std::size_t n) {
    if (n == 0) throw std::invalid_argument("learning space over an empty domain");
    std::vector<Partition> nodes;
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 2); ++k) {
        for_each_partition(n, k, [&](const Partition& p) {
            nodes.push_back(p);
            return true;
        });
    }
    LearningSpace space(Kind::restricted, n);
    space.graph_ = build_graph(std::move(nodes), {});
    return space;
}

LearningSpace LearningSpace::from_nodes(std::size_t n, std::vector<Partition> nodes) {
    if (nodes.empty()) throw std::invalid_argument("learning space needs at least one node");
    for (const auto& p : nodes) {
        if (p.size() != n) throw std::invalid_argument("node " + p.encode() + " is not over the domain");
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    LearningSpace space(Kind::restricted, n);
    space.graph_ = build_graph(std::move(nodes), {});
    return space;
}

std::shared_ptr<const LearningSpace::Graph> LearningSpace::build_graph(std::vector<Partition> nodes,
                                                                      std::vector<FeatureSet> features) {
    auto g = std::make_shared<Graph>();
    g->nodes = std::move(nodes);
    g->features = std::move(features);
    const std::size_t m = g->nodes.size();
    for (std::size_t i = 0; i < m; ++i) g->index.emplace(g->nodes[i], i);
    g->up.resize(m);
    g->down.resize(m);

    // Nodes are sorted by block count, so every strict superset of node i
    // appears after it.
    for (std::size_t i = 0; i < m; ++i) {
        const Partition& p = g->nodes[i];
        std::vector<std::size_t> above;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!leq(p, g->nodes[j])) continue;
            if (g->nodes[j].block_count() <= p.block_count()) {
                throw std::invalid_argument("strict containment without larger VC dimension: " + p.encode() + " < " +
                                            g->nodes[j].encode());
            }
            above.push_back(j);
        }
        for (std::size_t j : above) {
            bool cover = true;
            for (std::size_t k : above) {
                if (k != j && g->nodes[k].block_count() < g->nodes[j].block_count() && leq(g->nodes[k], g->nodes[j])) {
                    cover = false;
                    break;
                }
            }
            if (cover) {
                g->up[i].push_back(j);
                g->down[j].push_back(i);
            }
        }
    }
    for (auto& d : g->down) std::sort(d.begin(), d.end());
    return g;
}

std::size_t LearningSpace::index_of(const Partition& node) const {
    auto it = graph_->index.find(node);
    if (it == graph_->index.end()) throw std::invalid_argument("node " + node.encode() + " is not in the space");
    return it->second;
}

bool LearningSpace::contains(const Partition& node) const {
    if (node.size() != n_) return false;
    if (!graph_) return true;
    return graph_->index.count(node) != 0;
}

BigInt LearningSpace::node_count() const {
    if (!graph_) return bell_number(n_);
    return BigInt(graph_->nodes.size());
}

const std::vector<Partition>* LearningSpace::members() const {
    return graph_ ? &graph_->nodes : nullptr;
}

std::optional<FeatureSet> LearningSpace::feature_set(const Partition& node) const {
    if (!graph_ || graph_->features.empty()) return std::nullopt;
    return graph_->features[index_of(node)];
}

std::vector<Partition> neighbors(const LearningSpace& space, const Partition& node, Direction dir) {
    if (!space.contains(node)) throw std::invalid_argument("node " + node.encode() + " is not in the space");
    if (!space.graph_) return dir == Direction::up ? split_neighbors(node) : merge_neighbors(node);
    const auto& g = *space.graph_;
    const auto& adj = dir == Direction::up ? g.up[space.index_of(node)] : g.down[space.index_of(node)];
    std::vector<Partition> out;
    out.reserve(adj.size());
    for (auto j : adj) out.push_back(g.nodes[j]);
    return out;
}

std::vector<Partition> all_neighbors(const LearningSpace& space, const Partition& node) {
    auto out = neighbors(space, node, Direction::down);
    auto up = neighbors(space, node, Direction::up);
    out.insert(out.end(), up.begin(), up.end());
    return out;
}

bool covers(const LearningSpace& space, const Partition& lower, const Partition& upper) {
    if (!space.contains(lower) || !space.contains(upper)) return false;
    if (!space.members()) return upper.block_count() == lower.block_count() + 1 && leq(lower, upper);
    if (upper.block_count() <= lower.block_count() || !leq(lower, upper)) return false;
    const auto up = neighbors(space, lower, Direction::up);
    return std::find(up.begin(), up.end(), upper) != up.end();
}

std::optional<std::size_t> hasse_distance(const LearningSpace& space, const Partition& a, const Partition& b) {
    if (!space.contains(a) || !space.contains(b)) throw std::invalid_argument("node is not in the space");
    if (a == b) return 0;
    std::unordered_map<Partition, std::size_t, PartitionHash> dist{{a, 0}};
    std::deque<Partition> queue{a};
    while (!queue.empty()) {
        Partition p = std::move(queue.front());
        queue.pop_front();
        const std::size_t dp = dist.at(p);
        for (auto& q : all_neighbors(space, p)) {
            if (dist.count(q)) continue;
            if (q == b) return dp + 1;
            dist.emplace(q, dp + 1);
            queue.push_back(std::move(q));
        }
    }
    return std::nullopt;
}

NodeCursor::NodeCursor(const LearningSpace& space) : members_(space.members()) {
    if (!members_) enumerator_.emplace(space.domain_size());
}

std::optional<Partition> NodeCursor::next() {
    if (members_) {
        if (index_ >= members_->size()) return std::nullopt;
        return (*members_)[index_++];
    }
    return enumerator_->next();
}

void enumerate_nodes(const LearningSpace& space, const std::function<bool(const Partition&)>& visit) {
    if (const auto* nodes = space.members()) {
        for (const auto& p : *nodes) {
            if (!visit(p)) return;
        }
        return;
    }
    for_each_partition(space.domain_size(), visit);
}

std::vector<Partition> all_nodes(const LearningSpace& space) {
    if (const auto* nodes = space.members()) return *nodes;
    std::vector<Partition> out;
    enumerate_nodes(space, [&](const Partition& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::size_t vc_dim(const LearningSpace& space, const Partition& node) {
    if (!space.contains(node)) throw std::invalid_argument("node " + node.encode() + " is not in the space");
    return node.block_count();
}

BigInt bell_number(std::size_t n) {
    // Bell triangle: each row starts with the last entry of the previous row.
    std::vector<BigInt> row{1};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<BigInt> next{row.back()};
        for (const auto& v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

Partition feature_set_to_partition(const FiniteDomain& domain, const FeatureSet& features) {
    if (!domain.has_features()) throw std::invalid_argument("domain points carry no feature vectors");
    for (auto f : features) {
        if (f == 0 || f > domain.feature_width()) throw std::invalid_argument("feature index out of range");
    }
    std::vector<std::vector<std::uint8_t>> keys;
    std::vector<std::uint32_t> labels(domain.size());
    for (PointIndex i = 0; i < domain.size(); ++i) {
        std::vector<std::uint8_t> key;
        for (auto f : features) key.push_back(domain.features(i)[f - 1]);
        auto it = std::find(keys.begin(), keys.end(), key);
        labels[i] = static_cast<std::uint32_t>(it - keys.begin());
        if (it == keys.end()) keys.push_back(std::move(key));
    }
    return Partition::from_labels(labels);
}

}  // namespace ucurve

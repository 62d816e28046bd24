#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "ucurve/finite_domain.hpp"
#include "ucurve/partition.hpp"
#include "ucurve/rational.hpp"

namespace ucurve {

// Subset of the feature indices {1..d} (1-based).
using FeatureSet = std::set<std::size_t>;

enum class Direction { up, down };

// A finite poset of partition models graded by VC dimension. Three variants:
//  - the full partition lattice on n points (never materialized);
//  - the feature lattice: partitions induced by the feature subsets of a
//    domain with binary feature vectors;
//  - a restriction of another space to the nodes satisfying a predicate.
// Materialized variants store their Hasse diagram (covers within the space).
class LearningSpace {
public:
    enum class Kind { full_partition_lattice, feature_lattice, restricted };

    static LearningSpace full_partition_lattice(std::size_t n);
    static LearningSpace feature_lattice(const FiniteDomain& domain);
    static LearningSpace restricted(const LearningSpace& base, const std::function<bool(const Partition&)>& keep);
    // The nodes with at most two blocks; 2^(n-1) nodes.
    static LearningSpace two_block(std::size_t n);
    // Explicit node list over n points; duplicates are merged.
    static LearningSpace from_nodes(std::size_t n, std::vector<Partition> nodes);

    Kind kind() const { return kind_; }
    std::size_t domain_size() const { return n_; }
    bool contains(const Partition& node) const;

    // Number of nodes; Bell(n) for the full lattice.
    BigInt node_count() const;

    // Sorted canonical node list; null for the full lattice.
    const std::vector<Partition>* members() const;

    // Feature lattice only: the smallest feature subset inducing the node.
    std::optional<FeatureSet> feature_set(const Partition& node) const;
    std::size_t feature_width() const { return feature_width_; }

    friend std::vector<Partition> neighbors(const LearningSpace& space, const Partition& node, Direction dir);

private:
    struct Graph {
        std::vector<Partition> nodes;
        std::unordered_map<Partition, std::size_t, PartitionHash> index;
        std::vector<std::vector<std::size_t>> up, down;
        std::vector<FeatureSet> features;
    };

    LearningSpace(Kind kind, std::size_t n) : kind_(kind), n_(n) {}
    static std::shared_ptr<const Graph> build_graph(std::vector<Partition> nodes, std::vector<FeatureSet> features);
    std::size_t index_of(const Partition& node) const;

    Kind kind_;
    std::size_t n_;
    std::size_t feature_width_ = 0;
    std::shared_ptr<const Graph> graph_;
};

// Immediate neighbors inside the space (distance 1 on its Hasse diagram), in
// canonical order. Throws std::invalid_argument if node is not in the space.
std::vector<Partition> neighbors(const LearningSpace& space, const Partition& node, Direction dir);
// Up- and down-neighbors together, down first.
std::vector<Partition> all_neighbors(const LearningSpace& space, const Partition& node);

// True iff upper is an immediate up-neighbor of lower in the space.
bool covers(const LearningSpace& space, const Partition& lower, const Partition& upper);

// Shortest path in the undirected Hasse graph, nullopt if unreachable.
std::optional<std::size_t> hasse_distance(const LearningSpace& space, const Partition& a, const Partition& b);

// Resumable canonical-order iteration over the nodes of a space. The space
// must outlive the cursor.
class NodeCursor {
public:
    explicit NodeCursor(const LearningSpace& space);
    std::optional<Partition> next();

private:
    const std::vector<Partition>* members_ = nullptr;
    std::size_t index_ = 0;
    std::optional<PartitionEnumerator> enumerator_;
};

// Visits each node once in canonical order; stops when visit returns false.
void enumerate_nodes(const LearningSpace& space, const std::function<bool(const Partition&)>& visit);
std::vector<Partition> all_nodes(const LearningSpace& space);

std::size_t vc_dim(const LearningSpace& space, const Partition& node);

BigInt bell_number(std::size_t n);

// Points agreeing on every feature of A share a block; A = {} gives {X}.
// Throws if the domain has no feature vectors or A names a missing feature.
Partition feature_set_to_partition(const FiniteDomain& domain, const FeatureSet& features);

}  // namespace ucurve

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ucurve {

// A set partition of the points {0, ..., n-1}, stored as a restricted growth
// string: block_of(i) is the rank of i's block when blocks are ordered by
// their least element. The encoding is unique, so equality is encoding
// equality. As a Learning Space node, the partition stands for the model of
// all hypotheses constant on each block; its VC dimension is block_count().
class Partition {
public:
    // The one-point partition; placeholder for default-initialized fields.
    Partition() : rgs_{0}, blocks_(1) {}

    // Canonicalizes an arbitrary block labeling (equal labels = same block).
    template <typename T>
    static Partition from_labels(std::span<const T> labels) {
        std::vector<std::uint32_t> raw(labels.begin(), labels.end());
        return Partition(canonicalize(raw));
    }
    static Partition from_labels(const std::vector<std::uint32_t>& labels) {
        return Partition(canonicalize(labels));
    }
    static Partition from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks);

    // The least element {X} and the greatest element (all singletons).
    static Partition coarsest(std::size_t n);
    static Partition finest(std::size_t n);

    // Parses the text encoding "1,2|3|4" (1-based points). The block and
    // element order in the text is free; the result is canonical.
    static Partition parse(std::string_view text, std::size_t n);
    // As above, inferring n as the largest point mentioned.
    static Partition parse(std::string_view text);

    std::size_t size() const { return rgs_.size(); }
    std::size_t block_count() const { return blocks_; }
    std::uint32_t block_of(std::size_t point) const { return rgs_.at(point); }
    const std::vector<std::uint32_t>& growth_string() const { return rgs_; }
    std::vector<std::vector<std::size_t>> blocks() const;

    // "1,2|3|4": blocks by least element, elements ascending, 1-based.
    std::string encode() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    // Canonical order: fewer blocks first, then lexicographic growth string.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

private:
    explicit Partition(std::vector<std::uint32_t> rgs);
    static std::vector<std::uint32_t> canonicalize(const std::vector<std::uint32_t>& labels);

    std::vector<std::uint32_t> rgs_;
    std::size_t blocks_ = 0;

    friend class PartitionEnumerator;
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const noexcept;
};

// p1 <= p2 iff p2 refines p1 (every block of p2 lies inside a block of p1),
// i.e. the model of p1 is contained in the model of p2.
bool leq(const Partition& p1, const Partition& p2);
bool comparable(const Partition& p1, const Partition& p2);

// Finest common coarsening (greatest lower bound).
Partition meet(const Partition& p1, const Partition& p2);
// Coarsest common refinement (least upper bound).
Partition join(const Partition& p1, const Partition& p2);

// All refinements that split exactly one block in two, in canonical order.
std::vector<Partition> split_neighbors(const Partition& p);
// All coarsenings that merge exactly two blocks, in canonical order.
std::vector<Partition> merge_neighbors(const Partition& p);

// Resumable enumeration of partitions of n points in canonical order:
// by block count, then lexicographic growth string.
class PartitionEnumerator {
public:
    // Every partition of n points.
    explicit PartitionEnumerator(std::size_t n);
    // Only the partitions with exactly k blocks.
    PartitionEnumerator(std::size_t n, std::size_t k);

    std::optional<Partition> next();

private:
    void fill_tail(std::size_t pos, std::uint32_t top);
    bool advance();

    std::size_t n_, k_, last_k_;
    std::vector<std::uint32_t> a_;
    bool started_ = false;
    bool done_ = false;
};

// Visits every partition of n points with exactly k blocks in lexicographic
// growth-string order; the visitor returns false to stop early. Returns
// false if stopped.
bool for_each_partition(std::size_t n, std::size_t k, const std::function<bool(const Partition&)>& visit);
// Every partition of n points in canonical order.
bool for_each_partition(std::size_t n, const std::function<bool(const Partition&)>& visit);

}  // namespace ucurve

template <>
struct std::hash<ucurve::Partition> : ucurve::PartitionHash {};

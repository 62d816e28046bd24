#include "ucurve/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace ucurve {

Partition::Partition(std::vector<std::uint32_t> rgs) : rgs_(std::move(rgs)) {
    if (rgs_.empty()) throw std::invalid_argument("partition of an empty domain");
    blocks_ = static_cast<std::size_t>(*std::max_element(rgs_.begin(), rgs_.end())) + 1;
}

std::vector<std::uint32_t> Partition::canonicalize(const std::vector<std::uint32_t>& labels) {
    std::vector<std::uint32_t> out(labels.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;  // (raw label, rank)
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& s) { return s.first == labels[i]; });
        if (it == seen.end()) {
            seen.emplace_back(labels[i], static_cast<std::uint32_t>(seen.size()));
            out[i] = seen.back().second;
        } else {
            out[i] = it->second;
        }
    }
    return out;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks) {
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> labels(n, unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw std::invalid_argument("partition blocks must be nonempty");
        for (auto x : blocks[b]) {
            if (x >= n) throw std::invalid_argument("block element outside the domain");
            if (labels[x] != unset) throw std::invalid_argument("blocks overlap");
            labels[x] = static_cast<std::uint32_t>(b);
        }
    }
    if (std::find(labels.begin(), labels.end(), unset) != labels.end()) {
        throw std::invalid_argument("blocks do not cover the domain");
    }
    return from_labels(labels);
}

Partition Partition::coarsest(std::size_t n) {
    return Partition(std::vector<std::uint32_t>(n, 0));
}

Partition Partition::finest(std::size_t n) {
    std::vector<std::uint32_t> rgs(n);
    std::iota(rgs.begin(), rgs.end(), 0U);
    return Partition(std::move(rgs));
}

namespace {

std::vector<std::vector<std::size_t>> parse_blocks(std::string_view text) {
    std::vector<std::vector<std::size_t>> blocks;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t bar = text.find('|', start);
        std::string_view block_text = text.substr(start, bar == std::string_view::npos ? text.npos : bar - start);
        std::vector<std::size_t> block;
        std::size_t pos = 0;
        while (pos <= block_text.size()) {
            std::size_t comma = block_text.find(',', pos);
            std::string_view item = block_text.substr(pos, comma == std::string_view::npos ? block_text.npos : comma - pos);
            while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
            while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
            std::size_t value = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
            if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || value == 0) {
                throw std::invalid_argument("malformed partition encoding '" + std::string(text) + "'");
            }
            block.push_back(value - 1);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        blocks.push_back(std::move(block));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return blocks;
}

}  // namespace

Partition Partition::parse(std::string_view text, std::size_t n) {
    return from_blocks(n, parse_blocks(text));
}

Partition Partition::parse(std::string_view text) {
    auto blocks = parse_blocks(text);
    std::size_t n = 0;
    for (const auto& b : blocks) {
        for (auto x : b) n = std::max(n, x + 1);
    }
    return from_blocks(n, blocks);
}

std::vector<std::vector<std::size_t>> Partition::blocks() const {
    std::vector<std::vector<std::size_t>> out(blocks_);
    for (std::size_t i = 0; i < rgs_.size(); ++i) out[rgs_[i]].push_back(i);
    return out;
}

std::string Partition::encode() const {
    std::string out;
    bool first_block = true;
    for (const auto& block : blocks()) {
        if (!first_block) out.push_back('|');
        first_block = false;
        bool first = true;
        for (auto x : block) {
            if (!first) out.push_back(',');
            first = false;
            out += std::to_string(x + 1);
        }
    }
    return out;
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.blocks_ <=> b.blocks_; c != 0) return c;
    if (auto c = a.rgs_.size() <=> b.rgs_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.rgs_.begin(), a.rgs_.end(), b.rgs_.begin(), b.rgs_.end());
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : p.growth_string()) {
        h ^= v + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

namespace {

void require_same_domain(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw std::invalid_argument("partitions over different domains");
}

}  // namespace

bool leq(const Partition& p1, const Partition& p2) {
    require_same_domain(p1, p2);
    if (p1.block_count() > p2.block_count()) return false;
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    // Each block of p2 must map into a single block of p1.
    std::vector<std::uint32_t> image(p2.block_count(), unset);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        auto& slot = image[p2.block_of(i)];
        if (slot == unset) {
            slot = p1.block_of(i);
        } else if (slot != p1.block_of(i)) {
            return false;
        }
    }
    return true;
}

bool comparable(const Partition& p1, const Partition& p2) {
    return leq(p1, p2) || leq(p2, p1);
}

Partition meet(const Partition& p1, const Partition& p2) {
    require_same_domain(p1, p2);
    // Union-find over points: points sharing a block in either partition merge.
    const std::size_t n = p1.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> first1(p1.block_count(), unset), first2(p2.block_count(), unset);
    for (std::size_t i = 0; i < n; ++i) {
        auto& f1 = first1[p1.block_of(i)];
        if (f1 == unset) f1 = i; else unite(f1, i);
        auto& f2 = first2[p2.block_of(i)];
        if (f2 == unset) f2 = i; else unite(f2, i);
    }
    std::vector<std::uint32_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::uint32_t>(find(i));
    return Partition::from_labels(labels);
}

Partition join(const Partition& p1, const Partition& p2) {
    require_same_domain(p1, p2);
    const std::size_t n = p1.size();
    std::vector<std::uint32_t> labels(n);
    const auto width = static_cast<std::uint32_t>(p2.block_count());
    for (std::size_t i = 0; i < n; ++i) labels[i] = p1.block_of(i) * width + p2.block_of(i);
    return Partition::from_labels(labels);
}

std::vector<Partition> split_neighbors(const Partition& p) {
    std::vector<Partition> out;
    const auto fresh = static_cast<std::uint32_t>(p.block_count());
    for (const auto& block : p.blocks()) {
        const std::size_t s = block.size();
        if (s < 2 || s > 63) {
            if (s > 63) throw std::length_error("block too large to enumerate splits");
            continue;
        }
        // The least element stays; every nonempty subset of the rest moves out.
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (s - 1)); ++mask) {
            std::vector<std::uint32_t> labels = p.growth_string();
            for (std::size_t j = 1; j < s; ++j) {
                if ((mask >> (j - 1)) & 1U) labels[block[j]] = fresh;
            }
            out.push_back(Partition::from_labels(labels));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Partition> merge_neighbors(const Partition& p) {
    std::vector<Partition> out;
    const auto k = static_cast<std::uint32_t>(p.block_count());
    for (std::uint32_t a = 0; a < k; ++a) {
        for (std::uint32_t b = a + 1; b < k; ++b) {
            std::vector<std::uint32_t> labels = p.growth_string();
            for (auto& l : labels) {
                if (l == b) l = a;
            }
            out.push_back(Partition::from_labels(labels));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PartitionEnumerator::PartitionEnumerator(std::size_t n, std::size_t k) : n_(n), k_(k), last_k_(k) {
    if (n == 0) throw std::invalid_argument("partition of an empty domain");
    if (k == 0 || k > n) done_ = true;
}

PartitionEnumerator::PartitionEnumerator(std::size_t n) : n_(n), k_(1), last_k_(n) {
    if (n == 0) throw std::invalid_argument("partition of an empty domain");
}

void PartitionEnumerator::fill_tail(std::size_t pos, std::uint32_t top) {
    // Lexicographically smallest completion with exactly k_ blocks: zeros,
    // then the missing block labels in increasing order at the end.
    const std::size_t missing = (k_ - 1) - top;
    for (std::size_t i = pos; i < n_; ++i) a_[i] = 0;
    for (std::size_t j = 0; j < missing; ++j) a_[n_ - missing + j] = top + 1 + static_cast<std::uint32_t>(j);
}

bool PartitionEnumerator::advance() {
    std::vector<std::uint32_t> prefix_max(n_);
    prefix_max[0] = a_[0];
    for (std::size_t i = 1; i < n_; ++i) prefix_max[i] = std::max(prefix_max[i - 1], a_[i]);

    // Rightmost position that can be incremented while keeping a valid completion.
    for (std::size_t i = n_ - 1; i >= 1; --i) {
        const std::uint32_t before = prefix_max[i - 1];
        const std::uint32_t next = a_[i] + 1;
        if (next > before + 1 || next > k_ - 1) continue;
        const std::uint32_t top = std::max(before, next);
        if ((k_ - 1) - top <= n_ - 1 - i) {
            a_[i] = next;
            fill_tail(i + 1, top);
            return true;
        }
    }
    return false;
}

std::optional<Partition> PartitionEnumerator::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        a_.assign(n_, 0);
        fill_tail(1, 0);
        return Partition(a_);
    }
    if (advance()) return Partition(a_);
    if (k_ == last_k_) {
        done_ = true;
        return std::nullopt;
    }
    ++k_;
    a_.assign(n_, 0);
    fill_tail(1, 0);
    return Partition(a_);
}

bool for_each_partition(std::size_t n, std::size_t k, const std::function<bool(const Partition&)>& visit) {
    PartitionEnumerator it(n, k);
    while (auto p = it.next()) {
        if (!visit(*p)) return false;
    }
    return true;
}

bool for_each_partition(std::size_t n, const std::function<bool(const Partition&)>& visit) {
    PartitionEnumerator it(n);
    while (auto p = it.next()) {
        if (!visit(*p)) return false;
    }
    return true;
}

}  // namespace ucurve

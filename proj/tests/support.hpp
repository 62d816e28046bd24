#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ucurve/finite_domain.hpp"
#include "ucurve/learning_space.hpp"
#include "ucurve/partition.hpp"
#include "ucurve/rational.hpp"

namespace testsupport {

using namespace ucurve;

inline std::string fixture(const std::string& name) {
    return std::string(UCURVE_FIXTURE_DIR) + "/" + name;
}

inline Rational q(const char* text) {
    return parse_rational(text);
}

// Random joint table with small integer weights; some cells may be empty.
inline JointDistribution random_distribution(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint64_t> weights(2 * n);
    std::uint64_t total = 0;
    for (auto& w : weights) total += (w = uniform_below(rng, 16));
    if (total == 0) weights[0] = total = 1;
    std::vector<Rational> table;
    for (auto w : weights) table.push_back(Rational(w, total));
    return JointDistribution(n, table);
}

inline Sample random_sample(std::size_t n, std::size_t size, std::mt19937_64& rng) {
    return sample_from(random_distribution(n, rng), size, rng());
}

// Independent refinement test on explicit blocks: every block of fine lies
// inside one block of coarse.
inline bool refines(const Partition& fine, const Partition& coarse) {
    for (const auto& block : fine.blocks()) {
        std::set<std::uint32_t> owners;
        for (auto x : block) owners.insert(coarse.block_of(x));
        if (owners.size() != 1) return false;
    }
    return true;
}

// Every partition of n points via all n^n labelings.
inline std::set<Partition> brute_partitions(std::size_t n) {
    std::set<Partition> out;
    std::vector<std::uint32_t> labels(n, 0);
    while (true) {
        out.insert(Partition::from_labels(labels));
        std::size_t i = 0;
        while (i < n && ++labels[i] == n) labels[i++] = 0;
        if (i == n) break;
    }
    return out;
}

// Partition of {0,1}^4 induced by the features in the string ("13" = {1,3}).
inline Partition b4_node(const std::string& features) {
    FeatureSet s;
    for (char c : features) s.insert(static_cast<std::size_t>(c - '0'));
    return feature_set_to_partition(FiniteDomain::boolean_cube(4), s);
}

// Node costs of the published B4 example.
inline std::map<Partition, Rational> fig5_costs() {
    const std::vector<std::pair<std::string, std::string>> rows{
        {"", "0.07"},     {"1", "0.05"},     {"2", "0.062"},    {"3", "0.057"},   {"4", "0.051"},  {"12", "0.060"},
        {"13", "0.042"},  {"14", "0.053"},   {"23", "0.041"},   {"24", "0.048"},  {"34", "0.054"}, {"123", "0.045"},
        {"124", "0.047"}, {"134", "0.048"},  {"234", "0.053"},  {"1234", "0.055"}};
    std::map<Partition, Rational> out;
    for (const auto& [f, c] : rows) out[b4_node(f)] = parse_rational(c);
    return out;
}

// The published train/validation count tables, train first, on points
// a1, a2, a3, b = 0..3.
inline Sample appendix_b_sample() {
    const std::uint64_t train[4][2] = {{18, 7}, {2, 11}, {1, 11}, {20, 30}};
    const std::uint64_t valid[4][2] = {{20, 5}, {1, 12}, {2, 10}, {25, 25}};
    std::vector<Observation> obs;
    for (const auto* table : {train, valid}) {
        for (PointIndex x = 0; x < 4; ++x) {
            for (Label y = 0; y < 2; ++y) {
                for (std::uint64_t c = 0; c < table[x][y]; ++c) obs.push_back({x, y});
            }
        }
    }
    return Sample(4, obs);
}

}  // namespace testsupport

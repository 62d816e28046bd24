#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucurve/finite_domain.hpp"
#include "ucurve/partition.hpp"
#include "ucurve/rational.hpp"

namespace ucurve::io {

// Malformed input file (exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input exceeds a configured size cap (exit code 3).
class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dataset {
    std::vector<std::string> feature_names;
    FiniteDomain domain;  // distinct feature rows, lexicographic
    Sample sample;        // observations in file order
};

// Header row, then rows of d binary features and a final binary label.
// Throws InputError with row/column positions, CapError when the number of
// distinct feature rows exceeds max_points.
Dataset read_csv(std::istream& in, std::size_t max_points);
Dataset load_csv(const std::filesystem::path& path, std::size_t max_points);

struct CountRow {
    FeatureRow features;
    Label label = 0;
    std::uint64_t count = 0;
};

// Observation counts per (distinct row, label), in domain order.
std::vector<CountRow> count_table(const Dataset& data);
void write_count_table(std::ostream& out, const Dataset& data);

// {"1,2|3|4": "0.33", ...}; values are decimal or p/q strings (or JSON
// numbers, read through their shortest decimal form). n = 0 infers the
// domain size from the largest point mentioned.
std::map<Partition, Rational> parse_costs(const std::string& json_text, std::size_t n = 0);
std::map<Partition, Rational> load_costs(const std::filesystem::path& path, std::size_t n = 0);

struct DistributionFile {
    FiniteDomain domain;
    JointDistribution dist;
};

// {"points": [...], "prob": {"point,label": "p/q", ...}}; missing cells are 0.
// Points named by equal-length bit strings carry those bits as features.
DistributionFile parse_distribution(const std::string& json_text);
DistributionFile load_distribution(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace ucurve::io

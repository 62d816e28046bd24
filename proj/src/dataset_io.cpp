#include "ucurve/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace ucurve::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool blank(std::string_view line) {
    return trim(line).empty();
}

}  // namespace

Dataset read_csv(std::istream& in, std::size_t max_points) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) {
            have_header = true;
            break;
        }
    }
    if (!have_header) throw InputError("empty CSV: expected a header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<std::string> header;
    for (auto cell : split_commas(line)) header.emplace_back(cell);
    if (header.size() < 2) {
        throw InputError("line " + std::to_string(line_no) + ": header needs at least one feature column and a label column");
    }
    const std::size_t d = header.size() - 1;
    std::vector<std::string> feature_names;
    for (std::size_t j = 0; j < d; ++j) feature_names.push_back(header[j]);

    std::vector<FeatureRow> rows;
    std::vector<Label> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto cells = split_commas(line);
        if (cells.size() != header.size()) {
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                             " columns, found " + std::to_string(cells.size()));
        }
        FeatureRow row(d);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (cells[j] != "0" && cells[j] != "1") {
                throw InputError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) + " (" +
                                 header[j] + "): expected 0 or 1, found '" + std::string(cells[j]) + "'");
            }
            const auto bit = static_cast<std::uint8_t>(cells[j] == "1");
            if (j < d) {
                row[j] = bit;
            } else {
                labels.push_back(bit);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("CSV has a header but no data rows");

    std::vector<FeatureRow> distinct = rows;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() > max_points) {
        throw CapError(std::to_string(distinct.size()) + " distinct feature rows exceed the cap of " +
                       std::to_string(max_points));
    }
    std::vector<Observation> pairs;
    pairs.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto pos = std::lower_bound(distinct.begin(), distinct.end(), rows[i]) - distinct.begin();
        pairs.push_back({static_cast<PointIndex>(pos), labels[i]});
    }
    const std::size_t n = distinct.size();
    return Dataset{std::move(feature_names), FiniteDomain::from_features(std::move(distinct)),
                   Sample(n, std::move(pairs))};
}

Dataset load_csv(const std::filesystem::path& path, std::size_t max_points) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_csv(in, max_points);
}

std::vector<CountRow> count_table(const Dataset& data) {
    const EmpiricalMeasure m = empirical_measure(data.sample);
    std::vector<CountRow> out;
    for (PointIndex x = 0; x < data.domain.size(); ++x) {
        for (Label y = 0; y < 2; ++y) {
            if (m.count(x, y) > 0) out.push_back({data.domain.features(x), y, m.count(x, y)});
        }
    }
    return out;
}

void write_count_table(std::ostream& out, const Dataset& data) {
    for (const auto& name : data.feature_names) out << name << ',';
    out << "label,count\n";
    for (const auto& row : count_table(data)) {
        for (auto bit : row.features) out << static_cast<int>(bit) << ',';
        out << static_cast<int>(row.label) << ',' << row.count << '\n';
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(what + ": " + e.what());
    }
}

Rational rational_value(const nlohmann::json& v, const std::string& key) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number()) return parse_rational(v.dump());
    } catch (const std::invalid_argument& e) {
        throw InputError("value of '" + key + "': " + e.what());
    }
    throw InputError("value of '" + key + "' must be a rational string");
}

}  // namespace

std::map<Partition, Rational> parse_costs(const std::string& json_text, std::size_t n) {
    const auto j = parse_json(json_text, "costs");
    if (!j.is_object() || j.empty()) throw InputError("costs: expected a nonempty object of node -> cost");
    std::vector<std::pair<Partition, Rational>> entries;
    std::size_t inferred = 0;
    for (const auto& [key, value] : j.items()) {
        Partition p;
        try {
            p = Partition::parse(key);
        } catch (const std::invalid_argument& e) {
            throw InputError("costs: unknown node encoding '" + key + "': " + e.what());
        }
        inferred = std::max(inferred, p.size());
        entries.emplace_back(std::move(p), rational_value(value, key));
    }
    const std::size_t size = n == 0 ? inferred : n;
    std::map<Partition, Rational> out;
    for (auto& [p, c] : entries) {
        Partition node = p;
        if (p.size() != size) {
            // Re-parse against the full domain so every key covers all points.
            try {
                node = Partition::parse(p.encode(), size);
            } catch (const std::invalid_argument&) {
                throw InputError("costs: node '" + p.encode() + "' does not cover the " + std::to_string(size) +
                                 "-point domain");
            }
        }
        if (!out.emplace(std::move(node), std::move(c)).second) {
            throw InputError("costs: node '" + p.encode() + "' listed twice");
        }
    }
    return out;
}

std::map<Partition, Rational> load_costs(const std::filesystem::path& path, std::size_t n) {
    return parse_costs(read_file(path), n);
}

DistributionFile parse_distribution(const std::string& json_text) {
    const auto j = parse_json(json_text, "distribution");
    if (!j.is_object() || !j.contains("points") || !j.contains("prob")) {
        throw InputError("distribution: expected {\"points\": [...], \"prob\": {...}}");
    }
    if (!j["points"].is_array() || j["points"].empty()) throw InputError("distribution: points must be a nonempty array");
    std::vector<std::string> names;
    for (const auto& p : j["points"]) {
        if (!p.is_string()) throw InputError("distribution: point identifiers must be strings");
        names.push_back(p.get<std::string>());
    }
    bool bits = true;
    for (const auto& name : names) {
        bits = bits && !name.empty() && name.size() == names.front().size() &&
               name.find_first_not_of("01") == std::string::npos;
    }
    FiniteDomain domain = [&] {
        try {
            if (!bits) return FiniteDomain(names);
            std::vector<FeatureRow> rows;
            for (const auto& name : names) {
                FeatureRow row;
                for (char c : name) row.push_back(c == '1');
                rows.push_back(std::move(row));
            }
            return FiniteDomain::from_features(std::move(rows));
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("distribution: ") + e.what());
        }
    }();

    if (!j["prob"].is_object()) throw InputError("distribution: prob must be an object");
    std::vector<Rational> table(2 * domain.size(), Rational(0));
    std::vector<bool> seen(table.size(), false);
    for (const auto& [key, value] : j["prob"].items()) {
        const auto comma = key.rfind(',');
        if (comma == std::string::npos) throw InputError("distribution: key '" + key + "' is not \"point,label\"");
        const auto point = domain.find(key.substr(0, comma));
        const std::string label = key.substr(comma + 1);
        if (!point) throw InputError("distribution: unknown point in key '" + key + "'");
        if (label != "0" && label != "1") throw InputError("distribution: label in key '" + key + "' must be 0 or 1");
        const std::size_t cell = 2 * *point + (label == "1");
        if (seen[cell]) throw InputError("distribution: key '" + key + "' listed twice");
        seen[cell] = true;
        table[cell] = rational_value(value, key);
    }
    try {
        JointDistribution dist(domain.size(), std::move(table));
        return DistributionFile{std::move(domain), std::move(dist)};
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("distribution: ") + e.what());
    }
}

DistributionFile load_distribution(const std::filesystem::path& path) {
    return parse_distribution(read_file(path));
}

}  // namespace ucurve::io

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ucurve/analysis.hpp"
#include "ucurve/finite_domain.hpp"
#include "ucurve/learning_space.hpp"
#include "ucurve/search.hpp"

namespace ucurve::report {

using Json = nlohmann::ordered_json;

// {"exact": "p/q", "decimal": 0.33}
Json rational(const Rational& value);
Json node(const Partition& p, const LearningSpace& space);
Json node_value(const NodeValue& nv, const LearningSpace& space);
Json hypothesis(const Hypothesis& h, const FiniteDomain& domain);

Json search(const SearchReport& r, const LearningSpace& space, const FiniteDomain& domain, bool include_trace = true);
Json target(const TargetSummary& t, const LearningSpace& space, const FiniteDomain& domain);
Json errors(const ErrorQuadruple& e);
Json ucurve_check(const UCurveCheck& c, UCurveStrength strength);
Json convexity_check(const ConvexityCheck& c);
Json stats(const SpaceStats& s);
Json consistency_row(const ConsistencyRow& row);

// Hasse subgraph of the visited nodes; strong minima double-circled, the
// selected node filled.
std::string dot(const SearchReport& r, const LearningSpace& space);

// Two-space indented JSON followed by a newline.
std::string render(const Json& j);

}  // namespace ucurve::report

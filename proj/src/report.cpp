#include "ucurve/report.hpp"

#include <algorithm>
#include <sstream>

namespace ucurve::report {

Json rational(const Rational& value) {
    Json j;
    j["exact"] = to_fraction_string(value);
    j["decimal"] = to_double(value);
    return j;
}

Json node(const Partition& p, const LearningSpace& space) {
    Json j;
    j["node"] = p.encode();
    j["vc_dim"] = p.block_count();
    if (auto features = space.feature_set(p)) j["features"] = std::vector<std::size_t>(features->begin(), features->end());
    return j;
}

Json node_value(const NodeValue& nv, const LearningSpace& space) {
    Json j = node(nv.node, space);
    j["estimate"] = rational(nv.value);
    return j;
}

Json hypothesis(const Hypothesis& h, const FiniteDomain& domain) {
    Json rows = Json::array();
    for (PointIndex x = 0; x < h.size(); ++x) {
        Json row;
        row["point"] = domain.name(x);
        row["label"] = static_cast<int>(h(x));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

Json node_values(const std::vector<NodeValue>& list, const LearningSpace& space) {
    Json out = Json::array();
    for (const auto& nv : list) out.push_back(node_value(nv, space));
    return out;
}

}  // namespace

Json search(const SearchReport& r, const LearningSpace& space, const FiniteDomain& domain, bool include_trace) {
    Json j;
    Json selected = node(r.selected, space);
    selected["estimate"] = rational(r.selected_value);
    j["selected"] = std::move(selected);
    if (r.final_hypothesis) j["final_hypothesis"] = hypothesis(*r.final_hypothesis, domain);
    j["global_minima"] = node_values(r.global_minima, space);
    j["strong_local_minima"] = node_values(r.strong_local_minima, space);
    Json statistics;
    statistics["nodes_visited"] = r.nodes_visited;
    statistics["estimates_computed"] = r.estimates_computed;
    statistics["exhaustively_checked"] = r.exhaustively_checked.size();
    statistics["fallback_used"] = r.fallback_used;
    statistics["suboptimal"] = r.suboptimal;
    j["statistics"] = std::move(statistics);
    if (include_trace) {
        Json trace = Json::array();
        for (const auto& step : r.trace) {
            Json s;
            s["event"] = to_string(step.event);
            s["node"] = step.node.encode();
            if (step.value) s["estimate"] = rational(*step.value);
            trace.push_back(std::move(s));
        }
        j["trace"] = std::move(trace);
    }
    return j;
}

Json target(const TargetSummary& t, const LearningSpace& space, const FiniteDomain& domain) {
    Json j;
    j["target_model"] = node(t.target_node, space);
    j["target_error"] = rational(t.target_error);
    if (t.mde) {
        j["mde"] = rational(*t.mde);
    } else {
        j["mde"] = "inf";
    }
    j["target_hypothesis"] = hypothesis(t.target_hypothesis, domain);
    return j;
}

Json errors(const ErrorQuadruple& e) {
    Json j;
    j["type_i"] = rational(e.type_i);
    j["type_ii"] = rational(e.type_ii);
    j["type_iii"] = rational(e.type_iii);
    j["type_iv"] = rational(e.type_iv);
    return j;
}

namespace {

Json chain_json(const std::vector<Partition>& chain) {
    Json out = Json::array();
    for (const auto& p : chain) out.push_back(p.encode());
    return out;
}

}  // namespace

Json ucurve_check(const UCurveCheck& c, UCurveStrength strength) {
    Json j;
    j["property"] = strength == UCurveStrength::weak ? "ucurve-weak" : "ucurve-strong";
    j["holds"] = c.holds;
    j["chains_checked"] = c.chains_checked;
    j["violation_count"] = c.violation_count;
    Json list = Json::array();
    for (const auto& v : c.violations) {
        Json item;
        item["minimum"] = v.minimum.encode();
        item["cheaper"] = v.cheaper.encode();
        item["chain"] = chain_json(v.chain);
        list.push_back(std::move(item));
    }
    j["violations"] = std::move(list);
    return j;
}

Json convexity_check(const ConvexityCheck& c) {
    Json j;
    j["property"] = "convexity";
    j["holds"] = c.holds;
    j["pairs_checked"] = c.pairs_checked;
    Json list = Json::array();
    for (const auto& v : c.violations) {
        Json item;
        item["meet"] = v.low.encode();
        item["left"] = v.left.encode();
        item["right"] = v.right.encode();
        item["join"] = v.high.encode();
        item["join_cost"] = rational(v.join_cost);
        item["bound"] = rational(v.bound);
        list.push_back(std::move(item));
    }
    j["violations"] = std::move(list);
    j["ucurve_compatible"] = c.compatible;
    if (c.incompatibility) {
        j["incompatibility"] = Json{{"model", c.incompatibility->first.encode()},
                                    {"witness", c.incompatibility->second.encode()}};
    }
    return j;
}

Json stats(const SpaceStats& s) {
    Json j;
    j["property"] = "stats";
    j["node_count"] = s.node_count.str();
    j["vc_dim_max"] = s.vc_dim_max;
    j["maximal_count"] = s.maximal_count.str();
    return j;
}

Json consistency_row(const ConsistencyRow& row) {
    Json j;
    j["N"] = row.sample_size;
    j["reps"] = row.reps;
    j["fraction_equivalent"] = rational(row.fraction_equivalent);
    j["fraction_same_error"] = rational(row.fraction_same_error);
    j["mean_type_iii"] = rational(row.mean_type_iii);
    return j;
}

namespace {

std::string quote(const std::string& s) {
    return "\"" + s + "\"";
}

}  // namespace

std::string dot(const SearchReport& r, const LearningSpace& space) {
    std::vector<Partition> nodes;
    std::map<Partition, Rational> value;
    for (const auto& step : r.trace) {
        if (step.event == TraceEvent::pruned || step.event == TraceEvent::budget_exhausted) continue;
        nodes.push_back(step.node);
        if (step.value) value[step.node] = *step.value;
    }
    for (const auto& nv : r.global_minima) {
        nodes.push_back(nv.node);
        value[nv.node] = nv.value;
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    auto is_strong = [&](const Partition& p) {
        return std::any_of(r.strong_local_minima.begin(), r.strong_local_minima.end(),
                           [&](const NodeValue& nv) { return nv.node == p; });
    };

    std::ostringstream out;
    out << "graph visited {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    for (const auto& p : nodes) {
        out << "  " << quote(p.encode()) << " [label=" << quote(p.encode() + "\\n" + to_fraction_string(value[p]));
        if (is_strong(p)) out << ", shape=doublecircle";
        if (p == r.selected) out << ", style=filled, fillcolor=lightgray";
        out << "];\n";
    }
    for (const auto& a : nodes) {
        for (const auto& b : nodes) {
            if (covers(space, a, b)) out << "  " << quote(a.encode()) << " -- " << quote(b.encode()) << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string render(const Json& j) {
    return j.dump(2) + "\n";
}

}  // namespace ucurve::report

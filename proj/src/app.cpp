#include "ucurve/app.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ucurve/analysis.hpp"
#include "ucurve/dataset_io.hpp"
#include "ucurve/report.hpp"
#include "ucurve/search.hpp"

namespace ucurve::cli {

namespace {

using report::Json;
using io::CapError;
using io::InputError;

struct Options {
    std::string space;  // "", partition, feature, l2
    std::string estimator = "holdout:1/2";
    std::string mode = "reuse";
    std::uint64_t seed = 0;
    std::size_t fallback = 0;
    std::string stochastic;
    std::string start = "coarsest";
    std::string order = "canonical";
    bool prune_worse = false;
    bool convexity_prune = false;
    std::string tie = "one";
    std::string out;
    std::string dot;
    std::size_t max_points = 9;
    std::size_t node_cap = 200000;
    std::string truth;

    std::string input;
    std::string costs;
    std::string data;
    std::string property = "ucurve-weak";
    std::size_t points = 0;
    std::size_t dims = 0;
    std::string sizes = "20,200,2000";
    std::size_t reps = 200;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw CLI::ValidationError(what, "expected a nonnegative integer, got '" + s + "'");
    }
    return std::stoull(s);
}

TieRule tie_rule(const Options& o) {
    return o.tie == "zero" ? TieRule::prefer_zero : TieRule::prefer_one;
}

EstimatorSpec estimator_spec(const Options& o) {
    const auto colon = o.estimator.find(':');
    const std::string kind = o.estimator.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : o.estimator.substr(colon + 1);
    if (kind == "kfold") return EstimatorSpec::kfold(parse_count(arg, "--estimator"), tie_rule(o));
    if (kind == "holdout") {
        if (arg.find_first_of("./") != std::string::npos) {
            Rational f;
            try {
                f = parse_rational(arg);
            } catch (const std::invalid_argument&) {
                throw CLI::ValidationError("--estimator", "bad holdout fraction '" + arg + "'");
            }
            if (f <= 0 || f >= 1) throw CLI::ValidationError("--estimator", "holdout fraction must lie in (0,1)");
            return EstimatorSpec::holdout_fraction(f, tie_rule(o));
        }
        return EstimatorSpec::holdout(parse_count(arg, "--estimator"), tie_rule(o));
    }
    throw CLI::ValidationError("--estimator", "expected holdout:V or kfold:K, got '" + o.estimator + "'");
}

SearchConfig search_config(const Options& o) {
    SearchConfig c;
    c.start_policy = o.start == "random" ? StartPolicy::seeded_random : StartPolicy::coarsest;
    c.seed = o.seed;
    c.exhaustive_fallback_threshold = o.fallback;
    c.prune_visited_worse_neighbors = o.prune_worse;
    c.convexity_prune = o.convexity_prune;
    c.neighbor_order = o.order == "cheapest" ? NeighborOrder::cheapest_first : NeighborOrder::canonical;
    if (!o.stochastic.empty()) {
        const auto parts = split(o.stochastic, ':');
        if (parts.size() != 2) throw CLI::ValidationError("--stochastic", "expected R:B");
        StochasticConfig s;
        s.restarts = parse_count(parts[0], "--stochastic");
        s.budget = parse_count(parts[1], "--stochastic");
        if (s.budget == 0) throw CLI::ValidationError("--stochastic", "budget must be positive");
        s.seed = o.seed;
        c.stochastic = s;
    }
    return c;
}

struct ModeSplit {
    FinalMode mode = FinalMode::reuse;
    Sample selection;
    std::optional<Sample> independent;
};

ModeSplit split_mode(const Options& o, const Sample& sample) {
    if (o.mode == "reuse") return {FinalMode::reuse, sample, std::nullopt};
    const auto colon = o.mode.find(':');
    if (o.mode.substr(0, colon) != "independent" || colon == std::string::npos) {
        throw CLI::ValidationError("--mode", "expected reuse or independent:FRAC");
    }
    Rational f;
    try {
        f = parse_rational(o.mode.substr(colon + 1));
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--mode", "bad fraction in '" + o.mode + "'");
    }
    if (f <= 0 || f >= 1) throw CLI::ValidationError("--mode", "fraction must lie in (0,1)");
    Rational scaled = f * sample.size();
    const auto m = static_cast<std::size_t>(BigInt(numerator(scaled) / denominator(scaled)));
    if (m == 0 || m >= sample.size()) throw InputError("independent split leaves an empty sample");
    const std::size_t cut = sample.size() - m;
    return {FinalMode::independent, sample.slice(0, cut), sample.slice(cut, sample.size())};
}

LearningSpace space_for_domain(const Options& o, const FiniteDomain& domain) {
    const std::string kind = o.space.empty() ? "partition" : o.space;
    if (kind == "partition") return LearningSpace::full_partition_lattice(domain.size());
    if (kind == "l2") return LearningSpace::two_block(domain.size());
    if (!domain.has_features()) throw InputError("the feature space needs points with feature vectors");
    return LearningSpace::feature_lattice(domain);
}

void require_node_cap(const LearningSpace& space, std::size_t cap) {
    if (space.node_count() > cap) {
        throw CapError("space has " + space.node_count().str() + " nodes, above the node cap of " + std::to_string(cap));
    }
}

std::string space_name(const LearningSpace& space) {
    switch (space.kind()) {
        case LearningSpace::Kind::full_partition_lattice: return "partition";
        case LearningSpace::Kind::feature_lattice: return "feature";
        case LearningSpace::Kind::restricted: return "restricted";
    }
    return "unknown";
}

Json space_json(const LearningSpace& space) {
    Json j;
    j["kind"] = space_name(space);
    j["points"] = space.domain_size();
    j["node_count"] = space.node_count().str();
    return j;
}

Json config_json(const Options& o) {
    Json j;
    j["space"] = o.space.empty() ? "auto" : o.space;
    j["estimator"] = o.estimator;
    j["mode"] = o.mode;
    j["seed"] = o.seed;
    j["fallback"] = o.fallback;
    j["stochastic"] = o.stochastic.empty() ? Json(nullptr) : Json(o.stochastic);
    j["start"] = o.start;
    j["order"] = o.order;
    j["prune_worse"] = o.prune_worse;
    j["convexity_prune"] = o.convexity_prune;
    j["tie"] = o.tie;
    j["max_points"] = o.max_points;
    j["node_cap"] = o.node_cap;
    return j;
}

Json domain_json(const FiniteDomain& domain) {
    Json j;
    j["size"] = domain.size();
    j["points"] = domain.names();
    return j;
}

// The ground-truth file reordered onto the dataset's domain.
JointDistribution truth_on(const FiniteDomain& domain, const std::string& path) {
    const auto file = io::load_distribution(path);
    if (file.domain.size() != domain.size()) throw InputError("truth distribution and dataset have different domains");
    std::vector<Rational> table(2 * domain.size());
    for (PointIndex x = 0; x < domain.size(); ++x) {
        const auto src = file.domain.find(domain.name(x));
        if (!src) throw InputError("truth distribution has no point '" + domain.name(x) + "'");
        table[2 * x] = file.dist.prob(*src, 0);
        table[2 * x + 1] = file.dist.prob(*src, 1);
    }
    return JointDistribution(domain.size(), std::move(table));
}

void emit(const Options& o, const Json& j, std::ostream& out) {
    const std::string text = report::render(j);
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

int cmd_select(const Options& o, bool oracle, std::ostream& out) {
    const io::Dataset data = io::load_csv(o.input, o.max_points);
    const LearningSpace space = space_for_domain(o, data.domain);
    if (oracle) require_node_cap(space, o.node_cap);
    const ModeSplit split = split_mode(o, data.sample);
    const EstimatorSpec spec = estimator_spec(o);
    const SearchConfig config = search_config(o);

    ModelEstimator costs(split.selection, spec);
    SearchReport result = oracle ? exhaustive_search(space, costs) : ucurve_search(space, costs, config);
    result.final_hypothesis =
        learn_final_hypothesis(result.selected, split.mode, split.selection, split.independent, spec.tie);

    Json j;
    j["command"] = oracle ? "oracle" : "select";
    j["input"] = o.input;
    j["config"] = config_json(o);
    j["domain"] = domain_json(data.domain);
    j["space"] = space_json(space);
    Json samples;
    samples["selection"] = split.selection.size();
    samples["independent"] = split.independent ? split.independent->size() : 0;
    j["samples"] = std::move(samples);
    j["search"] = report::search(result, space, data.domain, !oracle);
    if (oracle && space.node_count() <= 10000) {
        Json table = Json::array();
        for (const auto& nv : result.exhaustively_checked) table.push_back(report::node_value(nv, space));
        j["costs"] = std::move(table);
    }
    if (!o.truth.empty()) {
        require_node_cap(space, o.node_cap);
        const JointDistribution dist = truth_on(data.domain, o.truth);
        const TargetSummary target = target_model(space, dist, o.node_cap, spec.tie);
        const Sample& eval = split.mode == FinalMode::reuse ? split.selection : *split.independent;
        Json truth = report::target(target, space, data.domain);
        truth["selected_model_error"] = report::rational(target.model_errors.at(result.selected));
        truth["final_hypothesis_error"] = report::rational(true_loss(*result.final_hypothesis, dist));
        truth["errors"] = report::errors(estimation_errors(result, target, dist, eval));
        j["truth"] = std::move(truth);
    }
    emit(o, j, out);
    if (!o.dot.empty()) write_text(o.dot, report::dot(result, space));
    return exit_ok;
}

int cmd_check(const Options& o, std::ostream& out) {
    static const std::vector<std::string> properties{"ucurve-weak", "ucurve-strong", "convexity", "stats", "minima"};
    if (std::find(properties.begin(), properties.end(), o.property) == properties.end()) {
        throw CLI::ValidationError("--property", "unknown property '" + o.property + "'");
    }
    std::optional<LearningSpace> space;
    std::optional<FiniteDomain> domain;
    std::optional<CostTable> costs;
    Json source;

    if (!o.costs.empty()) {
        const std::size_t n = o.dims ? (std::size_t{1} << o.dims) : o.points;
        auto table = io::load_costs(o.costs, n);
        const std::size_t size = table.begin()->first.size();
        if (o.space.empty()) {
            std::vector<Partition> nodes;
            for (const auto& [p, c] : table) nodes.push_back(p);
            space = LearningSpace::from_nodes(size, std::move(nodes));
        } else if (o.space == "partition") {
            space = LearningSpace::full_partition_lattice(size);
        } else if (o.space == "l2") {
            space = LearningSpace::two_block(size);
        } else {
            if (o.dims == 0) throw CLI::ValidationError("--dims", "the feature space needs --dims with --costs");
            space = LearningSpace::feature_lattice(FiniteDomain::boolean_cube(o.dims));
        }
        require_node_cap(*space, o.node_cap);
        for (const auto& [p, c] : table) {
            if (!space->contains(p)) throw InputError("costs: node '" + p.encode() + "' is not in the space");
        }
        enumerate_nodes(*space, [&](const Partition& p) {
            if (!table.count(p)) throw InputError("costs: no cost for node '" + p.encode() + "'");
            return true;
        });
        costs = std::move(table);
        source["costs"] = o.costs;
    } else if (!o.data.empty()) {
        io::Dataset data = io::load_csv(o.data, o.max_points);
        space = space_for_domain(o, data.domain);
        require_node_cap(*space, o.node_cap);
        ModelEstimator estimator(data.sample, estimator_spec(o));
        costs = cost_table(*space, estimator, o.node_cap);
        domain = data.domain;
        source["data"] = o.data;
    } else {
        if (o.property != "stats") throw CLI::ValidationError("check", "--costs or --data is required");
        if (o.space == "feature") {
            if (o.dims == 0) throw CLI::ValidationError("--dims", "the feature space needs --dims");
            space = LearningSpace::feature_lattice(FiniteDomain::boolean_cube(o.dims));
        } else {
            if (o.points == 0) throw CLI::ValidationError("--points", "stats needs --points (or --costs/--data)");
            space = o.space == "l2" ? LearningSpace::two_block(o.points)
                                    : LearningSpace::full_partition_lattice(o.points);
        }
        require_node_cap(*space, o.node_cap);
    }

    Json j;
    j["command"] = "check";
    j["source"] = std::move(source);
    j["config"] = config_json(o);
    j["space"] = space_json(*space);
    if (o.property == "stats") {
        j["result"] = report::stats(space_stats(*space, o.node_cap));
    } else if (o.property == "convexity") {
        j["result"] = report::convexity_check(check_lattice_convexity(*costs, *space));
    } else if (o.property == "minima") {
        Json list = Json::array();
        for (const auto& [p, c] : *costs) {
            const MinimumClass mc = classify_minimum(*costs, *space, p);
            Json item = report::node(p, *space);
            item["cost"] = report::rational(c);
            item["strong_local"] = mc.strong_local;
            item["weak_local"] = mc.weak_local;
            item["global"] = mc.global;
            list.push_back(std::move(item));
        }
        j["result"] = Json{{"property", "minima"}, {"nodes", std::move(list)}};
    } else {
        const auto strength = o.property == "ucurve-weak" ? UCurveStrength::weak : UCurveStrength::strong;
        j["result"] = report::ucurve_check(check_ucurve(*costs, *space, strength), strength);
    }
    emit(o, j, out);
    return exit_ok;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const auto file = io::load_distribution(o.input);
    if (file.domain.size() > o.max_points) {
        throw CapError(std::to_string(file.domain.size()) + " points exceed the cap of " + std::to_string(o.max_points));
    }
    const LearningSpace space = space_for_domain(o, file.domain);
    require_node_cap(space, o.node_cap);
    std::vector<std::size_t> sizes;
    for (const auto& s : split(o.sizes, ',')) sizes.push_back(parse_count(s, "--sizes"));
    if (!std::is_sorted(sizes.begin(), sizes.end())) throw CLI::ValidationError("--sizes", "sizes must be ascending");
    const EstimatorSpec spec = estimator_spec(o);
    const SearchConfig config = search_config(o);

    const auto rows = consistency_experiment(file.dist, space, sizes, o.reps, spec, o.seed, config);
    const TargetSummary target = target_model(space, file.dist, o.node_cap, spec.tie);

    Json j;
    j["command"] = "simulate";
    j["input"] = o.input;
    j["config"] = config_json(o);
    j["domain"] = domain_json(file.domain);
    j["space"] = space_json(space);
    j["target"] = report::target(target, space, file.domain);
    Json list = Json::array();
    for (const auto& row : rows) list.push_back(report::consistency_row(row));
    j["rows"] = std::move(list);
    emit(o, j, out);

    if (!o.dot.empty() && o.reps > 0) {
        for (auto n : sizes) {
            const Sample sample = sample_from(file.dist, n, derive_seed(o.seed, n, 0));
            ModelEstimator costs(sample, spec);
            write_text(o.dot + "-" + std::to_string(n) + ".dot", report::dot(ucurve_search(space, costs, config), space));
        }
    }
    return exit_ok;
}

void add_common(CLI::App& app, Options& o) {
    app.add_option("--space", o.space, "Learning space: partition, feature or l2 (default: partition; listed nodes for --costs)")
        ->check(CLI::IsMember({"partition", "feature", "l2"}));
    app.add_option("--estimator", o.estimator, "holdout:V (count or fraction) or kfold:K")->capture_default_str();
    app.add_option("--mode", o.mode, "reuse or independent:FRAC")->capture_default_str();
    app.add_option("--seed", o.seed, "Seed for random restarts and simulation")->capture_default_str();
    app.add_option("--fallback", o.fallback, "Exhaustive search once fewer than C candidates remain (0 = off)")
        ->capture_default_str();
    app.add_option("--stochastic", o.stochastic, "Stochastic search with R restarts and a budget of B evaluations (R:B)");
    app.add_option("--start", o.start, "Restart policy")
        ->check(CLI::IsMember({"coarsest", "random"}))
        ->capture_default_str();
    app.add_option("--order", o.order, "Neighbor order")
        ->check(CLI::IsMember({"canonical", "cheapest"}))
        ->capture_default_str();
    app.add_flag("--prune-worse", o.prune_worse, "Drop visited neighbors with larger estimates");
    app.add_flag("--convexity-prune", o.convexity_prune, "Assume lattice convexity and skip implied joins");
    app.add_option("--tie", o.tie, "ERM tie rule")->check(CLI::IsMember({"one", "zero"}))->capture_default_str();
    app.add_option("--out", o.out, "Write the JSON report here instead of stdout");
    app.add_option("--dot", o.dot, "Write the visited Hasse subgraph as DOT");
    app.add_option("--max-points", o.max_points, "Cap on distinct feature rows")->capture_default_str();
    app.add_option("--node-cap", o.node_cap, "Cap on enumerated nodes")->capture_default_str();
    app.add_option("--truth", o.truth, "Ground-truth distribution (JSON) for target and error reporting");
    app.add_option("--costs", o.costs, "check: node -> cost map (JSON)");
    app.add_option("--data", o.data, "check: dataset to estimate costs from (CSV)");
    app.add_option("--property", o.property, "check: ucurve-weak, ucurve-strong, convexity, stats or minima")
        ->capture_default_str();
    app.add_option("--points", o.points, "check: domain size for --costs or stats");
    app.add_option("--dims", o.dims, "check: feature count for the feature space");
    app.add_option("--sizes", o.sizes, "simulate: ascending sample sizes")->capture_default_str();
    app.add_option("--reps", o.reps, "simulate: repetitions per size")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Model selection over partition Learning Spaces with the U-curve algorithm", "ucurve"};
    app.set_config("--config", "", "Read options from a TOML/INI key-value file");
    app.require_subcommand(1);
    add_common(app, o);
    auto* select = app.add_subcommand("select", "Select a model with the U-curve search");
    select->add_option("dataset", o.input, "CSV dataset")->required();
    auto* oracle = app.add_subcommand("oracle", "Select a model by exhaustive search");
    oracle->add_option("dataset", o.input, "CSV dataset")->required();
    auto* check = app.add_subcommand("check", "Check U-curve, convexity or space properties");
    auto* simulate = app.add_subcommand("simulate", "Consistency experiment on a known distribution");
    simulate->add_option("distribution", o.input, "Distribution JSON")->required();
    for (auto* sub : {select, oracle, check, simulate}) sub->fallthrough();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*select) return cmd_select(o, false, out);
        if (*oracle) return cmd_select(o, true, out);
        if (*check) return cmd_check(o, out);
        return cmd_simulate(o, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const CapError& e) {
        err << "error: " << e.what() << '\n';
        return exit_cap;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_cap;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
}

}  // namespace ucurve::cli

// Command-line front door: graph ingestion, scenario execution, the example
// catalog, and JSON report emission. Exit codes: 0 pass/success, 1
// violations found, 2 input or validity errors.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "netcon/anonymity.hpp"
#include "netcon/classify.hpp"
#include "netcon/families.hpp"
#include "netcon/graph_json.hpp"
#include "netcon/report_json.hpp"
#include "netcon/solver.hpp"
#include "netcon/spectral.hpp"
#include "netcon/verifier.hpp"

using nlohmann::ordered_json;
using namespace netcon;

namespace {

struct GraphOptions {
    std::string path;
    std::string catalog;
};

struct ParamOptions {
    double a = 1.0;
    std::optional<double> alpha;
    double alpha_factor = 0.8;
    std::optional<double> cost;
};

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
    auto* path = cmd->add_option("--graph", g.path, "graph JSON file");
    auto* name = cmd->add_option("--catalog", g.catalog, "named catalog graph");
    path->excludes(name);
}

void add_param_options(CLI::App* cmd, ParamOptions& p) {
    cmd->add_option("--a", p.a, "stand-alone marginal utility (default 1)");
    cmd->add_option("--alpha", p.alpha, "externality strength");
    cmd->add_option("--alpha-factor", p.alpha_factor,
                    "alpha as a fraction of 1/lambda when --alpha is omitted (default 0.8)");
    cmd->add_option("--c", p.cost, "marginal cost for the pricing view");
}

DirectedNetwork resolve_graph(const GraphOptions& g) {
    if (!g.path.empty()) return load_graph_file(g.path);
    if (!g.catalog.empty()) return catalog_network(g.catalog);
    throw std::invalid_argument("one of --graph or --catalog is required");
}

ModelParams resolve_params(const ParamOptions& p, const DirectedNetwork& net) {
    ModelParams params;
    params.a = p.a;
    if (p.alpha)
        params.alpha = *p.alpha;
    else if (net.edge_count() == 0)
        params.alpha = 0.0;  // nothing to scale against
    else
        params.alpha = auto_alpha(net, p.alpha_factor);
    params.c = p.cost;
    params.validate();
    return params;
}

ordered_json graph_json(const DirectedNetwork& net) {
    ordered_json doc;
    doc["n"] = net.size();
    auto& edges = doc["edges"] = ordered_json::array();
    for (const auto& [i, j] : net.edges()) edges.push_back({i + 1, j + 1});
    return doc;
}

ordered_json vector_json(const Eigen::VectorXd& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(round_significant(v(i)));
    return arr;
}

std::vector<int> parse_agents(const std::string& text, int n) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        const int agent = std::stoi(token);
        if (agent < 1 || agent > n) throw std::invalid_argument("agent index out of range: " + token);
        out.push_back(agent - 1);
    }
    return out;
}

EqualityClasses parse_classes(const std::string& text, int n) {
    EqualityClasses classes;
    std::vector<char> assigned(n, 0);
    std::stringstream stream(text);
    std::string group;
    while (std::getline(stream, group, ';')) {
        const auto members = parse_agents(group, n);
        if (members.empty()) continue;
        for (int i : members) {
            if (assigned[i]) throw std::invalid_argument("agent listed in two classes");
            assigned[i] = 1;
        }
        classes.classes.push_back(members);
    }
    for (int i = 0; i < n; ++i)
        if (!assigned[i]) classes.classes.push_back({i});
    return classes;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0.0, hi = 0.0, step = 0.0;
        char sep1 = 0, sep2 = 0;
        std::stringstream stream(text);
        stream >> lo >> sep1 >> hi >> sep2 >> step;
        if (!stream || sep1 != ':' || sep2 != ':' || step <= 0.0)
            throw std::invalid_argument("grid must be lo:hi:step");
        for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(round_significant(v, 12));
        return out;
    }
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ','))
        if (!token.empty()) out.push_back(std::stod(token));
    return out;
}

Contract load_contract(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open contract file: " + path);
    const auto doc = nlohmann::json::parse(in);
    const auto& arr = doc.is_array() ? doc : doc.at("x");
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
        throw std::invalid_argument("contract must be an array of n numbers");
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = arr[i].get<double>();
    return Contract::from_vector(x);
}

void emit(const ordered_json& doc, bool pretty) {
    if (!pretty) {
        std::cout << doc.dump() << "\n";
        return;
    }
    // Plain-text rendering for eyeballing; the JSON form is the contract.
    std::function<void(const ordered_json&, int)> walk = [&](const ordered_json& node, int indent) {
        const std::string pad(indent, ' ');
        if (node.is_object()) {
            for (const auto& [key, value] : node.items()) {
                if (value.is_object() || value.is_array()) {
                    std::cout << pad << key << ":\n";
                    walk(value, indent + 2);
                } else {
                    std::cout << pad << key << ": " << value.dump() << "\n";
                }
            }
        } else if (node.is_array()) {
            bool scalars = true;
            for (const auto& item : node)
                if (item.is_object() || item.is_array()) scalars = false;
            if (scalars) {
                std::cout << pad << node.dump() << "\n";
            } else {
                for (const auto& item : node) {
                    std::cout << pad << "-\n";
                    walk(item, indent + 2);
                }
            }
        } else {
            std::cout << pad << node.dump() << "\n";
        }
    };
    walk(doc, 0);
}

int run_solve(const GraphOptions& g, const ParamOptions& po, bool prices, bool taxes, bool pretty) {
    const auto net = resolve_graph(g);
    const auto params = resolve_params(po, net);
    const auto x = first_best(net, params);

    ordered_json doc;
    doc["command"] = "solve";
    doc["graph"] = graph_json(net);
    doc["a"] = round_significant(params.a);
    doc["alpha"] = round_significant(params.alpha);
    doc["lambda"] = round_significant(spectral_radius(symmetrized(net)));
    doc["x"] = vector_json(x.x);
    doc["welfare"] = round_significant(welfare(x, net, params));
    if (prices) {
        const auto schedule = price_schedule(x, net, params);
        doc["prices"] = vector_json(schedule.prices);
        doc["profit"] = round_significant(schedule.profit);
    }
    if (taxes) doc["taxes"] = vector_json(taxes_for_target(x, net, params));
    emit(doc, pretty);
    return 0;
}

int run_classify(const GraphOptions& g, bool pretty) {
    const auto net = resolve_graph(g);
    const auto d = classify(net);

    ordered_json doc;
    doc["command"] = "classify";
    doc["graph"] = graph_json(net);
    doc["labels"] = d.labels();
    if (d.hierarchy) {
        auto& tiers = doc["tiers"] = ordered_json::array();
        for (const auto& tier : d.hierarchy->tiers) {
            ordered_json t = ordered_json::array();
            for (int agent : tier) t.push_back(agent + 1);
            tiers.push_back(t);
        }
    }
    if (d.oriented_tree_branching) doc["branching"] = *d.oriented_tree_branching;
    emit(doc, pretty);
    return 0;
}

int run_verify(const GraphOptions& g, const ParamOptions& po, const std::string& mode_name,
               int max_size, bool any_coalition, const std::string& known_text,
               const std::string& contract_path, bool pretty) {
    const auto net = resolve_graph(g);
    const auto params = resolve_params(po, net);
    const Contract x =
        contract_path.empty() ? first_best(net, params) : load_contract(contract_path, net.size());
    const int cap = max_size > 0 ? max_size : std::min(net.size(), 6);

    VerificationReport report;
    if (mode_name == "ic") {
        report = verify_individual_ic(x, net, params);
    } else {
        const VerifyMode mode =
            mode_name == "group" ? VerifyMode::Group : VerifyMode::GroupTransfers;
        if (mode_name != "group" && mode_name != "group-transfers")
            throw std::invalid_argument("unknown mode: " + mode_name);
        const auto known = parse_agents(known_text, net.size());
        report = verify_with_known_identities(x, net, params, known, mode, cap, !any_coalition);
    }

    ordered_json doc = to_json(report);
    doc["graph"] = graph_json(net);
    doc["contract"] = vector_json(x.x);
    emit(doc, pretty);
    return report.pass ? 0 : 1;
}

int run_constrained(const GraphOptions& g, const ParamOptions& po, const std::string& classes_text,
                    bool auto_family, bool pretty) {
    const auto net = resolve_graph(g);
    const auto params = resolve_params(po, net);
    const int n = net.size();

    EqualityClasses classes;
    std::string pattern = "explicit";
    if (auto_family) {
        const auto d = classify(net);
        if (d.single_root_universal) {
            // Root pooled with every tier below the second.
            pattern = "root-tied";
            const auto tier_of = d.hierarchy->tier_of(n);
            std::vector<int> pooled;
            for (int i = 0; i < n; ++i)
                if (tier_of[i] == 0 || tier_of[i] >= 2) pooled.push_back(i);
            classes.classes.push_back(pooled);
            for (int i = 0; i < n; ++i)
                if (tier_of[i] == 1) classes.classes.push_back({i});
        } else if (d.nested_neighborhoods) {
            pattern = "uniform";
            classes = EqualityClasses::one_class(n);
        } else {
            throw std::invalid_argument(
                "--auto-family needs a single-root-universal or nested-neighborhoods graph");
        }
    } else if (!classes_text.empty()) {
        classes = parse_classes(classes_text, n);
    } else {
        throw std::invalid_argument("one of --classes or --auto-family is required");
    }

    const auto x = constrained_first_best(net, params, classes);
    const auto unconstrained = first_best(net, params);

    ordered_json doc;
    doc["command"] = "constrained";
    doc["graph"] = graph_json(net);
    doc["alpha"] = round_significant(params.alpha);
    doc["pattern"] = pattern;
    auto& cls = doc["classes"] = ordered_json::array();
    for (const auto& c : classes.classes) {
        ordered_json members = ordered_json::array();
        for (int i : c) members.push_back(i + 1);
        cls.push_back(members);
    }
    doc["x"] = vector_json(x.x);
    doc["welfare"] = round_significant(welfare(x, net, params));
    doc["first_best_welfare"] = round_significant(welfare(unconstrained, net, params));
    emit(doc, pretty);
    return 0;
}

int run_search(const std::string& family, int count, int n, double p, const std::string& grid_text,
               const std::string& mode_name, const std::string& adjacency, std::uint64_t seed,
               int max_size, bool pretty) {
    const auto grid = parse_grid(grid_text);
    std::vector<std::pair<VerifyMode, bool>> modes;
    const bool want_group = mode_name == "group" || mode_name == "both";
    const bool want_transfers = mode_name == "group-transfers" || mode_name == "both";
    if (!want_group && !want_transfers) throw std::invalid_argument("unknown mode: " + mode_name);
    for (bool adjacent : {true, false}) {
        if (adjacency == "on" && !adjacent) continue;
        if (adjacency == "off" && adjacent) continue;
        if (want_group) modes.push_back({VerifyMode::Group, adjacent});
        if (want_transfers) modes.push_back({VerifyMode::GroupTransfers, adjacent});
    }

    const auto records =
        search_counterexample(make_family_generator(family, count, n, p, seed), grid, modes, max_size);

    ordered_json doc;
    doc["command"] = "search";
    doc["family"] = family;
    doc["seed"] = seed;
    doc["alpha_grid"] = grid_text;
    auto& recs = doc["records"] = ordered_json::array();
    bool all_pass = true;
    for (const auto& rec : records) {
        recs.push_back(to_json(rec));
        if (rec.feasible && !rec.pass) all_pass = false;
    }
    emit(doc, pretty);
    return all_pass ? 0 : 1;
}

int run_mechanism(const GraphOptions& g, const ParamOptions& po, const std::string& announce,
                  int max_size, bool adjacent_only, bool pretty) {
    const auto net = resolve_graph(g);
    const auto params = resolve_params(po, net);
    const auto x = first_best(net, params);
    const int n = net.size();

    ordered_json doc;
    doc["command"] = "mechanism";
    doc["graph"] = graph_json(net);
    doc["alpha"] = round_significant(params.alpha);
    doc["menu"] = vector_json(x.x);

    bool sound = true;
    if (!announce.empty()) {
        auto choices = parse_agents(announce, n);
        if (static_cast<int>(choices.size()) != n)
            throw std::invalid_argument("--announce must list one location per agent");
        const auto payoffs = menu_game(x, choices, net, params);
        doc["announcements"] = [&] {
            ordered_json arr = ordered_json::array();
            for (int l : choices) arr.push_back(l + 1);
            return arr;
        }();
        doc["payoffs"] = vector_json(payoffs);
        std::vector<char> taken(n, 0);
        bool collision = false;
        for (int l : choices) {
            if (taken[l]) collision = true;
            taken[l] = 1;
        }
        doc["collision"] = collision;
    } else {
        const int cap = max_size > 0 ? max_size : std::min(n, 6);
        const auto audit = audit_neighbor_mechanism(x, net, params, cap, adjacent_only);
        ordered_json a;
        a["deviations"] = audit.deviations_examined;
        a["consistent"] = audit.consistent_count;
        a["sound"] = audit.sound;
        auto& list = a["consistent_deviations"] = ordered_json::array();
        for (const auto& rec : audit.consistent_deviations) {
            ordered_json r;
            r["coalition"] = [&] {
                ordered_json arr = ordered_json::array();
                for (int i : rec.deviation.coalition) arr.push_back(i + 1);
                return arr;
            }();
            r["permutation"] = [&] {
                ordered_json arr = ordered_json::array();
                for (int i : rec.deviation.images) arr.push_back(i + 1);
                return arr;
            }();
            r["total_gain"] = round_significant(rec.total_gain);
            r["allocation_changed"] = rec.allocation_changed;
            list.push_back(r);
        }
        doc["audit"] = a;
        sound = audit.sound;
    }
    emit(doc, pretty);
    return sound ? 0 : 1;
}

// ---------------------------------------------------------------------------
// The example catalog: every named graph with its documented checks.

struct CatalogCheck {
    std::string name;
    bool pass;
};

void check(std::vector<CatalogCheck>& checks, const std::string& name, bool pass) {
    checks.push_back({name, pass});
}

std::vector<CatalogCheck> examples_path3() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("path3");
    const auto cls = equivalence_class(net);
    check(checks, "architecture class has six labelings", cls.size() == 6);
    const auto c0 = information_cell(net, 0, InfoLevel::LocationOnly);
    const auto c1 = information_cell(net, 1, InfoLevel::LocationOnly);
    const auto c2 = information_cell(net, 2, InfoLevel::LocationOnly);
    check(checks, "each location-only cell has two members",
          c0.members.size() == 2 && c1.members.size() == 2 && c2.members.size() == 2);
    auto singleton_intersection = [&](const InformationCell& a, const InformationCell& b) {
        std::vector<GraphCode> common;
        std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                              std::back_inserter(common));
        return common.size() == 1 && common[0] == encode(net);
    };
    check(checks, "pooling any two agents identifies the true graph",
          singleton_intersection(c0, c1) && singleton_intersection(c0, c2) &&
              singleton_intersection(c1, c2));
    const auto refined = information_cell(net, 0, InfoLevel::LocationPlusInNeighbors);
    check(checks, "influencer knowledge pins the middle agent's cell",
          refined.members.size() == 1 && refined.members[0] == encode(net));
    return checks;
}

std::vector<CatalogCheck> examples_threeroots4() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("threeroots4");
    const ModelParams p{1.0, 0.2, std::nullopt};
    const auto x = first_best(net, p);
    const double root = 1.2 / 0.88, follower = 1.6 / 0.88;
    bool closed = std::abs(x.x(3) - follower) < 1e-9;
    for (int i = 0; i < 3; ++i) closed = closed && std::abs(x.x(i) - root) < 1e-9;
    check(checks, "first best matches the closed form at alpha 0.2", closed);
    check(checks, "the lone follower gets the higher quantity", x.x(3) > x.x(0));
    check(checks, "transfer-proof despite the hierarchy (shrinking tiers)",
          verify_group_ic_transfers(x, net, p, 4).pass);
    return checks;
}

std::vector<CatalogCheck> examples_tree7() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("tree7");
    const ModelParams p{1.0, auto_alpha(net), std::nullopt};
    const auto x = first_best(net, p);
    const double alpha = p.alpha;
    check(checks, "closed forms from the tiered linear system",
          std::abs(x.x(0) - (1 + alpha) / (1 - 2 * alpha)) < 1e-9 &&
              std::abs(x.x(1) - 1.0 / (1 - 2 * alpha)) < 1e-9 &&
              std::abs(x.x(4) - (1 - alpha) / (1 - 2 * alpha)) < 1e-9);
    bool decreasing = true;
    for (const auto& [i, j] : net.edges())
        if (!net.influencers(j).empty() && !(x.x(i) < x.x(j))) decreasing = false;
    check(checks, "quantities strictly decrease below the root tier", decreasing);
    check(checks, "adjacent coalitions cannot gain even with transfers",
          verify_group_ic_transfers(x, net, p, 7).pass);
    const Deviation swap{{0, 4}, {4, 0}};
    const double gain = deviation_gains(x, net, p, swap).sum();
    check(checks, "the non-adjacent root/leaf pair gains",
          gain > kGainTolerance &&
              std::abs(gain - alpha * (x.x(0) - x.x(4)) * x.x(1)) < 1e-12);
    return checks;
}

std::vector<CatalogCheck> examples_line5() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("line5");
    const ModelParams p{1.0, auto_alpha(net), std::nullopt};
    const auto x = first_best(net, p);
    check(checks, "the middle of the line is most central", x.x(2) > x.x(1) && x.x(1) > x.x(0));
    const auto report = verify_group_ic_transfers(x, net, p, 5);
    check(checks, "transfers break the contract at the pair (3,4)",
          !report.pass && report.violations.size() == 1 &&
              report.violations[0].deviation.coalition == std::vector<int>{2, 3});
    check(checks, "without transfers the contract stands", verify_group_ic(x, net, p, 5).pass);
    return checks;
}

std::vector<CatalogCheck> examples_intratier5() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("intratier5");
    const ModelParams p{1.0, 0.15, std::nullopt};
    const auto x = first_best(net, p);
    const double top = 0.85 / 0.205, bottom = 1.15 / 0.205;
    check(checks, "first best matches the closed form at alpha 0.15",
          std::abs(x.x(0) - top) < 1e-9 && std::abs(x.x(1) - top) < 1e-9 &&
              std::abs(x.x(2) - bottom) < 1e-9);
    check(checks, "the linked bottom tier receives more than the top", x.x(2) > x.x(0));
    check(checks, "transfer-proof thanks to the inverted ordering",
          verify_group_ic_transfers(x, net, p, 5).pass);
    return checks;
}

std::vector<CatalogCheck> examples_twostars8() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("twostars8");
    const Eigen::MatrixXd g = 0.5 * symmetrized(net);

    bool adjacent_safe = true, low_safe = true, high_gains = true;
    for (double alpha = 0.30; alpha < 0.57; alpha += 0.02) {
        const ModelParams p{1.0, alpha, std::nullopt};
        const Contract x{katz_bonacich(g, alpha)};
        if (!verify_group_ic_transfers(x, net, p, 3).pass) adjacent_safe = false;
        const double gain = deviation_gains(x, net, p, Deviation{{0, 1, 2}, {0, 2, 1}}).sum();
        if (alpha < 1.0 / 3.0 && gain > kGainTolerance) low_safe = false;
        if (alpha > 1.0 / 3.0 && gain <= kGainTolerance) high_gains = false;
    }
    check(checks, "adjacent coalitions never profit on the walk-count contract", adjacent_safe);
    check(checks, "the hub-hub-leaf deviation flips from safe to profitable at one third",
          low_safe && high_gains);

    bool fb_low_safe = true, fb_high_gains = true;
    for (double alpha = 0.10; alpha < 0.29; alpha += 0.02) {
        const ModelParams p{1.0, alpha, std::nullopt};
        const auto x = first_best(net, p);
        const double gain = deviation_gains(x, net, p, Deviation{{0, 1, 2}, {0, 2, 1}}).sum();
        if (alpha < 1.0 / 6.0 && gain > kGainTolerance) fb_low_safe = false;
        if (alpha > 1.0 / 6.0 && gain <= kGainTolerance) fb_high_gains = false;
    }
    check(checks, "at the first best the flip moves to one sixth", fb_low_safe && fb_high_gains);
    return checks;
}

std::vector<CatalogCheck> examples_singleroot7() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("singleroot7");
    const ModelParams p{1.0, auto_alpha(net), std::nullopt};
    const auto x = first_best(net, p);
    const auto full = verify_group_ic_transfers(x, net, p, 6);
    bool root_pair = false;
    for (const auto& v : full.violations)
        if (v.deviation.coalition.size() == 2 && v.deviation.coalition[0] == 0) root_pair = true;
    check(checks, "anonymity forces a root violation with transfers", !full.pass && root_pair);
    check(checks, "knowing the root restores the first best",
          verify_with_known_identities(x, net, p, {0}, VerifyMode::GroupTransfers, 6).pass);
    const EqualityClasses tied{{{0, 3, 4, 5, 6}, {1}, {2}}};
    const auto pooled = constrained_first_best(net, p, tied);
    bool swaps_safe = true;
    for (int i : {3, 4, 5, 6})
        if (deviation_gains(pooled, net, p, Deviation{{0, i}, {i, 0}}).sum() > kGainTolerance)
            swaps_safe = false;
    check(checks, "pooling the root with the bottom tiers removes every root swap", swaps_safe);
    return checks;
}

std::vector<CatalogCheck> examples_nested9() {
    std::vector<CatalogCheck> checks;
    const auto net = catalog_network("nested9");
    const ModelParams p{1.0, auto_alpha(net), std::nullopt};
    const auto x = first_best(net, p);
    check(checks, "group deviations without transfers never profit",
          verify_group_ic(x, net, p, 6).pass);
    check(checks, "transfers break the first best", !verify_group_ic_transfers(x, net, p, 6).pass);
    const int m = net.edge_count();
    const auto uniform = constrained_first_best(net, p, EqualityClasses::one_class(9));
    check(checks, "the uniform fallback matches its scalar closed form",
          std::abs(uniform.x(0) - 9.0 * p.a / (9.0 - 2.0 * p.alpha * m)) < 1e-9);
    check(checks, "the uniform fallback is transfer-proof",
          verify_group_ic_transfers(uniform, net, p, 6).pass);
    return checks;
}

int run_examples(bool pretty) {
    ordered_json doc;
    doc["command"] = "examples";
    auto& entries = doc["entries"] = ordered_json::array();
    bool all_pass = true;

    const std::vector<std::pair<std::string, std::vector<CatalogCheck> (*)()>> catalog = {
        {"path3", examples_path3},       {"threeroots4", examples_threeroots4},
        {"tree7", examples_tree7},       {"line5", examples_line5},
        {"intratier5", examples_intratier5}, {"twostars8", examples_twostars8},
        {"singleroot7", examples_singleroot7}, {"nested9", examples_nested9},
    };
    for (const auto& [name, runner] : catalog) {
        ordered_json entry;
        entry["name"] = name;
        auto& list = entry["checks"] = ordered_json::array();
        for (const auto& c : runner()) {
            ordered_json item;
            item["check"] = c.name;
            item["pass"] = c.pass;
            list.push_back(item);
            if (!c.pass) all_pass = false;
        }
        entries.push_back(entry);
    }
    doc["verdict"] = all_pass ? "pass" : "fail";
    emit(doc, pretty);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"welfare-optimal contracts on anonymized networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "netcon 0.1.0");

    GraphOptions graph;
    ParamOptions params;
    bool pretty = false;

    auto* solve = app.add_subcommand("solve", "first-best contract and welfare");
    add_graph_options(solve, graph);
    add_param_options(solve, params);
    bool with_prices = false, with_taxes = false;
    solve->add_flag("--prices", with_prices, "include the surplus-extracting price schedule");
    solve->add_flag("--taxes", with_taxes, "include the tax/subsidy implementation");

    auto* classify_cmd = app.add_subcommand("classify", "structural family labels");
    add_graph_options(classify_cmd, graph);

    auto* verify = app.add_subcommand("verify", "incentive compatibility of a contract");
    add_graph_options(verify, graph);
    add_param_options(verify, params);
    std::string mode = "group-transfers";
    int max_size = 0;
    bool any_coalition = false;
    std::string known, contract_path;
    verify->add_option("--mode", mode, "ic | group | group-transfers (default group-transfers)");
    verify->add_option("--max-size", max_size, "largest coalition size (default min(n, 6))");
    verify->add_flag("--any-coalition", any_coalition, "drop the adjacency requirement");
    verify->add_option("--known", known, "comma-separated agents whose identity the planner knows");
    verify->add_option("--contract", contract_path, "contract JSON (defaults to the first best)");

    auto* constrained = app.add_subcommand("constrained", "equality-constrained optimum");
    add_graph_options(constrained, graph);
    add_param_options(constrained, params);
    std::string classes_text;
    bool auto_family = false;
    constrained->add_option("--classes", classes_text,
                            "semicolon-separated classes, e.g. \"1,4;2,3\" (rest singleton)");
    constrained->add_flag("--auto-family", auto_family,
                          "derive the class pattern from the detected family");

    auto* search = app.add_subcommand("search", "sweep a family generator for counterexamples");
    std::string family = "undirected", grid_text = "0.05:0.45:0.05", search_mode = "both",
                adjacency = "on";
    int count = 20, n_agents = 8, search_max = 6;
    double edge_prob = 0.4;
    std::uint64_t seed = 1;
    search->add_option("--family", family,
                       "undirected | digraph | hierarchy | single-root | nested | regular-tree");
    search->add_option("--count", count, "instances to generate");
    search->add_option("--n", n_agents, "agents per instance (where applicable)");
    search->add_option("--p", edge_prob, "edge probability (where applicable)");
    search->add_option("--alpha-grid", grid_text, "lo:hi:step or comma list");
    search->add_option("--mode", search_mode, "group | group-transfers | both");
    search->add_option("--adjacency", adjacency, "on | off | both");
    search->add_option("--seed", seed, "generator seed");
    search->add_option("--max-size", search_max, "coalition size cap");

    auto* mechanism = app.add_subcommand("mechanism", "menu game and announcement audit");
    add_graph_options(mechanism, graph);
    add_param_options(mechanism, params);
    std::string announce;
    int mech_max = 0;
    bool adjacent_only = false;
    mechanism->add_option("--announce", announce, "play one menu round with these location claims");
    mechanism->add_option("--max-size", mech_max, "audit coalition cap (default min(n, 6))");
    mechanism->add_flag("--adjacent-only", adjacent_only, "audit only adjacent coalitions");

    auto* examples = app.add_subcommand("examples", "run the example catalog end to end");

    for (auto* cmd : {solve, classify_cmd, verify, constrained, search, mechanism, examples})
        cmd->add_flag("--pretty", pretty, "human-readable output instead of JSON");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return run_solve(graph, params, with_prices, with_taxes, pretty);
        if (classify_cmd->parsed()) return run_classify(graph, pretty);
        if (verify->parsed())
            return run_verify(graph, params, mode, max_size, any_coalition, known, contract_path,
                              pretty);
        if (constrained->parsed())
            return run_constrained(graph, params, classes_text, auto_family, pretty);
        if (search->parsed())
            return run_search(family, count, n_agents, edge_prob, grid_text, search_mode, adjacency,
                              seed, search_max, pretty);
        if (mechanism->parsed())
            return run_mechanism(graph, params, announce, mech_max, adjacent_only, pretty);
        if (examples->parsed()) return run_examples(pretty);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

// Acceptance suite: one self-contained criterion per function, each printed
// as a single pass/fail line with its runtime and enforced budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "netcon/anonymity.hpp"
#include "netcon/classify.hpp"
#include "netcon/families.hpp"
#include "netcon/solver.hpp"
#include "netcon/spectral.hpp"
#include "netcon/verifier.hpp"
#include "oracles.hpp"

using namespace netcon;

namespace {

struct Criterion {
    std::string label;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

ModelParams auto_params(const DirectedNetwork& net) {
    return ModelParams{1.0, auto_alpha(net), std::nullopt};
}

bool expect(bool condition, const std::string& message, std::string& detail) {
    if (!condition && detail.empty()) detail = message;
    return condition;
}

// --- 1 -----------------------------------------------------------------
bool first_best_correctness(std::string& detail) {
    Rng rng(20240501);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 11;  // up to 12
        const auto net = random_digraph(n, 0.3, rng);
        const auto p = auto_params(net);
        const auto x = first_best(net, p);
        const Eigen::MatrixXd w = symmetrized(net);
        const double residual =
            (Eigen::VectorXd::Constant(n, p.a) - x.x + p.alpha * w * x.x).lpNorm<Eigen::Infinity>();
        ok &= expect(residual < 1e-9, "first-order residual above 1e-9", detail);
        const Eigen::VectorXd kb = katz_bonacich(w, p.alpha);
        ok &= expect((x.x - p.a * kb).lpNorm<Eigen::Infinity>() < 1e-9,
                     "walk-count proportionality above 1e-9", detail);
    }
    return ok;
}

// --- 2 -----------------------------------------------------------------
bool closed_form_reproduction(std::string& detail) {
    bool ok = true;
    {
        const auto net = catalog_network("threeroots4");
        const auto x = first_best(net, ModelParams{1.0, 0.2, std::nullopt});
        for (int i = 0; i < 3; ++i)
            ok &= expect(std::abs(x.x(i) - 15.0 / 11.0) < 1e-9, "root quantity off", detail);
        ok &= expect(std::abs(x.x(3) - 20.0 / 11.0) < 1e-9, "follower quantity off", detail);
    }
    {
        const auto net = catalog_network("intratier5");
        const auto x = first_best(net, ModelParams{1.0, 0.15, std::nullopt});
        for (int i : {0, 1})
            ok &= expect(std::abs(x.x(i) - 170.0 / 41.0) < 1e-9, "top-tier quantity off", detail);
        for (int i : {2, 3, 4})
            ok &= expect(std::abs(x.x(i) - 230.0 / 41.0) < 1e-9, "bottom-tier quantity off", detail);
    }
    return ok;
}

// --- 3 -----------------------------------------------------------------
bool small_group_immunity(std::string& detail) {
    bool ok = true;
    for (unsigned mask = 0; mask < (1u << 12); ++mask) {
        DirectedNetwork net(4);
        int bit = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                if (mask & (1u << bit)) net.add_edge(i, j);
                ++bit;
            }
        if (net.edge_count() == 0) continue;
        const auto p = auto_params(net);
        const auto x = first_best(net, p);
        if (!verify_group_ic(x, net, p, 4).pass) {
            ok = expect(false, "violation on the 4-agent digraph mask " + std::to_string(mask), detail);
            break;
        }
    }
    Rng rng(333);
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const int n = 5 + trial % 3;
        const auto net = random_digraph(n, 0.35, rng);
        const auto p = auto_params(net);
        const auto x = first_best(net, p);
        ok &= expect(verify_group_ic(x, net, p, 4).pass, "violation on a random digraph", detail);
    }
    return ok;
}

// --- 4 -----------------------------------------------------------------
bool undirected_transfer_immunity(std::string& detail) {
    Rng rng(444);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + trial % 7;  // up to 10
        const auto net = random_undirected(n, 0.4, rng);
        const auto p = auto_params(net);
        const auto x = first_best(net, p);
        ok &= expect(verify_group_ic_transfers(x, net, p, 5).pass,
                     "transfer violation on an undirected graph", detail);
    }
    return ok;
}

// --- 5 -----------------------------------------------------------------
bool hierarchy_group_immunity(std::string& detail) {
    Rng rng(555);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 5 + trial % 6;  // up to 10
        const int tiers = 2 + trial % 3;
        const auto net = random_hierarchy(n, tiers, rng);
        const auto p = auto_params(net);
        const auto x = first_best(net, p);
        ok &= expect(verify_group_ic(x, net, p, 5).pass, "violation on a hierarchy", detail);
    }
    return ok;
}

// --- 6 -----------------------------------------------------------------
bool single_root_pooling(std::string& detail) {
    Rng rng(666);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const int n = 7 + trial % 6;  // up to 12
        const auto net = random_single_root_universal(n, rng);
        const auto p = auto_params(net);
        const auto d = classify(net);
        ok &= expect(d.single_root_universal && d.hierarchy->count() >= 3,
                     "generator produced a wrong instance", detail);
        const auto tier_of = d.hierarchy->tier_of(n);
        const int root = d.hierarchy->tiers[0][0];

        // (a) the first best falls to a root pair from the deep tiers.
        const auto x = first_best(net, p);
        const auto report = verify_group_ic_transfers(x, net, p, 4);
        bool deep_root_pair = false;
        for (const auto& v : report.violations)
            if (v.deviation.coalition.size() == 2 && v.deviation.coalition[0] == root &&
                tier_of[v.deviation.coalition[1]] >= 2)
                deep_root_pair = true;
        ok &= expect(!report.pass && deep_root_pair, "no deep root pair among violations", detail);

        // (b) pooling the root with tiers >= 3 removes every root swap.
        EqualityClasses classes;
        std::vector<int> pooled{root};
        for (int i = 0; i < n; ++i)
            if (tier_of[i] >= 2) pooled.push_back(i);
        std::sort(pooled.begin(), pooled.end());
        classes.classes.push_back(pooled);
        for (int i = 0; i < n; ++i)
            if (tier_of[i] == 1) classes.classes.push_back({i});
        const auto tied = constrained_first_best(net, p, classes);
        for (int i = 0; i < n; ++i) {
            if (tier_of[i] < 2) continue;
            const std::vector<int> pair = root < i ? std::vector<int>{root, i} : std::vector<int>{i, root};
            const auto gains = deviation_gains(tied, net, p, Deviation{pair, {pair[1], pair[0]}});
            ok &= expect(gains.sum() <= kGainTolerance, "root swap survives pooling", detail);
        }

        // (c) welfare rises when mass moves from a better-served deep agent to the root.
        for (int i = 0; i < n; ++i) {
            if (tier_of[i] < 2) continue;
            Eigen::VectorXd y = x.x;
            y(root) = 0.9 * y(i);
            ok &= expect(marginal_transfer_welfare(Contract{y}, net, p, i, root) > 0.0,
                         "marginal transfer toward the root not positive", detail);
        }
    }
    return ok;
}

// --- 7 -----------------------------------------------------------------
bool nested_uniform_fallback(std::string& detail) {
    Rng rng(777);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const auto net = random_nested(rng);
        const int n = net.size();
        const auto p = auto_params(net);
        const auto d = classify(net);
        ok &= expect(d.nested_neighborhoods, "generator produced a non-nested instance", detail);

        const auto x = first_best(net, p);
        ok &= expect(!verify_group_ic_transfers(x, net, p, 4).pass,
                     "first best unexpectedly transfer-proof", detail);

        const int m = net.edge_count();
        const double closed = n * p.a / (n - 2.0 * p.alpha * m);
        const auto uniform = constrained_first_best(net, p, EqualityClasses::one_class(n));
        ok &= expect(std::abs(uniform.x(0) - closed) < 1e-9, "uniform closed form off", detail);

        const double oracle = oracles::grid_refine_maximize(
            [&](double z) { return n * p.a * z - 0.5 * n * z * z + p.alpha * m * z * z; }, 0.0,
            10.0 * p.a * n, 1e-8);
        ok &= expect(std::abs(uniform.x(0) - oracle) < 1e-6, "grid oracle disagrees", detail);
    }
    return ok;
}

// --- 8 -----------------------------------------------------------------
bool regular_tree_immunity(std::string& detail) {
    Rng rng(888);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const auto net = random_regular_tree(rng);
        const auto p = auto_params(net);
        const auto x = first_best(net, p);
        for (const auto& [child, parent] : net.edges())
            if (!net.influencers(parent).empty())
                ok &= expect(x.x(child) < x.x(parent), "no strict decrease along a deep edge", detail);
        ok &= expect(verify_group_ic_transfers(x, net, p, 6).pass,
                     "transfer violation on a regular tree", detail);
    }
    const auto line = catalog_network("line5");
    const auto p = auto_params(line);
    const auto x = first_best(line, p);
    const auto report = verify_group_ic_transfers(x, line, p, 5);
    bool middle_pair = false;
    for (const auto& v : report.violations)
        if (v.deviation.coalition == std::vector<int>{2, 3}) middle_pair = true;
    ok &= expect(!report.pass && middle_pair, "line control case did not fail at (3,4)", detail);
    return ok;
}

// --- 9 -----------------------------------------------------------------
bool disjoint_star_thresholds(std::string& detail) {
    const auto net = catalog_network("twostars8");
    const Eigen::MatrixXd g = 0.5 * symmetrized(net);
    const Deviation dev{{0, 1, 2}, {0, 2, 1}};
    bool ok = true;
    for (int k = 0; k <= 13; ++k) {
        const double alpha = 0.30 + 0.02 * k;  // 0.30 .. 0.56
        const ModelParams p{1.0, alpha, std::nullopt};
        const Contract x{katz_bonacich(g, alpha)};
        const bool profitable = deviation_gains(x, net, p, dev).sum() > kGainTolerance;
        ok &= expect(profitable == (alpha > 1.0 / 3.0),
                     "walk-count threshold missed at alpha " + std::to_string(alpha), detail);
    }
    for (int k = 0; k <= 9; ++k) {
        const double alpha = 0.10 + 0.02 * k;  // 0.10 .. 0.28
        const ModelParams p{1.0, alpha, std::nullopt};
        const auto x = first_best(net, p);
        const bool profitable = deviation_gains(x, net, p, dev).sum() > kGainTolerance;
        // Doubled link weights move the sign change of (x-y)(2x-3y) to 1/6.
        ok &= expect(profitable == (alpha > 1.0 / 6.0),
                     "first-best threshold missed at alpha " + std::to_string(alpha), detail);
    }
    return ok;
}

// --- 10 ----------------------------------------------------------------
bool tree_nonadjacent_pair(std::string& detail) {
    const auto net = catalog_network("tree7");
    const auto p = auto_params(net);
    const auto x = first_best(net, p);
    bool ok = expect(deviation_gains(x, net, p, Deviation{{0, 4}, {4, 0}}).sum() > kGainTolerance,
                     "root/leaf pair gain not positive", detail);
    ok &= expect(verify_group_ic_transfers(x, net, p, 7).pass, "adjacent verifier failed", detail);
    return ok;
}

// --- 11 ----------------------------------------------------------------
bool announcement_mechanism_sound(std::string& detail) {
    Rng rng(1111);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const int n = 3 + trial % 3;  // up to 5
        const auto net = random_digraph(n, 0.4, rng);
        const auto p = auto_params(net);
        const auto x = first_best(net, p);
        const auto audit = audit_neighbor_mechanism(x, net, p, n);
        ok &= expect(audit.sound, "a consistent deviation gained or moved the allocation", detail);
        for (const auto& rec : audit.consistent_deviations) {
            ok &= expect(rec.total_gain <= 1e-9, "consistent deviation with positive gain", detail);
            ok &= expect(!rec.allocation_changed, "allocation-changing misreport passed", detail);
        }
    }
    return ok;
}

// --- 12 ----------------------------------------------------------------
bool path_information_cells(std::string& detail) {
    const auto net = catalog_network("path3");
    const auto cls = equivalence_class(net);
    bool ok = expect(cls.size() == 6, "class size is not 6", detail);
    const auto c0 = information_cell(net, 0, InfoLevel::LocationOnly);
    const auto c1 = information_cell(net, 1, InfoLevel::LocationOnly);
    const auto c2 = information_cell(net, 2, InfoLevel::LocationOnly);
    ok &= expect(c0.members.size() == 2 && c1.members.size() == 2 && c2.members.size() == 2,
                 "cells are not two labelings each", detail);
    const auto cells = {c0, c1, c2};
    for (auto a = cells.begin(); a != cells.end(); ++a)
        for (auto b = std::next(a); b != cells.end(); ++b) {
            std::vector<GraphCode> common;
            std::set_intersection(a->members.begin(), a->members.end(), b->members.begin(),
                                  b->members.end(), std::back_inserter(common));
            ok &= expect(common.size() == 1 && common[0] == encode(net),
                         "pooled cells do not identify the graph", detail);
        }
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"first-best solves and walk-count proportionality on 100 digraphs", 5.0, first_best_correctness},
        {"closed-form contracts on the shrinking and linked-tier examples", 1.0, closed_form_reproduction},
        {"no small-group deviation on 4096 + 500 digraphs", 180.0, small_group_immunity},
        {"transfer-proof first best on 200 undirected graphs", 180.0, undirected_transfer_immunity},
        {"group-proof first best on 200 hierarchies", 120.0, hierarchy_group_immunity},
        {"single-root pooling: failures, pooled fix, welfare direction", 60.0, single_root_pooling},
        {"nested hierarchies force the uniform fallback", 60.0, nested_uniform_fallback},
        {"regular oriented trees stay transfer-proof, the line does not", 30.0, regular_tree_immunity},
        {"disjoint-star deviation thresholds at 1/3 and 1/6", 10.0, disjoint_star_thresholds},
        {"oriented tree: non-adjacent pair gains, adjacent pairs do not", 5.0, tree_nonadjacent_pair},
        {"announcement mechanism sound on 50 sampled graphs", 120.0, announcement_mechanism_sound},
        {"three-agent path architecture class and information cells", 1.0, path_information_cells},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto& c = criteria[k];
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds >= c.budget_seconds) {
            pass = false;
            if (detail.empty()) detail = "over the time budget";
        }
        std::printf("[%s] %2zu %-62s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", k + 1, c.label.c_str(),
                    seconds, detail.empty() ? "" : " -- ", detail.c_str());
        if (!pass) ++failures;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

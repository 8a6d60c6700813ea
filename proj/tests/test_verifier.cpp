#include <doctest.h>

#include <cmath>
#include <set>

#include "netcon/classify.hpp"
#include "netcon/families.hpp"
#include "netcon/report_json.hpp"
#include "netcon/solver.hpp"
#include "netcon/spectral.hpp"
#include "netcon/verifier.hpp"
#include "oracles.hpp"

using namespace netcon;

namespace {

ModelParams params_for(const DirectedNetwork& net, double a = 1.0, double factor = 0.8) {
    return ModelParams{a, auto_alpha(net, factor), std::nullopt};
}

Contract random_contract(int n, std::uint64_t& state, double scale = 2.0) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = scale * oracles::uniform01(state);
    return Contract{x};
}

}  // namespace

TEST_CASE("deviation validation") {
    DirectedNetwork net(4);
    net.add_edge(0, 1);
    const Contract x{Eigen::VectorXd::Ones(4)};
    const ModelParams p{1.0, 0.1, std::nullopt};
    CHECK_THROWS_AS(deviation_gains(x, net, p, Deviation{{0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(deviation_gains(x, net, p, Deviation{{0}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(deviation_gains(x, net, p, Deviation{{0, 1}, {0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(deviation_gains(x, net, p, Deviation{{0, 1}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(deviation_gains(Contract{Eigen::VectorXd::Ones(3)}, net, p,
                                    Deviation{{0, 1}, {1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("permuting a flat contract never changes anything") {
    Rng rng(61);
    std::uint64_t state = 17;
    for (int trial = 0; trial < 20; ++trial) {
        const auto net = random_digraph(5, 0.5, rng);
        const Contract flat{Eigen::VectorXd::Constant(5, 1.0 + oracles::uniform01(state))};
        const ModelParams p{1.0, 0.2, std::nullopt};
        const auto gains = deviation_gains(flat, net, p, Deviation{{0, 2, 4}, {2, 4, 0}});
        CHECK(gains.lpNorm<Eigen::Infinity>() < 1e-14);
    }
}

TEST_CASE("swapping the isolated reciprocal pair is exactly neutral") {
    DirectedNetwork pair(2);
    pair.add_edge(0, 1);
    pair.add_edge(1, 0);
    const auto p = params_for(pair);
    const auto x = first_best(pair, p);
    const auto gains = deviation_gains(x, pair, p, Deviation{{0, 1}, {1, 0}});
    CHECK(std::abs(gains.sum()) < 1e-12);
}

TEST_CASE("pair swap at the first best on an undirected graph") {
    Rng rng(67);
    for (int trial = 0; trial < 25; ++trial) {
        const auto net = random_undirected(6, 0.5, rng);
        const auto p = params_for(net);
        const auto x = first_best(net, p);
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                if (!net.edge(i, j)) continue;
                const auto gains = deviation_gains(x, net, p, Deviation{{i, j}, {j, i}});
                CHECK(gains.sum() <= kGainTolerance);
                if (std::abs(x.x(i) - x.x(j)) > 1e-9) {
                    // Whoever walks away with the larger quantity strictly loses.
                    const int loser = x.x(i) < x.x(j) ? 0 : 1;
                    CHECK(gains(loser) < 0.0);
                }
            }
    }
}

TEST_CASE("non-adjacent top-bottom swap on the oriented tree is profitable") {
    const auto net = catalog_network("tree7");
    const auto p = params_for(net);
    const auto x = first_best(net, p);
    const Deviation swap{{0, 4}, {4, 0}};
    const auto gains = deviation_gains(x, net, p, swap);
    const double expected = p.alpha * (x.x(0) - x.x(4)) * x.x(1);
    CHECK(gains.sum() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(gains.sum() > kGainTolerance);
    // The adjacency-restricted verifier never sees that pair.
    const auto report = verify_group_ic_transfers(x, net, p, 7);
    CHECK(report.pass);
}

TEST_CASE("group verifier passes the first best on every 3-agent digraph") {
    for (unsigned mask = 0; mask < (1u << 6); ++mask) {
        DirectedNetwork net(3);
        int bit = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                if (mask & (1u << bit)) net.add_edge(i, j);
                ++bit;
            }
        if (net.edge_count() == 0) continue;
        const auto p = params_for(net);
        const auto x = first_best(net, p);
        const auto report = verify_group_ic(x, net, p, 3);
        CHECK(report.pass);
    }
}

TEST_CASE("group verifier passes uniform contracts everywhere") {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const auto net = random_digraph(6, 0.5, rng);
        const ModelParams p{1.0, 0.2, std::nullopt};
        const Contract uniform{Eigen::VectorXd::Constant(6, 2.5)};
        CHECK(verify_group_ic(uniform, net, p, 6).pass);
        CHECK(verify_group_ic_transfers(uniform, net, p, 6).pass);
    }
}

TEST_CASE("hierarchies are group incentive compatible at the first best") {
    Rng rng(73);
    for (int trial = 0; trial < 40; ++trial) {
        const auto net = random_hierarchy(7 + trial % 3, 2 + trial % 3, rng);
        const auto p = params_for(net);
        const auto x = first_best(net, p);
        CHECK(verify_group_ic(x, net, p, 5).pass);
    }
}

TEST_CASE("transfers verifier fails the five-agent line exactly at the middle pair") {
    const auto net = catalog_network("line5");
    const auto p = params_for(net);
    const auto x = first_best(net, p);
    const auto report = verify_group_ic_transfers(x, net, p, 5);
    CHECK_FALSE(report.pass);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].deviation.coalition == std::vector<int>{2, 3});
    CHECK(report.violations[0].deviation.images == std::vector<int>{3, 2});
    CHECK(report.violations[0].total > kGainTolerance);
    // The no-transfers notion still holds (the winner compensates no one).
    CHECK(verify_group_ic(x, net, p, 5).pass);
}

TEST_CASE("transfers verifier passes random undirected graphs at the first best") {
    Rng rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        const auto net = random_undirected(7, 0.4, rng);
        const auto p = params_for(net);
        const auto x = first_best(net, p);
        CHECK(verify_group_ic_transfers(x, net, p, 4).pass);
    }
}

TEST_CASE("two disjoint stars: adjacent coalitions safe, non-adjacent triple flips with alpha") {
    const auto net = catalog_network("twostars8");
    for (double alpha : {0.30, 0.40}) {
        const ModelParams p{1.0, alpha, std::nullopt};
        const Eigen::MatrixXd g = 0.5 * symmetrized(net);  // unweighted undirected adjacency
        const Contract x{katz_bonacich(g, alpha)};
        const auto adjacent = verify_group_ic_transfers(x, net, p, 3);
        CHECK(adjacent.pass);
        const Deviation dev{{0, 1, 2}, {0, 2, 1}};  // both hubs plus a leaf; leaf and far hub trade
        const double total = deviation_gains(x, net, p, dev).sum();
        if (alpha > 1.0 / 3.0)
            CHECK(total > kGainTolerance);
        else
            CHECK(total <= kGainTolerance);
    }
}

TEST_CASE("pairwise swap margin") {
    const auto net = catalog_network("twostars8");
    const auto p = params_for(net);
    const auto x = first_best(net, p);
    SUBCASE("equal quantities yield a zero margin") {
        CHECK(pairwise_swap_margin(x, net, 0, 2) == 0.0);  // the two hubs
        CHECK(pairwise_swap_margin(x, net, 1, 5) == 0.0);  // two leaves
    }
    SUBCASE("hub-leaf margin is never profitable at the first best") {
        CHECK(pairwise_swap_margin(x, net, 0, 1) <= 0.0);
        CHECK(pairwise_swap_margin(x, net, 1, 0) <= 0.0);
    }
    SUBCASE("directed networks are rejected") {
        const auto tree = catalog_network("tree7");
        const Contract y{Eigen::VectorXd::Ones(7)};
        CHECK_THROWS_AS(pairwise_swap_margin(y, tree, 0, 1), std::invalid_argument);
    }
    SUBCASE("equal neighbor sums kill the margin whatever the quantities") {
        // Undirected 4-cycle: opposite corners share their neighborhood.
        DirectedNetwork cycle(4);
        for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}}) {
            cycle.add_edge(i, j);
            cycle.add_edge(j, i);
        }
        const Contract y{Eigen::Vector4d(5.0, 1.0, 2.0, 1.0)};
        CHECK(pairwise_swap_margin(y, cycle, 0, 2) == 0.0);
        const ModelParams p{1.0, 0.2, std::nullopt};
        // Symmetric positions with equal quantities also have no first-order
        // welfare gradient between them.
        const Contract even{Eigen::Vector4d(2.0, 1.0, 2.0, 1.0)};
        CHECK(marginal_transfer_welfare(even, cycle, p, 0, 2) == 0.0);
    }
    SUBCASE("profitable swaps always show in the margin") {
        Rng rng(83);
        std::uint64_t state = 29;
        for (int trial = 0; trial < 200; ++trial) {
            const auto graph = random_undirected(6, 0.5, rng);
            const auto params = params_for(graph);
            const auto contract = random_contract(6, state);
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j) {
                    if (!graph.edge(i, j)) continue;
                    const double gain =
                        deviation_gains(contract, graph, params, Deviation{{i, j}, {j, i}}).sum();
                    if (gain > kGainTolerance)
                        CHECK(pairwise_swap_margin(contract, graph, i, j) > kGainTolerance);
                }
        }
    }
}

TEST_CASE("marginal transfer welfare matches a central difference and vanishes at the optimum") {
    Rng rng(89);
    std::uint64_t state = 31;
    for (int trial = 0; trial < 25; ++trial) {
        const auto net = random_digraph(6, 0.4, rng);
        const auto p = params_for(net);
        const auto x = first_best(net, p);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                if (i == j) continue;
                CHECK(std::abs(marginal_transfer_welfare(x, net, p, i, j)) < 1e-8);
            }
        // Central difference is exact for a quadratic objective.
        const auto y = random_contract(6, state, 3.0);
        const int i = static_cast<int>(oracles::splitmix(state) % 6);
        const int j = (i + 1 + static_cast<int>(oracles::splitmix(state) % 5)) % 6;
        const double eps = 1e-4;
        Eigen::VectorXd up = y.x, down = y.x;
        up(i) -= eps;
        up(j) += eps;
        down(i) += eps;
        down(j) -= eps;
        const double fd =
            (welfare(Contract{up.cwiseMax(0.0)}, net, p) - welfare(Contract{down.cwiseMax(0.0)}, net, p)) /
            (2 * eps);
        if (up.minCoeff() >= 0.0 && down.minCoeff() >= 0.0)
            CHECK(marginal_transfer_welfare(y, net, p, i, j) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("moving mass toward an under-served universal root raises welfare") {
    Rng rng(97);
    for (int trial = 0; trial < 10; ++trial) {
        const auto net = random_single_root_universal(8, rng);
        const auto p = params_for(net);
        const auto tiers = classify(net).hierarchy->tiers;
        REQUIRE(tiers.size() >= 3);
        const int root = tiers[0][0];
        auto x = first_best(net, p);
        for (int i : tiers[2]) {
            // Force the root below agent i, as a transfer-proof contract would.
            Eigen::VectorXd y = x.x;
            y(root) = y(i) - 0.5;
            if (y(root) < 0.0) continue;
            CHECK(marginal_transfer_welfare(Contract{y}, net, p, i, root) > 0.0);
        }
    }
}

TEST_CASE("swap gains are antisymmetric between a contract and its swapped image") {
    Rng rng(101);
    std::uint64_t state = 37;
    for (int trial = 0; trial < 50; ++trial) {
        const auto net = random_digraph(6, 0.5, rng);
        const ModelParams p{1.0, 0.15, std::nullopt};
        const auto x = random_contract(6, state);
        const int i = static_cast<int>(oracles::splitmix(state) % 6);
        const int j = (i + 1 + static_cast<int>(oracles::splitmix(state) % 5)) % 6;
        const std::vector<int> coalition = i < j ? std::vector<int>{i, j} : std::vector<int>{j, i};
        const Deviation swap{coalition, {coalition[1], coalition[0]}};
        Eigen::VectorXd swapped = x.x;
        std::swap(swapped(i), swapped(j));
        const double forward = deviation_gains(x, net, p, swap).sum();
        const double backward = deviation_gains(Contract{swapped}, net, p, swap).sum();
        CHECK(forward == doctest::Approx(-backward).epsilon(1e-10));
    }
}

TEST_CASE("aggregated external-flow total matches direct gains on uniform-weight coalitions") {
    std::uint64_t state = 41;
    SUBCASE("undirected triangle inside a bigger graph") {
        Rng rng(103);
        for (int trial = 0; trial < 30; ++trial) {
            auto net = random_digraph(6, 0.3, rng);
            for (int i : {0, 1, 2})
                for (int j : {0, 1, 2})
                    if (i != j && !net.edge(i, j)) net.add_edge(i, j);
            const ModelParams p{1.0, 0.2, std::nullopt};
            const auto x = random_contract(6, state);
            const Deviation dev{{0, 1, 2}, {1, 2, 0}};
            const double direct = deviation_gains(x, net, p, dev).sum();
            double flow = 0.0;
            for (std::size_t k = 0; k < dev.coalition.size(); ++k) {
                const int agent = dev.coalition[k];
                for (int j : net.influencers(agent))
                    if (j > 2) flow += (x.x(dev.images[k]) - x.x(agent)) * x.x(j);
            }
            CHECK(direct == doctest::Approx(p.alpha * flow).epsilon(1e-12));
        }
    }
    SUBCASE("cyclic triangle has uniform weight one and still cancels") {
        DirectedNetwork net(5);
        net.add_edge(0, 1);
        net.add_edge(1, 2);
        net.add_edge(2, 0);
        net.add_edge(0, 3);
        net.add_edge(4, 1);
        const ModelParams p{1.0, 0.2, std::nullopt};
        const auto x = random_contract(5, state);
        const Deviation dev{{0, 1, 2}, {2, 0, 1}};
        const double direct = deviation_gains(x, net, p, dev).sum();
        double flow = 0.0;
        for (std::size_t k = 0; k < dev.coalition.size(); ++k) {
            const int agent = dev.coalition[k];
            for (int j : net.influencers(agent))
                if (j > 2) flow += (x.x(dev.images[k]) - x.x(agent)) * x.x(j);
        }
        CHECK(direct == doctest::Approx(p.alpha * flow).epsilon(1e-12));
    }
    SUBCASE("mixed internal weights break the cancellation") {
        DirectedNetwork net(3);
        net.add_edge(0, 1);
        net.add_edge(1, 0);  // pair (0,1) weight 2
        net.add_edge(2, 0);  // pair (0,2) weight 1
        net.add_edge(2, 1);  // pair (1,2) weight 1
        const ModelParams p{1.0, 0.2, std::nullopt};
        const Contract x{Eigen::Vector3d(1.0, 2.0, 3.0)};
        const Deviation dev{{0, 1, 2}, {1, 2, 0}};
        const double direct = deviation_gains(x, net, p, dev).sum();
        CHECK(std::abs(direct - 0.0) > 1e-6);  // external flow is empty here, yet gains are not
    }
}

TEST_CASE("strictly-Pareto violations are always transfer violations") {
    Rng rng(107);
    std::uint64_t state = 43;
    int observed = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto net = random_digraph(5, 0.5, rng);
        const ModelParams p{1.0, 0.2, std::nullopt};
        const auto x = random_contract(5, state);
        const auto group = verify_group_ic(x, net, p, 5);
        const auto transfers = verify_group_ic_transfers(x, net, p, 5);
        std::set<std::pair<std::vector<int>, std::vector<int>>> transfer_set;
        for (const auto& v : transfers.violations)
            transfer_set.insert({v.deviation.coalition, v.deviation.images});
        for (const auto& v : group.violations) {
            ++observed;
            CHECK(transfer_set.count({v.deviation.coalition, v.deviation.images}) == 1);
        }
    }
    CHECK(observed > 0);  // the property was actually exercised
}

TEST_CASE("verifier engine matches a brute-force reference") {
    Rng rng(211);
    std::uint64_t state = 53;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + trial % 3;
        const auto net = random_digraph(n, 0.5, rng);
        const ModelParams p{1.0, 0.15, std::nullopt};
        const auto x = random_contract(n, state);

        struct Entry {
            std::vector<int> coalition, images;
            double total;
        };
        std::vector<Entry> group_ref, transfer_ref;
        for (const auto& s : oracles::brute_force_adjacent_subsets(net, 2, n)) {
            std::vector<int> images = s;
            while (std::next_permutation(images.begin(), images.end())) {
                const auto gains = deviation_gains(x, net, p, Deviation{s, images});
                const double total = gains.sum();
                if (gains.minCoeff() > kGainTolerance) group_ref.push_back({s, images, total});
                if (total > kGainTolerance) transfer_ref.push_back({s, images, total});
            }
        }

        const auto group = verify_group_ic(x, net, p, n);
        REQUIRE(group.violations.size() == group_ref.size());
        for (std::size_t k = 0; k < group_ref.size(); ++k) {
            CHECK(group.violations[k].deviation.coalition == group_ref[k].coalition);
            CHECK(group.violations[k].deviation.images == group_ref[k].images);
        }
        const auto transfers = verify_group_ic_transfers(x, net, p, n);
        REQUIRE(transfers.violations.size() == transfer_ref.size());
        for (std::size_t k = 0; k < transfer_ref.size(); ++k) {
            CHECK(transfers.violations[k].deviation.coalition == transfer_ref[k].coalition);
            CHECK(transfers.violations[k].deviation.images == transfer_ref[k].images);
            CHECK(transfers.violations[k].total ==
                  doctest::Approx(transfer_ref[k].total).epsilon(1e-10));
        }
    }
}

TEST_CASE("reports are identical for any worker count") {
    Rng rng(109);
    const auto net = random_undirected(8, 0.5, rng);
    const ModelParams p{1.0, 0.05, std::nullopt};
    std::uint64_t state = 47;
    const auto x = random_contract(8, state);
    const auto serial = verify_group_ic_transfers(x, net, p, 5, true, 1);
    const auto parallel = verify_group_ic_transfers(x, net, p, 5, true, 4);
    CHECK(to_json(serial).dump() == to_json(parallel).dump());
    const auto group_serial = verify_group_ic(x, net, p, 5, true, 1);
    const auto group_parallel = verify_group_ic(x, net, p, 5, true, 3);
    CHECK(to_json(group_serial).dump() == to_json(group_parallel).dump());
}

TEST_CASE("individual incentive compatibility reduces to nonnegative payoffs") {
    const auto net = catalog_network("line5");
    // Mild externalities: every truthful payoff is positive and the menu is safe.
    const auto p = params_for(net, 1.0, 0.3);
    const auto x = first_best(net, p);
    CHECK(verify_individual_ic(x, net, p).pass);

    // An absurdly large action makes its own utility negative.
    Eigen::VectorXd y = x.x;
    y(0) = 100.0;
    const auto report = verify_individual_ic(Contract{y}, net, p);
    CHECK_FALSE(report.pass);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].deviation.coalition == std::vector<int>{0});

    // At strong externalities the first best can leave a pure influencer with
    // a negative payoff, and the verdict must track the sign exactly.
    const auto strong = params_for(net, 1.0, 0.8);
    const auto xs = first_best(net, strong);
    double worst = 0.0;
    for (int i = 0; i < net.size(); ++i) worst = std::min(worst, utility(i, xs, net, strong));
    CHECK(verify_individual_ic(xs, net, strong).pass == (worst >= -kGainTolerance));
}

TEST_CASE("known identities shrink the coalition pool") {
    const auto net = catalog_network("singleroot7");
    const auto p = params_for(net);
    const auto x = first_best(net, p);

    const auto unrestricted = verify_group_ic_transfers(x, net, p, 6);
    CHECK_FALSE(unrestricted.pass);

    const auto root_known =
        verify_with_known_identities(x, net, p, {0}, VerifyMode::GroupTransfers, 6);
    CHECK(root_known.pass);
    CHECK(root_known.coalitions_examined < unrestricted.coalitions_examined);

    std::vector<int> everyone{0, 1, 2, 3, 4, 5, 6};
    const auto all_known =
        verify_with_known_identities(x, net, p, everyone, VerifyMode::GroupTransfers, 6);
    CHECK(all_known.pass);
    CHECK(all_known.coalitions_examined == 0);

    const auto none_known = verify_with_known_identities(x, net, p, {}, VerifyMode::GroupTransfers, 6);
    CHECK(to_json(none_known).dump() == to_json(unrestricted).dump());
}

TEST_CASE("counterexample search across families") {
    const std::vector<std::pair<VerifyMode, bool>> transfer_adjacent = {
        {VerifyMode::GroupTransfers, true}};
    SUBCASE("undirected instances produce no findings") {
        const auto records = search_counterexample(
            make_family_generator("undirected", 8, 6, 0.5, 1234), {0.1, 0.2}, transfer_adjacent);
        for (const auto& rec : records)
            if (rec.feasible) CHECK(rec.pass);
    }
    SUBCASE("hierarchies without transfers produce no findings") {
        const auto records = search_counterexample(
            make_family_generator("hierarchy", 8, 7, 0.4, 999), {0.05, 0.1}, {{VerifyMode::Group, true}});
        for (const auto& rec : records)
            if (rec.feasible) CHECK(rec.pass);
    }
    SUBCASE("nested hierarchies fail with a root pair among the minimal violations") {
        const auto records = search_counterexample(make_family_generator("nested", 6, 0, 0.0, 77),
                                                   {0.05}, transfer_adjacent);
        REQUIRE(!records.empty());
        for (const auto& rec : records) {
            if (!rec.feasible) continue;
            CHECK_FALSE(rec.pass);
            REQUIRE(!rec.minimal_violations.empty());
            const auto net = DirectedNetwork::from_edges(rec.n, rec.edges);
            bool root_pair = false;
            for (const auto& v : rec.minimal_violations)
                for (int member : v.deviation.coalition)
                    if (net.influencers(member).empty()) root_pair = true;
            CHECK(root_pair);
        }
    }
}

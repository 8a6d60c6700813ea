#include "netcon/families.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace netcon {

namespace {

int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Distributes n agents over `tiers` nonempty tiers, in agent-index order.
std::vector<std::vector<int>> split_tiers(int n, int tiers, Rng& rng) {
    std::vector<int> sizes(tiers, 1);
    for (int extra = n - tiers; extra > 0; --extra) ++sizes[pick(rng, 0, tiers - 1)];
    std::vector<std::vector<int>> out(tiers);
    int agent = 0;
    for (int m = 0; m < tiers; ++m)
        for (int s = 0; s < sizes[m]; ++s) out[m].push_back(agent++);
    return out;
}

}  // namespace

DirectedNetwork random_digraph(int n, double p, Rng& rng) {
    while (true) {
        DirectedNetwork net(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && coin(rng, p)) net.add_edge(i, j);
        if (net.edge_count() > 0) return net;
    }
}

DirectedNetwork random_undirected(int n, double p, Rng& rng) {
    while (true) {
        DirectedNetwork net(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (coin(rng, p)) {
                    net.add_edge(i, j);
                    net.add_edge(j, i);
                }
        if (net.edge_count() > 0) return net;
    }
}

DirectedNetwork random_hierarchy(int n, int tiers, Rng& rng) {
    if (tiers < 2 || tiers > n) throw std::invalid_argument("need 2 <= tiers <= n");
    const auto layout = split_tiers(n, tiers, rng);
    DirectedNetwork net(n);
    for (int m = 1; m < tiers; ++m)
        for (int i : layout[m]) {
            const int anchor = layout[m - 1][pick(rng, 0, static_cast<int>(layout[m - 1].size()) - 1)];
            net.add_edge(i, anchor);
            for (int q = 0; q < m; ++q)
                for (int j : layout[q])
                    if (j != anchor && coin(rng, 0.3)) net.add_edge(i, j);
        }
    return net;
}

DirectedNetwork random_single_root_universal(int n, Rng& rng) {
    if (n < 5) throw std::invalid_argument("need at least 5 agents");
    // Sizes: |A1| = 1, |A2| >= 1, |A3| >= 2, remaining agents spread below.
    const int tiers = std::min(3 + pick(rng, 0, 1), 1 + (n - 1) / 2);
    std::vector<int> sizes(tiers, 1);
    sizes[0] = 1;
    sizes[2] = 2;
    int used = std::accumulate(sizes.begin(), sizes.end(), 0);
    while (used < n) {
        ++sizes[pick(rng, 1, tiers - 1)];
        ++used;
    }
    std::vector<std::vector<int>> layout(tiers);
    int agent = 0;
    for (int m = 0; m < tiers; ++m)
        for (int s = 0; s < sizes[m]; ++s) layout[m].push_back(agent++);

    DirectedNetwork net(n);
    const int root = layout[0][0];
    for (int i = 1; i < n; ++i) net.add_edge(i, root);
    for (int m = 2; m < tiers; ++m)
        for (int i : layout[m]) {
            const int anchor = layout[m - 1][pick(rng, 0, static_cast<int>(layout[m - 1].size()) - 1)];
            net.add_edge(i, anchor);
            for (int q = 1; q < m; ++q)
                for (int j : layout[q])
                    if (j != anchor && coin(rng, 0.3)) net.add_edge(i, j);
        }
    return net;
}

DirectedNetwork random_nested(Rng& rng) {
    const int tiers = pick(rng, 3, 4);
    std::vector<int> sizes(tiers);
    sizes[0] = pick(rng, 2, 3);
    sizes[1] = sizes[0] + pick(rng, 1, 2);
    for (int m = 2; m < tiers; ++m) sizes[m] = sizes[m - 1] + pick(rng, 0, 1);

    std::vector<std::vector<int>> layout(tiers);
    int agent = 0;
    for (int m = 0; m < tiers; ++m)
        for (int s = 0; s < sizes[m]; ++s) layout[m].push_back(agent++);
    const int n = agent;

    DirectedNetwork net(n);
    std::vector<std::vector<int>> influencers(n);
    for (int i : layout[1]) {
        // Tier-two agents pick at least two roots.
        std::vector<int> roots = layout[0];
        std::shuffle(roots.begin(), roots.end(), rng);
        const int take = pick(rng, 2, static_cast<int>(roots.size()));
        influencers[i].assign(roots.begin(), roots.begin() + take);
    }
    for (int m = 2; m < tiers; ++m)
        for (int i : layout[m]) {
            std::vector<int> parents = layout[m - 1];
            std::shuffle(parents.begin(), parents.end(), rng);
            const int take = pick(rng, 1, std::min<int>(2, static_cast<int>(parents.size())));
            std::vector<char> mark(n, 0);
            for (int t = 0; t < take; ++t) {
                const int p = parents[t];
                mark[p] = 1;
                for (int k : influencers[p]) mark[k] = 1;
            }
            for (int k = 0; k < n; ++k)
                if (mark[k]) influencers[i].push_back(k);
        }
    for (int i = 0; i < n; ++i)
        for (int j : influencers[i]) net.add_edge(i, j);
    return net;
}

DirectedNetwork random_regular_tree(Rng& rng) {
    // Strictly decreasing branching keeps the profile short; n stays small.
    static const std::vector<std::vector<int>> profiles = {
        {2}, {3}, {4}, {5}, {2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}, {5, 1}, {5, 2},
        {3, 2, 1}, {4, 2, 1},
    };
    const auto& branching = profiles[pick(rng, 0, static_cast<int>(profiles.size()) - 1)];

    int n = 1;
    int width = 1;
    for (int b : branching) {
        width *= b;
        n += width;
    }
    DirectedNetwork net(n);
    int parent_start = 0, parent_count = 1, next = 1;
    for (int b : branching) {
        for (int p = 0; p < parent_count; ++p)
            for (int c = 0; c < b; ++c) net.add_edge(next + p * b + c, parent_start + p);
        parent_start = next;
        parent_count *= b;
        next += parent_count;
    }
    return net;
}

DirectedNetwork catalog_network(const std::string& name) {
    using E = std::vector<std::pair<int, int>>;
    if (name == "path3")  // directed influence chain 1 -> 2 -> 3, labeled off the identity
        return DirectedNetwork::from_edges(3, E{{0, 1}, {2, 0}});
    if (name == "threeroots4")  // three top agents, one follower influenced by all
        return DirectedNetwork::from_edges(4, E{{3, 0}, {3, 1}, {3, 2}});
    if (name == "tree7")  // oriented tree, branching 3 then 1
        return DirectedNetwork::from_edges(7, E{{1, 0}, {2, 0}, {3, 0}, {4, 1}, {5, 2}, {6, 3}});
    if (name == "line5")
        return DirectedNetwork::from_edges(5, E{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    if (name == "intratier5") {  // 1 > 2 > {3,4,5}, bottom tier mutually linked
        E edges{{1, 0}};
        for (int i : {2, 3, 4}) {
            edges.emplace_back(i, 0);
            edges.emplace_back(i, 1);
            for (int j : {2, 3, 4})
                if (i != j) edges.emplace_back(i, j);
        }
        return DirectedNetwork::from_edges(5, edges);
    }
    if (name == "twostars8") {  // two disjoint undirected 3-stars
        DirectedNetwork net(8);
        for (auto [hub, leaf] : E{{0, 1}, {0, 3}, {0, 4}, {2, 5}, {2, 6}, {2, 7}}) {
            net.add_edge(hub, leaf);
            net.add_edge(leaf, hub);
        }
        return net;
    }
    if (name == "singleroot7")  // root 1, tier two {2,3}, tier three {4..7}, all tied to the root
        return DirectedNetwork::from_edges(
            7, E{{1, 0}, {2, 0}, {3, 0}, {3, 1}, {4, 0}, {4, 1}, {5, 0}, {5, 2}, {6, 0}, {6, 2}});
    if (name == "nested9") {  // three tiers of three with nested influencer sets
        E edges;
        const std::vector<std::vector<int>> infl = {
            {}, {}, {}, {0, 1}, {1, 2}, {1, 2}, {0, 1, 2, 3, 4}, {1, 2, 4}, {1, 2, 5}};
        for (int i = 0; i < 9; ++i)
            for (int j : infl[i]) edges.emplace_back(i, j);
        return DirectedNetwork::from_edges(9, edges);
    }
    throw std::invalid_argument("unknown catalog graph: " + name);
}

std::vector<std::string> catalog_names() {
    return {"path3", "threeroots4", "tree7", "line5", "intratier5", "twostars8", "singleroot7",
            "nested9"};
}

FamilyGenerator make_family_generator(const std::string& family, int count, int n, double p,
                                      std::uint64_t seed) {
    auto rng = std::make_shared<Rng>(seed);
    auto remaining = std::make_shared<int>(count);
    auto gen = [family, n, p, rng, remaining]() -> std::optional<DirectedNetwork> {
        if (*remaining <= 0) return std::nullopt;
        --*remaining;
        if (family == "undirected") return random_undirected(n, p, *rng);
        if (family == "digraph") return random_digraph(n, p, *rng);
        if (family == "hierarchy") return random_hierarchy(n, 2 + static_cast<int>((*rng)() % 3), *rng);
        if (family == "single-root") return random_single_root_universal(n, *rng);
        if (family == "nested") return random_nested(*rng);
        if (family == "regular-tree") return random_regular_tree(*rng);
        throw std::invalid_argument("unknown family: " + family);
    };
    return gen;
}

}  // namespace netcon

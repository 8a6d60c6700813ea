#include "netcon/classify.hpp"

#include <algorithm>
#include <functional>

namespace netcon {

std::vector<std::string> FamilyDescriptor::labels() const {
    std::vector<std::string> out;
    if (undirected) out.push_back("undirected");
    if (hierarchy) out.push_back("hierarchical");
    if (single_root_universal) out.push_back("single-root-universal");
    if (nested_neighborhoods) out.push_back("nested-neighborhoods");
    if (oriented_tree_branching) out.push_back("regular-oriented-tree");
    return out;
}

namespace {

// Longest-path layering of the acyclic influence digraph; nullopt when a
// cycle exists or there is no edge at all (a hierarchy needs M >= 2).
std::optional<TierPartition> layer_hierarchy(const DirectedNetwork& net) {
    const int n = net.size();
    if (net.edge_count() == 0) return std::nullopt;

    std::vector<int> tier(n, -1);
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    bool cyclic = false;
    std::function<int(int)> depth = [&](int i) -> int {
        if (state[i] == 1) { cyclic = true; return 0; }
        if (state[i] == 2) return tier[i];
        state[i] = 1;
        int t = 0;
        for (int j : net.influencers(i)) {
            t = std::max(t, depth(j) + 1);
            if (cyclic) break;
        }
        state[i] = 2;
        tier[i] = t;
        return t;
    };
    for (int i = 0; i < n && !cyclic; ++i) depth(i);
    if (cyclic) return std::nullopt;

    const int m = 1 + *std::max_element(tier.begin(), tier.end());
    TierPartition part;
    part.tiers.assign(m, {});
    for (int i = 0; i < n; ++i) part.tiers[tier[i]].push_back(i);
    return part;
}

bool is_single_root_universal(const DirectedNetwork& net, const TierPartition& part) {
    if (part.tiers[0].size() != 1) return false;
    const int root = part.tiers[0][0];
    for (int i = 0; i < net.size(); ++i)
        if (i != root && !net.edge(i, root)) return false;
    return true;
}

bool is_nested(const DirectedNetwork& net, const TierPartition& part) {
    const int n = net.size();
    const std::vector<int> tier = part.tier_of(n);
    for (int i = 0; i < n; ++i) {
        for (int j : net.influencers(i)) {
            if (tier[j] == 0) continue;  // roots have nothing to inherit
            for (int k : net.influencers(j))
                if (!net.edge(i, k)) return false;
        }
    }
    return true;
}

std::optional<std::vector<int>> oriented_tree_profile(const DirectedNetwork& net,
                                                      const TierPartition& part) {
    const int n = net.size();
    const std::vector<int> tier = part.tier_of(n);
    for (int i = 0; i < n; ++i) {
        if (tier[i] == 0) continue;
        const auto infl = net.influencers(i);
        if (infl.size() != 1 || tier[infl[0]] != tier[i] - 1) return std::nullopt;
    }
    std::vector<int> profile;
    for (int m = 0; m + 1 < part.count(); ++m) {
        int common = -1;
        for (int i : part.tiers[m]) {
            const int preds = static_cast<int>(net.followers(i).size());
            if (common < 0) common = preds;
            if (preds != common) return std::nullopt;
        }
        profile.push_back(common);
    }
    return profile;
}

}  // namespace

FamilyDescriptor classify(const DirectedNetwork& net) {
    FamilyDescriptor d;
    d.undirected = net.is_symmetric();
    d.hierarchy = layer_hierarchy(net);
    if (d.hierarchy) {
        d.single_root_universal = is_single_root_universal(net, *d.hierarchy);
        d.nested_neighborhoods = is_nested(net, *d.hierarchy);
        d.oriented_tree_branching = oriented_tree_profile(net, *d.hierarchy);
    }
    return d;
}

}  // namespace netcon

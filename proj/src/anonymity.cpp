#include "netcon/anonymity.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "netcon/coalitions.hpp"

namespace netcon {

namespace {

constexpr int kMaxEnumerable = 9;

void check_enumerable(int n) {
    if (n > kMaxEnumerable)
        throw std::invalid_argument("factorial enumeration is limited to 9 agents");
}

// New index i takes the role of old index perm[i].
DirectedNetwork relabel(const DirectedNetwork& net, const std::vector<int>& perm) {
    const int n = net.size();
    DirectedNetwork out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && net.edge(perm[i], perm[j])) out.add_edge(i, j);
    return out;
}

std::vector<int> inverse(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
    return inv;
}

}  // namespace

GraphCode encode(const DirectedNetwork& net) {
    check_enumerable(net.size());
    GraphCode code;
    const int n = net.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!net.edge(i, j)) continue;
            const int bit = i * n + j;
            if (bit < 64)
                code.lo |= std::uint64_t{1} << bit;
            else
                code.hi |= std::uint64_t{1} << (bit - 64);
        }
    return code;
}

DirectedNetwork decode(const GraphCode& code, int n) {
    check_enumerable(n);
    DirectedNetwork net(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int bit = i * n + j;
            const bool set = bit < 64 ? (code.lo >> bit) & 1 : (code.hi >> (bit - 64)) & 1;
            if (set) net.add_edge(i, j);
        }
    return net;
}

void Labeling::validate(int n) const {
    if (static_cast<int>(location.size()) != n)
        throw std::invalid_argument("labeling must cover all agents");
    std::vector<char> seen(n, 0);
    for (int l : location) {
        if (l < 0 || l >= n) throw std::invalid_argument("location out of range");
        if (seen[l]) throw std::invalid_argument("labeling must be a bijection");
        seen[l] = 1;
    }
}

ArchitectureClass equivalence_class(const DirectedNetwork& net) {
    const int n = net.size();
    check_enumerable(n);

    ArchitectureClass cls;
    cls.n = n;

    std::set<GraphCode> members;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    bool first = true;
    std::vector<int> best_perm = perm;
    do {
        const GraphCode code = encode(relabel(net, perm));
        members.insert(code);
        if (first || code < cls.representative) {
            cls.representative = code;
            best_perm = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    cls.members.assign(members.begin(), members.end());
    // representative R = relabel(net, best_perm): location l holds agent
    // best_perm[l], so the assignment is the inverse permutation.
    cls.canonical_assignment.location = inverse(best_perm);
    return cls;
}

InformationCell information_cell(const DirectedNetwork& net, int agent, InfoLevel level) {
    const int n = net.size();
    check_enumerable(n);
    if (agent < 0 || agent >= n) throw std::out_of_range("agent out of range");

    const ArchitectureClass cls = equivalence_class(net);
    const DirectedNetwork rep = cls.representative_network();
    const int own_location = cls.canonical_assignment.location[agent];
    const std::vector<int> own_influencers = net.influencers(agent);

    InformationCell cell;
    cell.agent = agent;
    cell.level = level;

    std::set<GraphCode> members;
    std::vector<int> assign(n);
    std::iota(assign.begin(), assign.end(), 0);
    do {
        if (assign[agent] != own_location) continue;
        // Candidate labeled graph h with h_ij = R_{assign[i], assign[j]}.
        const DirectedNetwork h = relabel(rep, assign);
        if (level == InfoLevel::LocationPlusInNeighbors && h.influencers(agent) != own_influencers)
            continue;
        members.insert(encode(h));
    } while (std::next_permutation(assign.begin(), assign.end()));

    cell.members.assign(members.begin(), members.end());
    return cell;
}

Eigen::VectorXd menu_game(const Contract& menu, const std::vector<int>& announcements,
                          const DirectedNetwork& net, const ModelParams& params) {
    const int n = net.size();
    if (menu.size() != n) throw std::invalid_argument("menu length does not match agent count");
    if (static_cast<int>(announcements.size()) != n)
        throw std::invalid_argument("one announcement per agent required");

    std::vector<char> taken(n, 0);
    bool collision = false;
    for (int l : announcements) {
        if (l < 0 || l >= n) throw std::out_of_range("announced location out of range");
        if (taken[l]) collision = true;
        taken[l] = 1;
    }
    if (collision) return Eigen::VectorXd::Zero(n);

    Eigen::VectorXd quantities(n);
    for (int i = 0; i < n; ++i) quantities(i) = menu.x(announcements[i]);
    const Contract chosen{quantities};
    Eigen::VectorXd payoffs(n);
    for (int i = 0; i < n; ++i) payoffs(i) = utility(i, chosen, net, params);
    return payoffs;
}

bool neighbor_announcements_consistent(const std::vector<LocationAnnouncement>& profile,
                                       const DirectedNetwork& representative) {
    const int n = representative.size();
    if (static_cast<int>(profile.size()) != n) return false;

    std::vector<char> taken(n, 0);
    for (const auto& ann : profile) {
        if (ann.location < 0 || ann.location >= n || taken[ann.location]) return false;
        taken[ann.location] = 1;
    }
    for (const auto& ann : profile) {
        std::vector<int> claimed = ann.influencer_locations;
        std::sort(claimed.begin(), claimed.end());
        if (claimed != representative.influencers(ann.location)) return false;
    }
    return true;
}

MechanismAudit audit_neighbor_mechanism(const Contract& x, const DirectedNetwork& net,
                                        const ModelParams& params, int max_size,
                                        bool adjacency_required) {
    const int n = net.size();
    if (x.size() != n) throw std::invalid_argument("contract length does not match agent count");
    const ArchitectureClass cls = equivalence_class(net);
    const DirectedNetwork rep = cls.representative_network();
    const std::vector<int>& loc = cls.canonical_assignment.location;

    MechanismAudit audit;
    const int cap = std::min(max_size, n);
    if (cap < 2) return audit;

    CoalitionStream stream(net, 2, cap,
                           adjacency_required ? CoalitionMode::AdjacentCliques
                                              : CoalitionMode::AllSubsets);
    std::vector<int> announced(n);
    while (auto coalition = stream.next()) {
        const auto& s = *coalition;
        std::vector<int> images = s;
        while (std::next_permutation(images.begin(), images.end())) {
            ++audit.deviations_examined;

            for (int i = 0; i < n; ++i) announced[i] = loc[i];
            for (std::size_t k = 0; k < s.size(); ++k) announced[s[k]] = loc[images[k]];

            // Coordinated but truthful influencer reporting: everyone maps
            // his true influencers through the announced locations.
            std::vector<LocationAnnouncement> profile(n);
            for (int i = 0; i < n; ++i) {
                profile[i].location = announced[i];
                for (int j : net.influencers(i)) profile[i].influencer_locations.push_back(announced[j]);
            }

            MechanismAuditRecord rec;
            rec.deviation.coalition = s;
            rec.deviation.images = images;
            rec.consistent = neighbor_announcements_consistent(profile, rep);
            if (!rec.consistent) continue;

            ++audit.consistent_count;
            const Eigen::VectorXd gains = deviation_gains(x, net, params, rec.deviation);
            rec.total_gain = gains.sum();
            for (std::size_t k = 0; k < s.size(); ++k)
                if (std::abs(x.x(images[k]) - x.x(s[k])) > 1e-12) rec.allocation_changed = true;
            if (rec.allocation_changed || rec.total_gain > kGainTolerance) audit.sound = false;
            audit.consistent_deviations.push_back(std::move(rec));
        }
    }
    return audit;
}

}  // namespace netcon

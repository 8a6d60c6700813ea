#ifndef NETCON_ANONYMITY_HPP
#define NETCON_ANONYMITY_HPP

#include <compare>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "netcon/network.hpp"
#include "netcon/solver.hpp"
#include "netcon/verifier.hpp"

namespace netcon {

/// Row-major adjacency bits of a labeled graph, n <= 9.
struct GraphCode {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    auto operator<=>(const GraphCode&) const = default;
};

GraphCode encode(const DirectedNetwork& net);
DirectedNetwork decode(const GraphCode& code, int n);

/// Assignment of agents to locations in the architecture representative.
struct Labeling {
    std::vector<int> location;  // location[agent]

    void validate(int n) const;
};

/// All relabelings of a graph: the anonymized architecture. The
/// representative is the lexicographically minimal adjacency encoding.
struct ArchitectureClass {
    int n = 0;
    GraphCode representative;
    Labeling canonical_assignment;  // maps the input graph onto the representative
    std::vector<GraphCode> members;  // sorted, deduplicated

    std::size_t size() const { return members.size(); }
    DirectedNetwork representative_network() const { return decode(representative, n); }
};

/// Enumerates the equivalence class by brute force; n <= 9.
ArchitectureClass equivalence_class(const DirectedNetwork& net);

enum class InfoLevel { LocationOnly, LocationPlusInNeighbors };

/// Labeled graphs an agent cannot distinguish given his location and,
/// optionally, the identities of his influencers.
struct InformationCell {
    int agent = 0;
    InfoLevel level = InfoLevel::LocationOnly;
    std::vector<GraphCode> members;  // sorted
};

InformationCell information_cell(const DirectedNetwork& net, int agent, InfoLevel level);

/// One round of the menu game: if the location choices are a bijection each
/// agent receives the menu entry he claimed, otherwise everyone gets zero.
/// Payoffs are evaluated on the true adjacency.
Eigen::VectorXd menu_game(const Contract& menu, const std::vector<int>& announcements,
                          const DirectedNetwork& net, const ModelParams& params);

/// What an agent submits in the neighbor-announcement mechanism.
struct LocationAnnouncement {
    int location = 0;
    std::vector<int> influencer_locations;
};

/// True iff the locations form a bijection and every agent's announced
/// influencer locations are exactly the influencers of his announced
/// location in the architecture representative.
bool neighbor_announcements_consistent(const std::vector<LocationAnnouncement>& profile,
                                       const DirectedNetwork& representative);

struct MechanismAuditRecord {
    Deviation deviation;
    bool consistent = false;
    double total_gain = 0.0;
    bool allocation_changed = false;
};

struct MechanismAudit {
    std::uint64_t deviations_examined = 0;
    std::uint64_t consistent_count = 0;
    std::vector<MechanismAuditRecord> consistent_deviations;
    /// No consistent deviation changed the allocation or produced a gain
    /// above tolerance.
    bool sound = true;
};

/// Exhausts coalition location permutations with coordinated but truthful
/// influencer reporting (outsiders always truthful) and checks each profile
/// against the consistency rule, evaluating gains at the given contract.
MechanismAudit audit_neighbor_mechanism(const Contract& x, const DirectedNetwork& net,
                                        const ModelParams& params, int max_size,
                                        bool adjacency_required = false);

}  // namespace netcon

#endif

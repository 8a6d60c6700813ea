#ifndef NETCON_CLASSIFY_HPP
#define NETCON_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "netcon/network.hpp"

namespace netcon {

/// Family membership of a network. Labels are not mutually exclusive and
/// the empty set is a valid answer.
struct FamilyDescriptor {
    bool undirected = false;
    std::optional<TierPartition> hierarchy;
    bool single_root_universal = false;
    bool nested_neighborhoods = false;
    /// Predecessor count per tier (tiers 1..M-1) when the network is a
    /// regular oriented tree.
    std::optional<std::vector<int>> oriented_tree_branching;

    bool hierarchical() const { return hierarchy.has_value(); }
    std::vector<std::string> labels() const;
};

/// Structural classification. Hierarchy detection requires the influence
/// digraph (i -> j for g_ij = 1) to be acyclic; tiers come from longest-path
/// layering with the roots (agents with an all-zero row, i.e. no influencers)
/// at tier 1.
FamilyDescriptor classify(const DirectedNetwork& net);

}  // namespace netcon

#endif

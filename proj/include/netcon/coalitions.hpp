#ifndef NETCON_COALITIONS_HPP
#define NETCON_COALITIONS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "netcon/network.hpp"

namespace netcon {

enum class CoalitionMode {
    AdjacentCliques,  // cliques of the symmetrized graph (g_ij + g_ji >= 1 pairwise)
    AllSubsets,       // every agent subset in the size range
};

/// Enumerates coalitions of sizes [min_size, max_size], each exactly once,
/// ordered by size then lexicographically by members. Single consumer.
class CoalitionStream {
public:
    CoalitionStream(const DirectedNetwork& net, int min_size, int max_size,
                    CoalitionMode mode = CoalitionMode::AdjacentCliques);

    std::optional<std::vector<int>> next();

    /// Remaining coalitions, materialized.
    std::vector<std::vector<int>> all();

private:
    std::vector<std::vector<int>> coalitions_;
    std::size_t cursor_ = 0;
};

}  // namespace netcon

#endif

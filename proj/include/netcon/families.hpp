#ifndef NETCON_FAMILIES_HPP
#define NETCON_FAMILIES_HPP

#include <random>
#include <string>
#include <vector>

#include "netcon/network.hpp"
#include "netcon/verifier.hpp"

namespace netcon {

using Rng = std::mt19937_64;

/// Random digraph with independent arcs; at least one edge.
DirectedNetwork random_digraph(int n, double p, Rng& rng);

/// Random undirected graph (both arc directions); at least one edge.
DirectedNetwork random_undirected(int n, double p, Rng& rng);

/// Random hierarchy: acyclic influence with every non-top agent influenced
/// by at least one agent in the tier right above.
DirectedNetwork random_hierarchy(int n, int tiers, Rng& rng);

/// Single root, everyone influenced by it, at least three tiers with two or
/// more agents at tier three.
DirectedNetwork random_single_root_universal(int n, Rng& rng);

/// Nested neighborhoods with >= 2 roots per agent and growing tier sizes.
DirectedNetwork random_nested(Rng& rng);

/// Regular oriented tree with a strictly decreasing branching profile.
DirectedNetwork random_regular_tree(Rng& rng);

/// Named graphs used by the example catalog and the test suites.
DirectedNetwork catalog_network(const std::string& name);
std::vector<std::string> catalog_names();

/// Bounded generator over one of the named families, for counterexample
/// sweeps: family in {undirected, digraph, hierarchy, single-root, nested,
/// regular-tree}.
FamilyGenerator make_family_generator(const std::string& family, int count, int n, double p,
                                      std::uint64_t seed);

}  // namespace netcon

#endif

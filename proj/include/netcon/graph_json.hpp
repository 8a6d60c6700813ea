#ifndef NETCON_GRAPH_JSON_HPP
#define NETCON_GRAPH_JSON_HPP

#include <string>

#include "netcon/network.hpp"

namespace netcon {

/// Parses {"n": int, "edges": [[i, j], ...]} with 1-indexed agents; the pair
/// [i, j] means "i is influenced by j". With "undirected": true every pair
/// is expanded to both directions. Duplicate edges are rejected.
DirectedNetwork load_graph_json(const std::string& text);

DirectedNetwork load_graph_file(const std::string& path);

/// Canonical emission: n plus the sorted 1-indexed directed edge list.
std::string dump_graph_json(const DirectedNetwork& net);

}  // namespace netcon

#endif

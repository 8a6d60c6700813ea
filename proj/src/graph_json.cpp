#include "netcon/graph_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace netcon {

DirectedNetwork load_graph_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw std::invalid_argument("graph JSON needs an integer field \"n\"");
    const int n = doc["n"].get<int>();
    if (n <= 0) throw std::invalid_argument("agent count must be positive");
    const bool undirected = doc.value("undirected", false);

    DirectedNetwork net(n);
    if (!doc.contains("edges")) return net;
    if (!doc["edges"].is_array()) throw std::invalid_argument("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw std::invalid_argument("each edge must be a pair [i, j] of integers");
        const int i = e[0].get<int>(), j = e[1].get<int>();
        if (i < 1 || i > n || j < 1 || j > n)
            throw std::invalid_argument("edge endpoints must be 1-indexed agents");
        if (i == j) throw std::invalid_argument("self-loops are not allowed");
        net.add_edge(i - 1, j - 1);  // throws on duplicates
        if (undirected) net.add_edge(j - 1, i - 1);
    }
    return net;
}

DirectedNetwork load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_graph_json(buffer.str());
}

std::string dump_graph_json(const DirectedNetwork& net) {
    nlohmann::ordered_json doc;
    doc["n"] = net.size();
    auto& edges = doc["edges"] = nlohmann::json::array();
    for (const auto& [i, j] : net.edges()) edges.push_back({i + 1, j + 1});
    return doc.dump();
}

}  // namespace netcon

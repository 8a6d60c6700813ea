#ifndef NETCON_NETWORK_HPP
#define NETCON_NETWORK_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace netcon {

/// Directed influence graph. Entry (i, j) = 1 means agent i receives an
/// externality from agent j ("i is influenced by j"). No self-loops.
class DirectedNetwork {
public:
    explicit DirectedNetwork(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
        if (n <= 0) throw std::invalid_argument("agent count must be positive");
    }

    static DirectedNetwork from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        DirectedNetwork net(n);
        for (const auto& [i, j] : edges) net.add_edge(i, j);
        return net;
    }

    int size() const { return n_; }

    bool edge(int i, int j) const { return adj_[index(i, j)] != 0; }

    void add_edge(int i, int j) {
        if (i == j) throw std::invalid_argument("self-loops are not allowed");
        if (adj_[index(i, j)]) throw std::invalid_argument("duplicate edge");
        adj_[index(i, j)] = 1;
    }

    /// Agents that influence i: {j : g_ij = 1}.
    std::vector<int> influencers(int i) const {
        std::vector<int> out;
        for (int j = 0; j < n_; ++j)
            if (edge(i, j)) out.push_back(j);
        return out;
    }

    /// Agents influenced by i: {k : g_ki = 1}.
    std::vector<int> followers(int i) const {
        std::vector<int> out;
        for (int k = 0; k < n_; ++k)
            if (edge(k, i)) out.push_back(k);
        return out;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (edge(i, j)) out.emplace_back(i, j);
        return out;
    }

    int edge_count() const {
        int m = 0;
        for (auto v : adj_) m += v;
        return m;
    }

    bool is_symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (adj_[index(i, j)] != adj_[index(j, i)]) return false;
        return true;
    }

    bool operator==(const DirectedNetwork& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("agent index out of range");
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_;
    std::vector<std::uint8_t> adj_;
};

/// Homogeneous model: stand-alone marginal utility a > 0, externality
/// strength alpha >= 0, optional marginal cost c in [0, a) for the
/// pricing view. The quadratic coefficient is normalized to 1.
struct ModelParams {
    double a = 1.0;
    double alpha = 0.0;
    std::optional<double> c;

    void validate() const {
        if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
        if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
        if (c && !(*c >= 0.0 && *c < a)) throw std::invalid_argument("c must satisfy 0 <= c < a");
    }
};

/// Ordered tiers A_1..A_M covering all agents; influence only flows from
/// higher tiers (lower index) toward lower tiers (higher index).
struct TierPartition {
    std::vector<std::vector<int>> tiers;

    int count() const { return static_cast<int>(tiers.size()); }

    std::vector<int> tier_of(int n) const {
        std::vector<int> t(n, -1);
        for (int m = 0; m < count(); ++m)
            for (int agent : tiers[m]) t[agent] = m;
        return t;
    }

    /// Re-checks both structural invariants against a network.
    bool valid_for(const DirectedNetwork& net) const {
        const int n = net.size();
        std::vector<int> t = tier_of(n);
        for (int i = 0; i < n; ++i)
            if (t[i] < 0) return false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (net.edge(i, j) && !(t[i] > t[j])) return false;
        for (int i = 0; i < n; ++i) {
            if (t[i] == 0) continue;
            bool has_higher = false;
            for (int j : net.influencers(i))
                if (t[j] < t[i]) { has_higher = true; break; }
            if (!has_higher) return false;
        }
        return true;
    }
};

}  // namespace netcon

#endif

#include "netcon/coalitions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace netcon {

namespace {

using Bitset = std::uint64_t;  // n <= 63 at desk scale

int pick_pivot(Bitset p, Bitset x, const std::vector<Bitset>& nbr) {
    int best = -1, best_count = -1;
    for (Bitset cand = p | x; cand; cand &= cand - 1) {
        const int u = __builtin_ctzll(cand);
        const int count = __builtin_popcountll(p & nbr[u]);
        if (count > best_count) { best_count = count; best = u; }
    }
    return best;
}

// Pivoting Bron-Kerbosch over the symmetrized neighborhood relation.
void bron_kerbosch(Bitset r, Bitset p, Bitset x, const std::vector<Bitset>& nbr,
                   std::vector<Bitset>& maximal) {
    if (p == 0 && x == 0) {
        if (r != 0) maximal.push_back(r);
        return;
    }
    const int pivot = pick_pivot(p, x, nbr);
    for (Bitset cand = p & ~nbr[pivot]; cand; cand &= cand - 1) {
        const int v = __builtin_ctzll(cand);
        const Bitset vbit = Bitset{1} << v;
        bron_kerbosch(r | vbit, p & nbr[v], x & nbr[v], nbr, maximal);
        p &= ~vbit;
        x |= vbit;
    }
}

template <typename Fn>
void for_each_combination(const std::vector<int>& pool, int size, Fn&& fn) {
    const int k = static_cast<int>(pool.size());
    if (size > k) return;
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int pos = size - 1;
        while (pos >= 0 && idx[pos] == k - size + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int q = pos + 1; q < size; ++q) idx[q] = idx[q - 1] + 1;
    }
}

void emit_subsets(Bitset clique, int min_size, int max_size, std::set<Bitset>& out) {
    std::vector<int> members;
    for (Bitset c = clique; c; c &= c - 1) members.push_back(__builtin_ctzll(c));
    const int k = static_cast<int>(members.size());
    for (int size = min_size; size <= std::min(max_size, k); ++size) {
        for_each_combination(members, size, [&](const std::vector<int>& idx) {
            Bitset subset = 0;
            for (int b : idx) subset |= Bitset{1} << members[b];
            out.insert(subset);
        });
    }
}

std::vector<int> unpack(Bitset s) {
    std::vector<int> out;
    for (; s; s &= s - 1) out.push_back(__builtin_ctzll(s));
    return out;
}

}  // namespace

CoalitionStream::CoalitionStream(const DirectedNetwork& net, int min_size, int max_size,
                                 CoalitionMode mode) {
    const int n = net.size();
    if (n > 63) throw std::invalid_argument("coalition enumeration supports up to 63 agents");
    if (!(2 <= min_size && min_size <= max_size && max_size <= n))
        throw std::invalid_argument("need 2 <= min_size <= max_size <= n");

    if (mode == CoalitionMode::AllSubsets) {
        std::vector<int> agents(n);
        std::iota(agents.begin(), agents.end(), 0);
        for (int size = min_size; size <= max_size; ++size) {
            for_each_combination(agents, size, [&](const std::vector<int>& idx) {
                coalitions_.emplace_back(idx);
            });
        }
    } else {
        std::vector<Bitset> nbr(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && (net.edge(i, j) || net.edge(j, i))) nbr[i] |= Bitset{1} << j;
        std::vector<Bitset> maximal;
        bron_kerbosch(0, n == 63 ? ~Bitset{0} : (Bitset{1} << n) - 1, 0, nbr, maximal);
        std::set<Bitset> found;
        for (Bitset clique : maximal) emit_subsets(clique, min_size, max_size, found);
        coalitions_.reserve(found.size());
        for (Bitset s : found) coalitions_.push_back(unpack(s));
    }

    std::sort(coalitions_.begin(), coalitions_.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

std::optional<std::vector<int>> CoalitionStream::next() {
    if (cursor_ >= coalitions_.size()) return std::nullopt;
    return coalitions_[cursor_++];
}

std::vector<std::vector<int>> CoalitionStream::all() {
    std::vector<std::vector<int>> out(coalitions_.begin() + cursor_, coalitions_.end());
    cursor_ = coalitions_.size();
    return out;
}

}  // namespace netcon

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedyldp/model.hpp"
#include "greedyldp/rng.hpp"

namespace greedyldp {

// Undirected simple graph as sorted adjacency lists.
struct Graph {
    long n = 0;
    std::vector<std::vector<int>> adjacency;

    long edge_count() const {
        long m = 0;
        for (const auto& a : adjacency) m += static_cast<long>(a.size());
        return m / 2;
    }
};

// One run of the greedy exploration: the independent set in selection order,
// the blocked complement, and the explored-count trace z[0..T].
struct ExplorationRecord {
    std::vector<int> active;
    std::vector<int> blocked;
    std::vector<long> z_steps;
    long stop_time = 0;
};

struct SetCheck {
    bool independent = false;
    bool maximal = false;
};

namespace detail {

// Lexicographic rank -> (i, j) over pairs i < j of {0..n-1}. Row i starts at
// offset i*(2n-i-1)/2.
inline std::pair<int, int> pair_from_rank(long n, double rank) {
    // i is the largest row with offset(i) <= rank; solve the quadratic, then fix up.
    const double nn = static_cast<double>(n);
    double guess = std::floor(((2.0 * nn - 1.0) - std::sqrt((2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * rank)) / 2.0);
    long i = static_cast<long>(std::max(0.0, std::min(guess, nn - 2.0)));
    auto offset = [nn](long r) { return static_cast<double>(r) * (2.0 * nn - static_cast<double>(r) - 1.0) / 2.0; };
    while (i > 0 && offset(i) > rank) --i;
    while (i + 2 < n && offset(i + 1) <= rank) ++i;
    const long j = i + 1 + static_cast<long>(rank - offset(i));
    return {static_cast<int>(i), static_cast<int>(j)};
}

} // namespace detail

// G(n, c/n) sample by geometric skips over the n(n-1)/2 pair ranks, so the
// cost is proportional to n plus the number of edges rather than n^2.
inline Graph sample_er_graph(const ModelParams& params, std::uint64_t seed) {
    const long n = params.require_n();
    const double p = params.edge_probability();
    Graph g;
    g.n = n;
    g.adjacency.assign(static_cast<std::size_t>(n), {});
    const double total_pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    Xoshiro256pp rng(seed);

    auto add_edge = [&g](int u, int v) {
        g.adjacency[static_cast<std::size_t>(u)].push_back(v);
        g.adjacency[static_cast<std::size_t>(v)].push_back(u);
    };

    if (p >= 1.0) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) add_edge(i, j);
    } else {
        const double lq = std::log1p(-p);
        double rank = -1.0;
        for (;;) {
            const double gap = std::floor(std::log(rng.uniform_pos()) / lq);
            // next selected pair sits at rank + gap + 1, valid up to total_pairs - 1
            if (gap >= total_pairs - rank - 1.0) break;
            rank += gap + 1.0;
            const auto [u, v] = detail::pair_from_rank(n, rank);
            add_edge(u, v);
        }
    }
    for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
    return g;
}

// The exploration loop: pick a uniformly random unexplored vertex, activate
// it, block its unexplored neighbors, repeat until nothing is unexplored.
// The unexplored pool is a swap-with-last compaction array, so both the
// uniform pick and each removal are O(1).
inline ExplorationRecord greedy_explore(const Graph& graph, std::uint64_t seed) {
    const long n = graph.n;
    Xoshiro256pp rng(seed);

    std::vector<int> pool(static_cast<std::size_t>(n));
    std::vector<long> pos(static_cast<std::size_t>(n));
    for (long v = 0; v < n; ++v) {
        pool[static_cast<std::size_t>(v)] = static_cast<int>(v);
        pos[static_cast<std::size_t>(v)] = v;
    }
    long pool_size = n;
    auto remove_vertex = [&](int v) {
        const long at = pos[static_cast<std::size_t>(v)];
        const int last = pool[static_cast<std::size_t>(pool_size - 1)];
        pool[static_cast<std::size_t>(at)] = last;
        pos[static_cast<std::size_t>(last)] = at;
        pos[static_cast<std::size_t>(v)] = -1;
        --pool_size;
    };

    ExplorationRecord rec;
    rec.z_steps.push_back(0);
    while (pool_size > 0) {
        const int v = pool[rng.uniform_below(static_cast<std::uint64_t>(pool_size))];
        remove_vertex(v);
        rec.active.push_back(v);
        long newly_blocked = 0;
        for (int w : graph.adjacency[static_cast<std::size_t>(v)]) {
            if (pos[static_cast<std::size_t>(w)] >= 0) {
                remove_vertex(w);
                rec.blocked.push_back(w);
                ++newly_blocked;
            }
        }
        rec.z_steps.push_back(rec.z_steps.back() + 1 + newly_blocked);
    }
    rec.stop_time = static_cast<long>(rec.active.size());
    return rec;
}

// independent: no edge inside the set; maximal: independent and every
// outside vertex has a neighbor in the set.
inline SetCheck verify_independent_maximal(const Graph& graph, const std::vector<int>& vertex_set) {
    std::vector<char> in_set(static_cast<std::size_t>(graph.n), 0);
    for (int v : vertex_set) {
        if (v < 0 || v >= graph.n)
            throw std::invalid_argument("verify_independent_maximal: vertex index out of range");
        in_set[static_cast<std::size_t>(v)] = 1;
    }
    SetCheck result;
    result.independent = true;
    for (int v : vertex_set)
        for (int w : graph.adjacency[static_cast<std::size_t>(v)])
            if (in_set[static_cast<std::size_t>(w)]) result.independent = false;
    if (!result.independent) return result;

    result.maximal = true;
    for (long v = 0; v < graph.n; ++v) {
        if (in_set[static_cast<std::size_t>(v)]) continue;
        bool covered = false;
        for (int w : graph.adjacency[static_cast<std::size_t>(v)])
            if (in_set[static_cast<std::size_t>(w)]) { covered = true; break; }
        if (!covered) { result.maximal = false; break; }
    }
    return result;
}

// Edge-list text format: "n m" then m sorted lines "u v" with u < v.
inline void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.n << ' ' << g.edge_count() << '\n';
    for (long u = 0; u < g.n; ++u)
        for (int v : g.adjacency[static_cast<std::size_t>(u)])
            if (v > u) os << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
    long n = 0, m = 0;
    if (!(is >> n >> m) || n < 0 || m < 0)
        throw std::invalid_argument("read_edge_list: bad header line");
    Graph g;
    g.n = n;
    g.adjacency.assign(static_cast<std::size_t>(n), {});
    for (long e = 0; e < m; ++e) {
        long u = 0, v = 0;
        if (!(is >> u >> v)) throw std::invalid_argument("read_edge_list: truncated edge list");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::invalid_argument("read_edge_list: invalid edge");
        g.adjacency[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
        g.adjacency[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
    }
    for (auto& a : g.adjacency) {
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::invalid_argument("read_edge_list: duplicate edge");
    }
    return g;
}

} // namespace greedyldp

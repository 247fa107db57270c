#ifndef RCM_TEST_HELPERS_HPP
#define RCM_TEST_HELPERS_HPP

// Test-only brute-force oracles. Deliberately independent of the library's
// search paths: they use only colour_of queries and naive enumeration.

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "rcm/colouring.hpp"

namespace rcm::test {

inline Colouring pentagon() {
    std::vector<std::pair<int, int>> cycle{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    return Colouring::from_red_pairs(5, cycle);
}

inline Colouring complete(int n, Colour c) {
    std::vector<std::pair<int, int>> reds;
    if (c == Colour::red)
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) reds.emplace_back(u, v);
    return Colouring::from_red_pairs(n, reds);
}

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            f(pick);
            return;
        }
        for (int v = start; v < n; ++v) {
            pick[static_cast<std::size_t>(depth)] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
}

inline bool brute_is_clique(const Colouring& g, const std::vector<int>& verts, Colour c) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (g.colour_of(verts[i], verts[j]) != c) return false;
    return true;
}

// Components by naive DFS over the adjacency relation.
inline std::vector<std::vector<int>> brute_components(const Colouring& g, Colour c) {
    int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp;
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v = 0; v < n; ++v)
                if (v != u && !seen[static_cast<std::size_t>(v)] && g.colour_of(u, v) == c) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Exact maximum disjoint packing of colour-c r-cliques among `verts`.
inline int brute_max_packing(const Colouring& g, Colour c, int r,
                             const std::vector<int>& verts) {
    std::vector<std::vector<int>> cliques;
    for_each_subset(static_cast<int>(verts.size()), r, [&](const std::vector<int>& idx) {
        std::vector<int> q;
        for (int i : idx) q.push_back(verts[static_cast<std::size_t>(i)]);
        if (brute_is_clique(g, q, c)) cliques.push_back(q);
    });
    std::function<int(std::size_t, std::vector<char>&)> rec =
        [&](std::size_t at, std::vector<char>& used) -> int {
        if (at == cliques.size()) return 0;
        int best = rec(at + 1, used);
        bool free = true;
        for (int v : cliques[at])
            if (used[static_cast<std::size_t>(v)]) free = false;
        if (free) {
            for (int v : cliques[at]) used[static_cast<std::size_t>(v)] = 1;
            best = std::max(best, 1 + rec(at + 1, used));
            for (int v : cliques[at]) used[static_cast<std::size_t>(v)] = 0;
        }
        return best;
    };
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    return rec(0, used);
}

// Exact maximum over colour components (the quantity the oracle computes).
inline int brute_max_connected_packing(const Colouring& g, Colour c, int r) {
    int best = 0;
    for (const auto& comp : brute_components(g, c))
        best = std::max(best, brute_max_packing(g, c, r, comp));
    return best;
}

}  // namespace rcm::test

#endif

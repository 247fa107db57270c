#include "rcm/finder.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace rcm {

namespace {

[[noreturn]] void violate(std::string stage, std::string detail, std::vector<int> evidence = {}) {
    throw structure_violation_error({std::move(stage), std::move(detail), std::move(evidence)});
}

// Lexicographically least vertex of `comp` not in `used`, or -1.
int fresh_vertex(const VertexSet& comp, const VertexSet& used) {
    for (int v = comp.first(); v >= 0; v = comp.next(v + 1))
        if (!used.test(v)) return v;
    return -1;
}

// One unused vertex from each listed component, recorded into `used`.
// Returns false when some component is exhausted.
bool take_transversal(const std::vector<VertexSet>& comps, const std::vector<int>& indices,
                      VertexSet& used, std::vector<int>& out) {
    for (int idx : indices) {
        int v = fresh_vertex(comps[static_cast<std::size_t>(idx)], used);
        if (v < 0) return false;
        used.set(v);
        out.push_back(v);
    }
    return true;
}

std::vector<int> other_components(int count, int except) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i)
        if (i != except) out.push_back(i);
    return out;
}

std::vector<int> sorted_clique(std::vector<int> q) {
    std::sort(q.begin(), q.end());
    return q;
}

}  // namespace

std::pair<Colour, bool> choose_search_colour(const Colouring& g) {
    const auto full = VertexSet::full(static_cast<std::size_t>(g.vertex_count()));
    if (colour_components(g, Colour::red, full).size() == 1) return {Colour::red, false};
    auto blue = colour_components(g, Colour::blue, full);
    if (blue.size() != 1)
        violate("choose-search-colour", "neither colour is connected");
    return {Colour::blue, true};
}

BlueAnalysis analyse_blue_structure(const Colouring& g, const CliquePacking& red_packing,
                                    int r, long long n) {
    const auto ambient = static_cast<std::size_t>(g.vertex_count());
    VertexSet outside = red_packing.covered(ambient).complement();
    if (outside.empty())
        violate("analyse", "no vertices outside the red packing");

    auto comps = colour_components(g, Colour::blue, outside);
    const int comp_count = static_cast<int>(comps.size());

    // Early blue win: n disjoint blue cliques greedily packed in one
    // component are a connected blue n K_r. Leftovers double as the
    // Z diagnostic.
    VertexSet leftover(ambient);
    for (int j = 0; j < comp_count; ++j) {
        const auto& comp = comps[static_cast<std::size_t>(j)];
        auto pack = greedy_clique_packing(g, Colour::blue, r, comp);
        if (static_cast<long long>(pack.size()) >= n) {
            pack.cliques.resize(static_cast<std::size_t>(n));
            return BlueWin{j, std::move(pack.cliques)};
        }
        VertexSet rest = comp;
        rest.and_not(pack.covered(ambient));
        leftover |= rest;
    }

    // r or more components: a transversal of r of them is a new red clique.
    if (comp_count >= r) {
        VertexSet used(ambient);
        std::vector<int> clique;
        std::vector<int> indices(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) indices[static_cast<std::size_t>(i)] = i;
        if (!take_transversal(comps, indices, used, clique))
            violate("analyse", "empty component");  // components are nonempty by construction
        return Augmentation{"component-count", {}, {sorted_clique(clique)}};
    }

    // Red edge inside a component: the edge plus a transversal of r-2 other
    // components is a new red clique.
    for (int j = 0; j < comp_count; ++j) {
        const auto& comp = comps[static_cast<std::size_t>(j)];
        for (int u = comp.first(); u >= 0; u = comp.next(u + 1)) {
            VertexSet reds = g.neighbours(u, Colour::red) & comp;
            reds.remove_below(u + 1);
            int v = reds.first();
            if (v < 0) continue;
            if (comp_count < r - 1)
                violate("analyse",
                        "red edge inside a component but fewer than r-1 components",
                        {u, v});
            std::vector<int> others = other_components(comp_count, j);
            others.resize(static_cast<std::size_t>(r - 2));
            VertexSet used(ambient);
            std::vector<int> clique{u, v};
            if (!take_transversal(comps, others, used, clique))
                violate("analyse", "empty component");
            return Augmentation{"red-edge-inside", {}, {sorted_clique(clique)}};
        }
    }

    if (comp_count != r - 1)
        violate("analyse", "blue-clique component count is " + std::to_string(comp_count) +
                               ", expected " + std::to_string(r - 1));

    BlueStructure s;
    s.components = std::move(comps);
    s.absorbed_z = std::move(leftover);
    s.pairwise_red = true;  // distinct blue components have no blue edges between them
    return s;
}

namespace {

// Per-vertex attachment counts against the blue components.
struct AttachmentTable {
    int r1 = 0;                           // number of components
    std::vector<int> verts;               // the clique, sorted
    std::vector<std::vector<int>> red_in; // red neighbours of vert k in component i
    std::vector<std::vector<int>> blue_in;

    bool fit_select(int k, int i) const { return red_in[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] <= 1; }
    bool fit_complete(int k, int i) const { return red_in[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] == 0; }

    // paired with component i: no blue neighbour in any other component
    bool paired_with(int k, int i) const {
        for (int j = 0; j < r1; ++j)
            if (j != i && blue_in[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] > 0) return false;
        return true;
    }

    bool red_reaching(int k) const {
        for (int i = 0; i < r1; ++i)
            if (red_in[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] == 0) return false;
        return true;
    }
};

AttachmentTable build_attachment(const std::vector<int>& clique, const BlueStructure& s,
                                 const Colouring& g) {
    AttachmentTable t;
    t.r1 = static_cast<int>(s.components.size());
    t.verts = sorted_clique(clique);
    const std::size_t k = t.verts.size();
    t.red_in.assign(k, std::vector<int>(static_cast<std::size_t>(t.r1)));
    t.blue_in.assign(k, std::vector<int>(static_cast<std::size_t>(t.r1)));
    for (std::size_t a = 0; a < k; ++a)
        for (int i = 0; i < t.r1; ++i) {
            const auto& comp = s.components[static_cast<std::size_t>(i)];
            t.red_in[a][static_cast<std::size_t>(i)] =
                static_cast<int>(g.neighbours(t.verts[a], Colour::red).intersection_count(comp));
            t.blue_in[a][static_cast<std::size_t>(i)] =
                static_cast<int>(g.neighbours(t.verts[a], Colour::blue).intersection_count(comp));
        }
    return t;
}

// Kuhn's augmenting-path matching: can every item in `left` be matched to a
// distinct right value under `edge`, respecting preassigned `taken`?
bool matchable(int left_count, int right_count, const std::vector<std::vector<char>>& edge,
               const std::vector<char>& left_active, const std::vector<char>& right_taken) {
    std::vector<int> match_right(static_cast<std::size_t>(right_count), -1);
    auto try_match = [&](auto&& self, int l, std::vector<char>& visited) -> bool {
        for (int rr = 0; rr < right_count; ++rr) {
            if (right_taken[static_cast<std::size_t>(rr)] || visited[static_cast<std::size_t>(rr)] ||
                !edge[static_cast<std::size_t>(l)][static_cast<std::size_t>(rr)])
                continue;
            visited[static_cast<std::size_t>(rr)] = 1;
            if (match_right[static_cast<std::size_t>(rr)] < 0 ||
                self(self, match_right[static_cast<std::size_t>(rr)], visited)) {
                match_right[static_cast<std::size_t>(rr)] = l;
                return true;
            }
        }
        return false;
    };
    for (int l = 0; l < left_count; ++l) {
        if (!left_active[static_cast<std::size_t>(l)]) continue;
        std::vector<char> visited(static_cast<std::size_t>(right_count), 0);
        if (!try_match(try_match, l, visited)) return false;
    }
    return true;
}

// Type (i): a system of distinct representatives, one clique vertex per
// component, each blue to all but at most one vertex of its component.
// Lexicographically least by component order. Left = components here.
std::optional<TypeI> try_type_one(const AttachmentTable& t) {
    const int r1 = t.r1;
    const int k = static_cast<int>(t.verts.size());
    // edge[i][v]: vertex v can represent component i
    std::vector<std::vector<char>> edge(static_cast<std::size_t>(r1),
                                        std::vector<char>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < r1; ++i)
        for (int v = 0; v < k; ++v)
            edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] =
                t.fit_select(v, i) ? 1 : 0;

    std::vector<char> comp_pending(static_cast<std::size_t>(r1), 1);
    std::vector<char> vert_taken(static_cast<std::size_t>(k), 0);
    std::vector<int> selection(static_cast<std::size_t>(r1), -1);
    for (int i = 0; i < r1; ++i) {
        bool placed = false;
        for (int v = 0; v < k && !placed; ++v) {
            if (vert_taken[static_cast<std::size_t>(v)] ||
                !edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)])
                continue;
            comp_pending[static_cast<std::size_t>(i)] = 0;
            vert_taken[static_cast<std::size_t>(v)] = 1;
            if (matchable(r1, k, edge, comp_pending, vert_taken)) {
                selection[static_cast<std::size_t>(i)] = t.verts[static_cast<std::size_t>(v)];
                placed = true;
            } else {
                comp_pending[static_cast<std::size_t>(i)] = 1;
                vert_taken[static_cast<std::size_t>(v)] = 0;
            }
        }
        if (!placed) return std::nullopt;
    }
    return TypeI{std::move(selection)};
}

// Type (ii): three vertices blue-complete to one component, the remaining
// r-3 blue-complete to distinct other components.
std::optional<TypeII> try_type_two(const AttachmentTable& t) {
    const int r1 = t.r1;
    const int k = static_cast<int>(t.verts.size());
    for (int j = 0; j < r1; ++j) {
        std::vector<int> triple_candidates;
        for (int v = 0; v < k; ++v)
            if (t.fit_complete(v, j)) triple_candidates.push_back(v);
        if (static_cast<int>(triple_candidates.size()) < 3) continue;
        const int tc = static_cast<int>(triple_candidates.size());
        for (int a = 0; a < tc; ++a)
            for (int b = a + 1; b < tc; ++b)
                for (int c = b + 1; c < tc; ++c) {
                    std::vector<char> in_triple(static_cast<std::size_t>(k), 0);
                    in_triple[static_cast<std::size_t>(triple_candidates[static_cast<std::size_t>(a)])] = 1;
                    in_triple[static_cast<std::size_t>(triple_candidates[static_cast<std::size_t>(b)])] = 1;
                    in_triple[static_cast<std::size_t>(triple_candidates[static_cast<std::size_t>(c)])] = 1;
                    // assign every remaining vertex a distinct component != j
                    std::vector<std::vector<char>> edge(
                        static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(r1), 0));
                    for (int v = 0; v < k; ++v)
                        for (int i = 0; i < r1; ++i)
                            edge[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] =
                                (i != j && t.fit_complete(v, i)) ? 1 : 0;
                    std::vector<char> vert_pending(static_cast<std::size_t>(k), 1);
                    std::vector<char> comp_taken(static_cast<std::size_t>(r1), 0);
                    comp_taken[static_cast<std::size_t>(j)] = 1;
                    for (int v = 0; v < k; ++v)
                        if (in_triple[static_cast<std::size_t>(v)]) vert_pending[static_cast<std::size_t>(v)] = 0;
                    if (!matchable(k, r1, edge, vert_pending, comp_taken)) continue;
                    // fix the assignment greedily, smallest component first
                    std::vector<int> singles(static_cast<std::size_t>(r1), -1);
                    bool ok = true;
                    for (int v = 0; v < k && ok; ++v) {
                        if (!vert_pending[static_cast<std::size_t>(v)]) continue;
                        bool placed = false;
                        for (int i = 0; i < r1 && !placed; ++i) {
                            if (comp_taken[static_cast<std::size_t>(i)] ||
                                !edge[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)])
                                continue;
                            vert_pending[static_cast<std::size_t>(v)] = 0;
                            comp_taken[static_cast<std::size_t>(i)] = 1;
                            if (matchable(k, r1, edge, vert_pending, comp_taken)) {
                                singles[static_cast<std::size_t>(i)] = t.verts[static_cast<std::size_t>(v)];
                                placed = true;
                            } else {
                                vert_pending[static_cast<std::size_t>(v)] = 1;
                                comp_taken[static_cast<std::size_t>(i)] = 0;
                            }
                        }
                        ok = placed;
                    }
                    if (!ok) continue;
                    TypeII out;
                    out.singles = std::move(singles);
                    out.triple_component = j;
                    out.triple = {t.verts[static_cast<std::size_t>(triple_candidates[static_cast<std::size_t>(a)])],
                                  t.verts[static_cast<std::size_t>(triple_candidates[static_cast<std::size_t>(b)])],
                                  t.verts[static_cast<std::size_t>(triple_candidates[static_cast<std::size_t>(c)])]};
                    return out;
                }
    }
    return std::nullopt;
}

// Augmentations realizing the contradiction patterns of the clique-type
// analysis. Each returns the replacement cliques fully constructed; callers
// re-validate via apply_augmentation.
std::optional<Augmentation> try_clique_augmentations(const AttachmentTable& t,
                                                     const std::vector<int>& clique,
                                                     const BlueStructure& s,
                                                     const Colouring& g) {
    const int r1 = t.r1;
    const int k = static_cast<int>(t.verts.size());
    const auto ambient = static_cast<std::size_t>(g.vertex_count());

    auto build_pair_clique = [&](int va, int vb, int except, VertexSet& used,
                                 std::vector<int>& out) {
        out = {t.verts[static_cast<std::size_t>(va)], t.verts[static_cast<std::size_t>(vb)]};
        return take_transversal(s.components, other_components(r1, except), used, out);
    };

    // two-pairs: components i != j with two paired vertices each
    for (int i = 0; i < r1; ++i)
        for (int j = 0; j < r1; ++j) {
            if (i == j) continue;
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) {
                    if (!t.paired_with(a, i) || !t.paired_with(b, i)) continue;
                    for (int c = 0; c < k; ++c)
                        for (int d = c + 1; d < k; ++d) {
                            if (c == a || c == b || d == a || d == b) continue;
                            if (!t.paired_with(c, j) || !t.paired_with(d, j)) continue;
                            VertexSet used(ambient);
                            std::vector<int> one, two;
                            if (!build_pair_clique(a, b, i, used, one)) continue;
                            if (!build_pair_clique(c, d, j, used, two)) continue;
                            return Augmentation{"two-pairs",
                                                {clique},
                                                {sorted_clique(one), sorted_clique(two)}};
                        }
                }
        }

    // four-with-same: one component with four paired vertices
    for (int i = 0; i < r1; ++i) {
        std::vector<int> paired;
        for (int v = 0; v < k; ++v)
            if (t.paired_with(v, i)) paired.push_back(v);
        if (paired.size() < 4) continue;
        VertexSet used(ambient);
        std::vector<int> one, two;
        if (!build_pair_clique(paired[0], paired[1], i, used, one)) continue;
        if (!build_pair_clique(paired[2], paired[3], i, used, two)) continue;
        return Augmentation{"four-with-same", {clique}, {sorted_clique(one), sorted_clique(two)}};
    }

    // red-neighbour-plus-pair: a paired vertex with a red neighbour in its own
    // component, plus two other vertices paired with a common component
    for (int v = 0; v < k; ++v)
        for (int i = 0; i < r1; ++i) {
            if (!t.paired_with(v, i) ||
                t.red_in[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)] < 1)
                continue;
            for (int j = 0; j < r1; ++j)
                for (int a = 0; a < k; ++a)
                    for (int b = a + 1; b < k; ++b) {
                        if (a == v || b == v) continue;
                        if (!t.paired_with(a, j) || !t.paired_with(b, j)) continue;
                        VertexSet used(ambient);
                        VertexSet reds =
                            g.neighbours(t.verts[static_cast<std::size_t>(v)], Colour::red) &
                            s.components[static_cast<std::size_t>(i)];
                        int x = reds.first();
                        if (x < 0) continue;
                        used.set(x);
                        std::vector<int> one{t.verts[static_cast<std::size_t>(v)], x};
                        if (!take_transversal(s.components, other_components(r1, i), used, one))
                            continue;
                        std::vector<int> two;
                        if (!build_pair_clique(a, b, j, used, two)) continue;
                        return Augmentation{"red-neighbour-plus-pair",
                                            {clique},
                                            {sorted_clique(one), sorted_clique(two)}};
                    }
        }

    // red-reaching-pair: two vertices with a red neighbour in every component
    // each extend to their own red clique
    for (int v = 0; v < k; ++v) {
        if (!t.red_reaching(v)) continue;
        for (int w = v + 1; w < k; ++w) {
            if (!t.red_reaching(w)) continue;
            VertexSet used(ambient);
            auto reach_clique = [&](int vert, std::vector<int>& out) {
                out = {t.verts[static_cast<std::size_t>(vert)]};
                for (int i = 0; i < r1; ++i) {
                    VertexSet reds =
                        g.neighbours(t.verts[static_cast<std::size_t>(vert)], Colour::red) &
                        s.components[static_cast<std::size_t>(i)];
                    int x = fresh_vertex(reds, used);
                    if (x < 0) return false;
                    used.set(x);
                    out.push_back(x);
                }
                return true;
            };
            std::vector<int> one, two;
            if (!reach_clique(v, one)) continue;
            if (!reach_clique(w, two)) continue;
            return Augmentation{"red-reaching-pair",
                                {clique},
                                {sorted_clique(one), sorted_clique(two)}};
        }
    }

    return std::nullopt;
}

}  // namespace

CliqueClass classify_clique(const std::vector<int>& clique, const BlueStructure& s,
                            const Colouring& g) {
    AttachmentTable t = build_attachment(clique, s, g);
    if (auto one = try_type_one(t)) return std::move(*one);
    if (auto two = try_type_two(t)) return std::move(*two);
    if (auto aug = try_clique_augmentations(t, sorted_clique(clique), s, g))
        return std::move(*aug);
    violate("classify", "clique admits no type and no augmentation", sorted_clique(clique));
}

std::optional<Augmentation> check_triple_blue(const std::vector<TriplePlacement>& triples,
                                              int component, const BlueStructure& s,
                                              const Colouring& g, int r) {
    const auto ambient = static_cast<std::size_t>(g.vertex_count());
    const int r1 = static_cast<int>(s.components.size());
    for (std::size_t a = 0; a < triples.size(); ++a)
        for (std::size_t b = a + 1; b < triples.size(); ++b)
            for (int x : triples[a].vertices)
                for (int y : triples[b].vertices) {
                    if (g.colour_of(x, y) != Colour::red) continue;
                    // x1 y1 red: three new cliques from {x,y}, the rest of
                    // triple a, and the rest of triple b
                    auto rest = [](const TriplePlacement& tp, int skip) {
                        std::vector<int> out;
                        for (int v : tp.vertices)
                            if (v != skip) out.push_back(v);
                        return out;
                    };
                    VertexSet used(ambient);
                    auto others = other_components(r1, component);
                    std::vector<int> one{x, y};
                    std::vector<int> two = rest(triples[a], x);
                    std::vector<int> three = rest(triples[b], y);
                    if (!take_transversal(s.components, others, used, one) ||
                        !take_transversal(s.components, others, used, two) ||
                        !take_transversal(s.components, others, used, three))
                        violate("triple-check",
                                "components too small to realize the triple augmentation",
                                {x, y});
                    (void)r;
                    return Augmentation{"triple-red-edge",
                                        {triples[a].owner, triples[b].owner},
                                        {sorted_clique(one), sorted_clique(two),
                                         sorted_clique(three)}};
                }
    return std::nullopt;
}

int select_target(const CliqueClassification& cls, int r, long long n) {
    const int r1 = static_cast<int>(cls.components.size());
    const long long rn = static_cast<long long>(r) * n;
    for (int i = 0; i < r1; ++i)
        if (cls.d_size(i) >= rn + 1) return i;
    for (int i = 0; i < r1; ++i)
        if (cls.d_size(i) >= rn &&
            3 * static_cast<long long>(cls.t_delta[static_cast<std::size_t>(i)].size()) != 3)
            return i;
    violate("select-target", "no component satisfies the size condition");
}

std::vector<std::vector<int>> embed_blue_matching(int target, const CliqueClassification& cls,
                                                  const Colouring& g, int r, long long n) {
    const auto ti = static_cast<std::size_t>(target);
    const long long rn = static_cast<long long>(r) * n;
    const long long d = cls.d_size(target);
    const long long m = static_cast<long long>(cls.t_delta[ti].size());
    if (d < rn || (m == 1 && d < rn + 1))
        violate("embed", "target component too small");

    VertexSet pool = cls.components[ti];
    std::vector<std::vector<int>> cliques;

    auto take_partners = [&](int v, int count, bool blue_only) {
        std::vector<int> clique{v};
        VertexSet avail = pool;
        if (blue_only) avail &= g.neighbours(v, Colour::blue);
        for (int taken = 0; taken < count; ++taken) {
            int u = avail.first();
            if (u < 0) violate("embed", "component pool exhausted", {v});
            avail.reset(u);
            pool.reset(u);
            clique.push_back(u);
        }
        cliques.push_back(sorted_clique(clique));
    };

    // stage a: one clique per selected or starred vertex, partners from B_i
    std::vector<int> consumers = cls.s_selections[ti];
    consumers.insert(consumers.end(), cls.t_star[ti].begin(), cls.t_star[ti].end());
    std::sort(consumers.begin(), consumers.end());
    for (int v : consumers) take_partners(v, r - 1, /*blue_only=*/true);

    // stage b: cover the triple vertices
    if (m == 1) {
        auto tri = cls.t_delta[ti].front().vertices;
        std::sort(tri.begin(), tri.end());
        take_partners(tri[0], r - 1, false);
        take_partners(tri[1], r - 1, false);
        // the third triple vertex is abandoned; |D_i| >= rn+1 absorbs it
    } else if (m >= 2 && m <= r - 1) {
        for (int row = 0; row < 3; ++row) {
            std::vector<int> clique;
            for (const auto& tp : cls.t_delta[ti]) {
                auto tri = tp.vertices;
                std::sort(tri.begin(), tri.end());
                clique.push_back(tri[static_cast<std::size_t>(row)]);
            }
            for (long long taken = m; taken < r; ++taken) {
                int u = pool.first();
                if (u < 0) violate("embed", "pool exhausted in mixed stage");
                pool.reset(u);
                clique.push_back(u);
            }
            cliques.push_back(sorted_clique(clique));
        }
    } else if (m >= r) {
        // row-major transversal chunks: consecutive windows of r vertices
        // never repeat a triangle because m >= r
        std::vector<int> seq;
        seq.reserve(static_cast<std::size_t>(3 * m));
        for (int row = 0; row < 3; ++row)
            for (const auto& tp : cls.t_delta[ti]) {
                auto tri = tp.vertices;
                std::sort(tri.begin(), tri.end());
                seq.push_back(tri[static_cast<std::size_t>(row)]);
            }
        std::size_t at = 0;
        while (at < seq.size()) {
            std::vector<int> clique;
            while (clique.size() < static_cast<std::size_t>(r) && at < seq.size())
                clique.push_back(seq[at++]);
            while (clique.size() < static_cast<std::size_t>(r)) {
                int u = pool.first();
                if (u < 0) violate("embed", "pool exhausted padding a chunk");
                pool.reset(u);
                clique.push_back(u);
            }
            cliques.push_back(sorted_clique(clique));
        }
    }

    // stage c: the rest of B_i
    while (static_cast<long long>(cliques.size()) < n) {
        std::vector<int> clique;
        for (int taken = 0; taken < r; ++taken) {
            int u = pool.first();
            if (u < 0) violate("embed", "component remainder exhausted");
            pool.reset(u);
            clique.push_back(u);
        }
        cliques.push_back(std::move(clique));
    }
    cliques.resize(static_cast<std::size_t>(n));

    for (const auto& q : cliques) {
        VertexSet members(static_cast<std::size_t>(g.vertex_count()));
        for (int v : q) members.set(v);
        if (!is_monochromatic_clique(g, members, Colour::blue))
            violate("embed", "emitted clique is not blue", q);
    }
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

CliquePacking apply_augmentation(const CliquePacking& packing, const Augmentation& aug,
                                 const Colouring& g) {
    if (aug.install.size() < aug.retire.size() + 1)
        throw std::logic_error("augmentation does not grow the packing");

    CliquePacking result;
    result.colour = packing.colour;
    std::vector<std::vector<int>> retire_sorted;
    for (const auto& q : aug.retire) retire_sorted.push_back(sorted_clique(q));
    for (const auto& q : packing.cliques) {
        auto canon = sorted_clique(q);
        bool retired =
            std::find(retire_sorted.begin(), retire_sorted.end(), canon) != retire_sorted.end();
        if (!retired) result.cliques.push_back(q);
    }
    if (packing.cliques.size() - result.cliques.size() != aug.retire.size())
        throw std::logic_error("retired clique not present in the packing");

    const auto ambient = static_cast<std::size_t>(g.vertex_count());
    VertexSet used = result.covered(ambient);
    for (const auto& q : aug.install) {
        VertexSet members(ambient);
        for (int v : q) {
            if (used.test(v) || members.test(v))
                throw std::logic_error("install clique overlaps the packing");
            members.set(v);
        }
        if (!is_monochromatic_clique(g, members, packing.colour))
            throw std::logic_error("install clique is not monochromatic");
        used |= members;
        result.cliques.push_back(sorted_clique(q));
    }
    return result;
}

std::string FindReport::to_key_value_text() const {
    std::ostringstream out;
    out << "swapped=" << (swapped ? 1 : 0) << '\n';
    out << "outcome=" << outcome << '\n';
    out << "augmentations=" << trace.size() << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << "augmentation." << i << "=" << trace[i].rule << ' ' << trace[i].packing_before
            << "->" << trace[i].packing_after << '\n';
    if (!component_sizes.empty()) {
        out << "component_sizes=";
        for (std::size_t i = 0; i < component_sizes.size(); ++i)
            out << (i ? "," : "") << component_sizes[i];
        out << '\n';
    }
    out << "s_cliques=" << s_cliques << '\n';
    out << "t_cliques=" << t_cliques << '\n';
    if (!d_sizes.empty()) {
        out << "d_sizes=";
        for (std::size_t i = 0; i < d_sizes.size(); ++i) out << (i ? "," : "") << d_sizes[i];
        out << '\n';
    }
    out << "target_component=" << target_component << '\n';
    out << "final_packing_size=" << final_packing_size << '\n';
    for (std::size_t i = 0; i < packing_snapshot.size(); ++i) {
        out << "packing." << i << '=';
        for (std::size_t j = 0; j < packing_snapshot[i].size(); ++j)
            out << (j ? " " : "") << packing_snapshot[i][j];
        out << '\n';
    }
    return out.str();
}

FindOutcome find_connected_clique_matching(const Colouring& g, const Params& params) {
    Params checked = params;
    checked.vertex_count = g.vertex_count();
    if (auto regime = theorem_regime(checked); !regime.ok)
        throw std::invalid_argument("finder precondition: " + regime.reason);
    const int r = params.r;
    const long long n = params.n;

    FindOutcome outcome;
    auto [search_colour, swapped] = [&] {
        try {
            return choose_search_colour(g);
        } catch (const structure_violation_error& e) {
            // unreachable: one colour of a complete graph is always connected
            throw std::logic_error(e.what());
        }
    }();
    outcome.report.swapped = swapped;

    const Colouring work = swapped ? g.swapped() : g;
    auto original_colour = [&](Colour search) { return swapped ? other(search) : search; };
    const auto full = VertexSet::full(static_cast<std::size_t>(work.vertex_count()));

    CliquePacking packing;
    packing.colour = Colour::red;
    try {
        packing = greedy_clique_packing(work, Colour::red, r, full);
        // the analysis below argues about a maximal packing, so keep it
        // maximal after every augmentation
        auto extend_to_maximal = [&](CliquePacking& p) {
            VertexSet uncovered = p.covered(full.ambient_size()).complement();
            while (auto q = find_clique(work, Colour::red, r, uncovered)) {
                for (int v : *q) uncovered.reset(v);
                p.cliques.push_back(std::move(*q));
            }
        };
        Certificate cert;
        for (long long round = 0;; ++round) {
            if (round > n + 2)
                violate("loop", "augmentation loop exceeded its bound");
            if (static_cast<long long>(packing.size()) >= n) {
                cert.colour = original_colour(Colour::red);
                cert.cliques.assign(packing.cliques.begin(),
                                    packing.cliques.begin() + static_cast<std::ptrdiff_t>(n));
                outcome.report.outcome = "red-packing";
                break;
            }

            BlueAnalysis analysis = analyse_blue_structure(work, packing, r, n);
            if (auto* win = std::get_if<BlueWin>(&analysis)) {
                cert.colour = original_colour(Colour::blue);
                cert.cliques = std::move(win->cliques);
                outcome.report.outcome = "blue-component";
                break;
            }
            if (auto* aug = std::get_if<Augmentation>(&analysis)) {
                std::size_t before = packing.size();
                packing = apply_augmentation(packing, *aug, work);
                outcome.report.trace.push_back({aug->rule, before, packing.size()});
                extend_to_maximal(packing);
                continue;
            }

            BlueStructure structure = std::get<BlueStructure>(std::move(analysis));
            outcome.report.component_sizes.clear();
            for (const auto& comp : structure.components)
                outcome.report.component_sizes.push_back(comp.count());

            CliqueClassification cls;
            cls.r = r;
            cls.n = n;
            cls.components = structure.components;
            const auto r1 = structure.components.size();
            cls.s_selections.assign(r1, {});
            cls.t_star.assign(r1, {});
            cls.t_delta.assign(r1, {});

            std::optional<Augmentation> pending;
            for (const auto& clique : packing.cliques) {
                CliqueClass c = classify_clique(clique, structure, work);
                if (auto* aug = std::get_if<Augmentation>(&c)) {
                    pending = std::move(*aug);
                    break;
                }
                if (auto* one = std::get_if<TypeI>(&c)) {
                    ++cls.s_clique_count;
                    for (std::size_t i = 0; i < r1; ++i)
                        cls.s_selections[i].push_back(one->selections[i]);
                } else {
                    auto& two = std::get<TypeII>(c);
                    ++cls.t_clique_count;
                    for (std::size_t i = 0; i < r1; ++i)
                        if (two.singles[i] >= 0) cls.t_star[i].push_back(two.singles[i]);
                    TriplePlacement tp;
                    tp.vertices = two.triple;
                    tp.owner = sorted_clique(clique);
                    cls.t_delta[static_cast<std::size_t>(two.triple_component)].push_back(tp);
                }
            }
            if (!pending) {
                for (std::size_t i = 0; i < r1 && !pending; ++i)
                    pending = check_triple_blue(cls.t_delta[i], static_cast<int>(i), structure,
                                                work, r);
            }
            if (pending) {
                std::size_t before = packing.size();
                packing = apply_augmentation(packing, *pending, work);
                outcome.report.trace.push_back({pending->rule, before, packing.size()});
                extend_to_maximal(packing);
                continue;
            }

            outcome.report.s_cliques = cls.s_clique_count;
            outcome.report.t_cliques = cls.t_clique_count;
            outcome.report.d_sizes.clear();
            long long d_total = 0;
            for (std::size_t i = 0; i < r1; ++i) {
                outcome.report.d_sizes.push_back(cls.d_size(static_cast<int>(i)));
                d_total += cls.d_size(static_cast<int>(i));
            }
            if (cls.s_clique_count + d_total != work.vertex_count())
                violate("counting",
                        "identity N = |S| + sum |D_i| failed: " +
                            std::to_string(cls.s_clique_count + d_total) + " vs " +
                            std::to_string(work.vertex_count()));

            int target = select_target(cls, r, n);
            outcome.report.target_component = target;
            cert.colour = original_colour(Colour::blue);
            cert.cliques = embed_blue_matching(target, cls, work, r, n);
            outcome.report.outcome = "blue-embedding";
            break;
        }

        cert.colour_roles_swapped = swapped;
        attach_connectivity_witness(g, cert);
        outcome.report.final_packing_size = packing.size();
        outcome.result = std::move(cert);
    } catch (const structure_violation_error& e) {
        outcome.report.outcome = "violation";
        outcome.report.final_packing_size = packing.size();
        outcome.report.packing_snapshot = packing.cliques;
        outcome.result = e.violation;
    }
    return outcome;
}

}  // namespace rcm

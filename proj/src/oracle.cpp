#include "rcm/oracle.hpp"

#include <algorithm>

#include "rcm/extremal.hpp"

namespace rcm {

VerifyResult verify_certificate(const Colouring& g, const Certificate& cert, int r,
                                long long n) {
    const int vertex_count = g.vertex_count();
    if (static_cast<long long>(cert.cliques.size()) != n)
        return {false, "wrong clique count", {}};

    VertexSet seen(static_cast<std::size_t>(vertex_count));
    for (const auto& q : cert.cliques) {
        if (static_cast<int>(q.size()) != r) return {false, "wrong clique size", q};
        VertexSet members(static_cast<std::size_t>(vertex_count));
        for (int v : q) {
            if (v < 0 || v >= vertex_count) return {false, "vertex out of range", {v}};
            if (members.test(v)) return {false, "repeated vertex inside a clique", {v}};
            members.set(v);
        }
        if (members.intersects(seen)) {
            for (int v : q)
                if (seen.test(v)) return {false, "cliques not disjoint", {v}};
        }
        seen |= members;
        if (!is_monochromatic_clique(g, members, cert.colour))
            return {false, "clique not monochromatic in stated colour", q};
    }

    if (n > 0) {
        auto comps =
            colour_components(g, cert.colour, VertexSet::full(static_cast<std::size_t>(vertex_count)));
        int root = cert.cliques.front().front();
        const VertexSet* home = nullptr;
        for (const auto& comp : comps)
            if (comp.test(root)) {
                home = &comp;
                break;
            }
        for (const auto& q : cert.cliques)
            for (int v : q)
                if (!home->test(v))
                    return {false, "clique vertices not in one colour component", {v}};
    }

    for (const auto& [u, v] : cert.witness_edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v)
            return {false, "bad witness edge", {u, v}};
        if (g.colour_of(u, v) != cert.colour)
            return {false, "witness edge not in stated colour", {u, v}};
    }
    return {true, "", {}};
}

namespace {

// Exact max disjoint mono-r-clique packing inside `start`, optionally capped:
// once `cap` cliques are reached the search stops and reports cap.
class PackingSearch {
public:
    PackingSearch(const Colouring& g, Colour c, int r, int cap, SearchBudget* budget)
        : g_(g), c_(c), r_(r), cap_(cap), budget_(budget) {}

    int run(const VertexSet& start, std::vector<std::vector<int>>* packing_out) {
        best_ = 0;
        best_packing_.clear();
        stack_.clear();
        done_ = false;
        search(start);
        if (packing_out) *packing_out = best_packing_;
        return best_;
    }

private:
    void note_current() {
        if (static_cast<int>(stack_.size()) > best_) {
            best_ = static_cast<int>(stack_.size());
            best_packing_ = stack_;
            if (cap_ > 0 && best_ >= cap_) done_ = true;
        }
    }

    void search(VertexSet remaining) {
        if (budget_) budget_->charge();
        note_current();
        if (done_) return;
        // bound: even packing every remaining vertex cannot beat best
        while (true) {
            int have = static_cast<int>(stack_.size());
            if (have + static_cast<int>(remaining.count()) / r_ <= best_) return;
            int v = remaining.first();
            if (v < 0) return;
            // branch A: v in some clique (lexicographic enumeration)
            std::vector<int> clique{v};
            VertexSet candidates = remaining & g_.neighbours(v, c_);
            candidates.remove_below(v + 1);
            if (extend(remaining, clique, candidates)) return;
            // branch B: v unused
            remaining.reset(v);
        }
    }

    // Enumerates completions of `clique` using `candidates`; recurses into
    // search for each completed clique. Returns true when the cap fired.
    bool extend(const VertexSet& remaining, std::vector<int>& clique,
                const VertexSet& candidates) {
        if (static_cast<int>(clique.size()) == r_) {
            VertexSet rest = remaining;
            for (int u : clique) rest.reset(u);
            stack_.push_back(clique);
            search(rest);
            stack_.pop_back();
            return done_;
        }
        int need = r_ - static_cast<int>(clique.size());
        if (static_cast<int>(candidates.count()) < need) return false;
        for (int u = candidates.first(); u >= 0; u = candidates.next(u + 1)) {
            clique.push_back(u);
            VertexSet next = candidates & g_.neighbours(u, c_);
            next.remove_below(u + 1);
            bool stop = extend(remaining, clique, next);
            clique.pop_back();
            if (stop) return true;
        }
        return false;
    }

    const Colouring& g_;
    Colour c_;
    int r_;
    int cap_;
    SearchBudget* budget_;
    int best_ = 0;
    bool done_ = false;
    std::vector<std::vector<int>> stack_;
    std::vector<std::vector<int>> best_packing_;
};

}  // namespace

int max_connected_packing(const Colouring& g, Colour c, int r, SearchBudget* budget) {
    if (r < 2) throw std::invalid_argument("max_connected_packing needs r >= 2");
    auto comps = colour_components(g, c, VertexSet::full(static_cast<std::size_t>(g.vertex_count())));
    int best = 0;
    for (const auto& comp : comps) {
        PackingSearch search(g, c, r, 0, budget);
        best = std::max(best, search.run(comp, nullptr));
    }
    return best;
}

DecisionResult decide(const Colouring& g, int r, long long n, DecisionMode mode,
                      SearchBudget* budget) {
    if (r < 2 || n < 1) throw std::invalid_argument("decide needs r >= 2, n >= 1");
    DecisionResult result;
    result.mode = mode;
    const auto full = VertexSet::full(static_cast<std::size_t>(g.vertex_count()));
    for (Colour c : {Colour::red, Colour::blue}) {
        auto comps = colour_components(g, c, full);
        std::vector<std::vector<int>> collected;
        for (const auto& comp : comps) {
            if (mode == DecisionMode::connected) {
                if (static_cast<long long>(comp.count()) < static_cast<long long>(r) * n)
                    continue;
                PackingSearch search(g, c, r, static_cast<int>(n), budget);
                std::vector<std::vector<int>> packing;
                if (search.run(comp, &packing) >= n) {
                    packing.resize(static_cast<std::size_t>(n));
                    result.yes = true;
                    Certificate cert;
                    cert.colour = c;
                    cert.cliques = std::move(packing);
                    attach_connectivity_witness(g, cert);
                    result.witness = std::move(cert);
                    return result;
                }
            } else {
                long long need = n - static_cast<long long>(collected.size());
                if (need <= 0) break;
                PackingSearch search(g, c, r, static_cast<int>(need), budget);
                std::vector<std::vector<int>> packing;
                search.run(comp, &packing);
                for (auto& q : packing) collected.push_back(std::move(q));
            }
        }
        if (mode == DecisionMode::unconnected &&
            static_cast<long long>(collected.size()) >= n) {
            collected.resize(static_cast<std::size_t>(n));
            result.yes = true;
            Certificate cert;
            cert.colour = c;
            cert.cliques = std::move(collected);
            result.witness = std::move(cert);
            return result;
        }
    }
    return result;
}

namespace {

Colouring induced_prefix(const Colouring& g, int m) {
    ColouringBuilder b(m);
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (g.colour_of(u, v) == Colour::red) b.set_colour(u, v, Colour::red);
    return b.build();
}

struct RamseyScan {
    int r;
    long long n;
    SearchBudget* budget;
    long long* decide_calls;

    bool decide_no(const Colouring& g) {
        ++*decide_calls;
        budget->charge();
        return !decide(g, r, n, DecisionMode::connected).yes;
    }

    // Depth-first over colourings of edges from vertex v to 0..v-1.
    // red_pairs holds the partial colouring; returns a failing colouring of
    // K_m if one exists below this node.
    std::optional<Colouring> scan_vertex(int m, int v,
                                         std::vector<std::pair<int, int>>& red_pairs) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v); ++mask) {
            std::size_t base = red_pairs.size();
            for (int j = 0; j < v; ++j)
                if ((mask >> j) & 1) red_pairs.emplace_back(v, j);
            Colouring prefix = Colouring::from_red_pairs(v + 1, red_pairs);
            if (decide_no(prefix)) {
                if (v + 1 == m) return prefix;
                if (auto failing = scan_vertex(m, v + 1, red_pairs)) return failing;
            }
            red_pairs.resize(base);
        }
        return std::nullopt;
    }

    // Finds any 2-colouring of K_m with no connected monochromatic n K_r.
    std::optional<Colouring> find_failing(int m, const Colouring* burr) {
        if (m == 1) {
            Colouring single = Colouring::from_red_pairs(1, {});
            if (decide_no(single)) return single;
            return std::nullopt;
        }
        if (burr && burr->vertex_count() >= m) {
            Colouring candidate = induced_prefix(*burr, m);
            if (decide_no(candidate)) return candidate;
        }
        // WLOG edge {0,1} is red: decide is symmetric under colour swap.
        std::vector<std::pair<int, int>> red_pairs{{1, 0}};
        if (m == 2) {
            Colouring g = Colouring::from_red_pairs(2, red_pairs);
            if (decide_no(g)) return g;
            return std::nullopt;
        }
        return scan_vertex(m, 2, red_pairs);
    }
};

}  // namespace

RamseyResult ramsey_connected_exact(int r, long long n, int m_max, long long budget_limit) {
    if (r < 2 || n < 1 || m_max < 1)
        throw std::invalid_argument("ramsey_connected_exact: bad arguments");
    SearchBudget budget(budget_limit);
    RamseyResult result;
    Colouring burr = burr_colouring(r, n);
    RamseyScan scan{r, n, &budget, &result.decide_calls};
    std::optional<Colouring> previous_failing;
    try {
        for (int m = 1; m <= m_max; ++m) {
            auto failing = scan.find_failing(m, &burr);
            if (!failing) {
                if (m == 1) break;  // cannot certify without a failing K_{m-1}
                result.known = true;
                result.value = m;
                result.failing_witness = std::move(previous_failing);
                return result;
            }
            previous_failing = std::move(failing);
        }
    } catch (const BudgetExceeded&) {
        result.known = false;
    }
    return result;
}

}  // namespace rcm

#include "rcm/colouring.hpp"

#include <charconv>
#include <sstream>

namespace rcm {

void Colouring::check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::out_of_range("vertex out of range");
    if (u == v) throw std::invalid_argument("self-loop pair has no colour");
}

void Colouring::rebuild_blue() {
    blue_.assign(static_cast<std::size_t>(n_), VertexSet(static_cast<std::size_t>(n_)));
    for (int v = 0; v < n_; ++v) {
        VertexSet b = red_[static_cast<std::size_t>(v)].complement();
        b.reset(v);
        blue_[static_cast<std::size_t>(v)] = std::move(b);
    }
}

Colouring Colouring::from_red_pairs(int vertex_count,
                                    std::span<const std::pair<int, int>> red_pairs) {
    if (vertex_count < 1) throw std::invalid_argument("vertex count must be positive");
    ColouringBuilder b(vertex_count);
    for (const auto& [u, v] : red_pairs) b.set_colour(u, v, Colour::red);
    return b.build();
}

Colouring Colouring::swapped() const {
    Colouring g;
    g.n_ = n_;
    g.red_ = blue_;
    g.blue_ = red_;
    return g;
}

Colouring Colouring::with_toggled_pairs(std::span<const std::pair<int, int>> pairs) const {
    Colouring g = *this;
    for (const auto& [u, v] : pairs) {
        g.check_pair(u, v);
        auto su = static_cast<std::size_t>(u);
        auto sv = static_cast<std::size_t>(v);
        if (g.red_[su].test(v)) {
            g.red_[su].reset(v);
            g.red_[sv].reset(u);
        } else {
            g.red_[su].set(v);
            g.red_[sv].set(u);
        }
    }
    g.rebuild_blue();
    return g;
}

ColouringBuilder::ColouringBuilder(int vertex_count) : n_(vertex_count) {
    if (vertex_count < 1) throw std::invalid_argument("vertex count must be positive");
    red_.assign(static_cast<std::size_t>(n_), VertexSet(static_cast<std::size_t>(n_)));
}

void ColouringBuilder::set_colour(int u, int v, Colour c) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::out_of_range("vertex out of range");
    if (u == v) throw std::invalid_argument("self-loop pair has no colour");
    auto su = static_cast<std::size_t>(u);
    auto sv = static_cast<std::size_t>(v);
    if (c == Colour::red) {
        red_[su].set(v);
        red_[sv].set(u);
    } else {
        red_[su].reset(v);
        red_[sv].reset(u);
    }
}

Colouring ColouringBuilder::build() {
    Colouring g;
    g.n_ = n_;
    g.red_ = std::move(red_);
    g.rebuild_blue();
    red_.assign(static_cast<std::size_t>(n_), VertexSet(static_cast<std::size_t>(n_)));
    return g;
}

std::string Colouring::serialize() const {
    std::string out = "rcm 1\n";
    out += std::to_string(n_);
    out += '\n';
    for (int i = 1; i < n_; ++i) {
        for (int j = 0; j < i; ++j)
            out += colour_char(colour_of(i, j));
        out += '\n';
    }
    return out;
}

Colouring Colouring::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "rcm 1")
        throw ParseError("rcm parse: malformed header");
    if (!std::getline(in, line)) throw ParseError("rcm parse: missing vertex count");
    int n = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), n);
    if (ec != std::errc{} || ptr != line.data() + line.size() || n < 1)
        throw ParseError("rcm parse: bad vertex count");

    ColouringBuilder b(n);
    for (int i = 1; i < n; ++i) {
        if (!std::getline(in, line))
            throw ParseError("rcm parse: missing row " + std::to_string(i));
        for (char ch : line)
            if (ch != 'R' && ch != 'B')
                throw ParseError("rcm parse: illegal character in row " + std::to_string(i));
        if (static_cast<int>(line.size()) != i)
            throw ParseError("rcm parse: wrong length for row " + std::to_string(i));
        for (int j = 0; j < i; ++j)
            if (line[static_cast<std::size_t>(j)] == 'R') b.set_colour(i, j, Colour::red);
    }
    while (std::getline(in, line))
        if (!line.empty()) throw ParseError("rcm parse: trailing content");
    return b.build();
}

std::vector<VertexSet> colour_components(const Colouring& g, Colour c,
                                         const VertexSet& within) {
    std::vector<VertexSet> comps;
    VertexSet unvisited = within;
    const auto ambient = within.ambient_size();
    while (unvisited.any()) {
        int seed = unvisited.first();
        VertexSet comp(ambient);
        VertexSet frontier(ambient);
        frontier.set(seed);
        unvisited.reset(seed);
        while (frontier.any()) {
            comp |= frontier;
            VertexSet next(ambient);
            frontier.for_each([&](int v) { next |= g.neighbours(v, c); });
            next &= unvisited;
            unvisited.and_not(next);
            frontier = std::move(next);
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_monochromatic_clique(const Colouring& g, const VertexSet& s, Colour c) {
    for (int v = s.first(); v >= 0; v = s.next(v + 1)) {
        VertexSet rest = s;
        rest.reset(v);
        if (!g.neighbours(v, c).is_superset_of(rest)) return false;
    }
    return true;
}

namespace {

bool clique_search(const Colouring& g, Colour c, int r, const VertexSet& candidates,
                   std::vector<int>& stack) {
    if (static_cast<int>(stack.size()) == r) return true;
    int need = r - static_cast<int>(stack.size());
    if (static_cast<int>(candidates.count()) < need) return false;
    for (int v = candidates.first(); v >= 0; v = candidates.next(v + 1)) {
        stack.push_back(v);
        VertexSet next = candidates & g.neighbours(v, c);
        // only vertices above v: keeps the output sorted and the search lex-least
        next.remove_below(v + 1);
        if (clique_search(g, c, r, next, stack)) return true;
        stack.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_clique(const Colouring& g, Colour c, int r,
                                            const VertexSet& within) {
    if (r < 1) throw std::invalid_argument("clique size must be at least 1");
    std::vector<int> stack;
    stack.reserve(static_cast<std::size_t>(r));
    if (clique_search(g, c, r, within, stack)) return stack;
    return std::nullopt;
}

VertexSet CliquePacking::covered(std::size_t ambient) const {
    VertexSet s(ambient);
    for (const auto& q : cliques)
        for (int v : q) s.set(v);
    return s;
}

CliquePacking greedy_clique_packing(const Colouring& g, Colour c, int r,
                                    const VertexSet& within) {
    CliquePacking packing;
    packing.colour = c;
    VertexSet remaining = within;
    while (auto q = find_clique(g, c, r, remaining)) {
        for (int v : *q) remaining.reset(v);
        packing.cliques.push_back(std::move(*q));
    }
    return packing;
}

std::optional<int> ramsey_constant(int r) {
    switch (r) {
        case 1: return 1;
        case 2: return 2;
        case 3: return 6;
        case 4: return 18;
        default: return std::nullopt;
    }
}

RegimeCheck theorem_regime(const Params& p) {
    if (p.r < 4) return {false, "r must be at least 4"};
    long long rk;
    if (auto known = ramsey_constant(p.r)) {
        rk = *known;
    } else if (p.ramsey_bound_override) {
        rk = *p.ramsey_bound_override;
    } else {
        return {false, "R(K_r) unknown for r >= 5; supply a bound"};
    }
    if (p.n < rk)
        return {false, "n below R(K_r) = " + std::to_string(rk)};
    long long bound = connected_matching_bound(p.r, p.n);
    if (p.vertex_count < bound)
        return {false, "N below theorem bound " + std::to_string(bound)};
    return {true, ""};
}

}  // namespace rcm

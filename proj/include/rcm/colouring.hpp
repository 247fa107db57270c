#ifndef RCM_COLOURING_HPP
#define RCM_COLOURING_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcm/vertex_set.hpp"

namespace rcm {

enum class Colour : unsigned char { red, blue };

inline Colour other(Colour c) { return c == Colour::red ? Colour::blue : Colour::red; }
inline char colour_char(Colour c) { return c == Colour::red ? 'R' : 'B'; }

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable 2-edge-coloured complete graph. Red adjacency is stored as one
// bit row per vertex; blue rows are the precomputed off-diagonal complement.
class Colouring {
public:
    // Listed pairs become red, everything else blue. Duplicates allowed.
    static Colouring from_red_pairs(int vertex_count,
                                    std::span<const std::pair<int, int>> red_pairs);

    int vertex_count() const { return n_; }

    Colour colour_of(int u, int v) const {
        check_pair(u, v);
        return red_[static_cast<std::size_t>(u)].test(v) ? Colour::red : Colour::blue;
    }

    const VertexSet& neighbours(int v, Colour c) const {
        return c == Colour::red ? red_[static_cast<std::size_t>(v)]
                                : blue_[static_cast<std::size_t>(v)];
    }

    // Colour-swapped copy (red <-> blue).
    Colouring swapped() const;

    // Copy with the given pairs toggled.
    Colouring with_toggled_pairs(std::span<const std::pair<int, int>> pairs) const;

    std::string serialize() const;
    static Colouring parse(const std::string& text);

    bool operator==(const Colouring& o) const { return n_ == o.n_ && red_ == o.red_; }

private:
    friend class ColouringBuilder;
    Colouring() = default;
    void check_pair(int u, int v) const;
    void rebuild_blue();

    int n_ = 0;
    std::vector<VertexSet> red_;
    std::vector<VertexSet> blue_;
};

// Single-owner mutable builder; the finished Colouring is immutable.
class ColouringBuilder {
public:
    explicit ColouringBuilder(int vertex_count);

    void set_colour(int u, int v, Colour c);
    Colouring build();

private:
    int n_;
    std::vector<VertexSet> red_;
};

// Connected components of the colour-c subgraph induced on `within`,
// ordered by smallest member vertex.
std::vector<VertexSet> colour_components(const Colouring& g, Colour c,
                                         const VertexSet& within);

bool is_monochromatic_clique(const Colouring& g, const VertexSet& s, Colour c);

// Lexicographically least monochromatic r-clique inside `within`
// (compared as sorted vertex lists), or nullopt.
std::optional<std::vector<int>> find_clique(const Colouring& g, Colour c, int r,
                                            const VertexSet& within);

struct CliquePacking {
    Colour colour = Colour::red;
    std::vector<std::vector<int>> cliques;  // each sorted, size r, disjoint

    std::size_t size() const { return cliques.size(); }
    VertexSet covered(std::size_t ambient) const;
};

// Repeatedly removes the lexicographically least monochromatic r-clique.
// The result is maximal: no clique remains among the uncovered vertices.
CliquePacking greedy_clique_packing(const Colouring& g, Colour c, int r,
                                    const VertexSet& within);

// (r^2 - r + 1) n - r + 1
inline long long connected_matching_bound(int r, long long n) {
    return (static_cast<long long>(r) * r - r + 1) * n - r + 1;
}

// Classical diagonal Ramsey numbers where known exactly.
std::optional<int> ramsey_constant(int r);

struct Params {
    int r = 0;
    long long n = 0;
    long long vertex_count = 0;
    // For r >= 5 the exact R(K_r) is unknown; callers supply a bound instead.
    std::optional<long long> ramsey_bound_override;
};

struct RegimeCheck {
    bool ok = false;
    std::string reason;
};

RegimeCheck theorem_regime(const Params& p);

}  // namespace rcm

#endif

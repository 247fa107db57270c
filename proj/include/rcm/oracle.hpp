#ifndef RCM_ORACLE_HPP
#define RCM_ORACLE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcm/certificate.hpp"
#include "rcm/colouring.hpp"

namespace rcm {

struct VerifyResult {
    bool ok = false;
    std::string reason;         // empty when ok
    std::vector<int> evidence;  // offending vertices, when meaningful
};

// Independent certificate check. Shares only colouring-core primitives with
// the finder; connectivity is recomputed from scratch.
VerifyResult verify_certificate(const Colouring& g, const Certificate& cert, int r,
                                long long n);

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Work meter for the exponential kernels. Charged per search node or per
// decide leaf; throws once the limit is crossed so callers can report
// "unknown" instead of a wrong answer.
class SearchBudget {
public:
    explicit SearchBudget(long long limit) : limit_(limit) {}

    void charge(long long amount = 1) {
        used_ += amount;
        if (used_ > limit_) throw BudgetExceeded("search budget exceeded");
    }

    long long used() const { return used_; }

private:
    long long limit_;
    long long used_ = 0;
};

// Exact maximum, over components of the colour-c subgraph, of the number of
// disjoint monochromatic r-cliques packable inside one component.
// Branch-and-bound over lexicographic clique choices; exponential worst case.
int max_connected_packing(const Colouring& g, Colour c, int r,
                          SearchBudget* budget = nullptr);

enum class DecisionMode { connected, unconnected };

struct DecisionResult {
    bool yes = false;
    DecisionMode mode = DecisionMode::connected;
    std::optional<Certificate> witness;  // attached on yes
};

// connected: some colour has a component packing n disjoint r-cliques.
// unconnected: some colour packs n disjoint r-cliques anywhere.
DecisionResult decide(const Colouring& g, int r, long long n, DecisionMode mode,
                      SearchBudget* budget = nullptr);

struct RamseyResult {
    bool known = false;
    int value = 0;
    std::optional<Colouring> failing_witness;  // a colouring of K_{value-1} deciding no
    long long decide_calls = 0;
};

// Least m <= m_max such that every 2-colouring of K_m contains a connected
// monochromatic n K_r. Enumerates colourings vertex by vertex with the colour
// of edge {0,1} fixed red and prunes extensions of already-deciding prefixes.
// Returns known=false when the budget or m_max is insufficient.
RamseyResult ramsey_connected_exact(int r, long long n, int m_max, long long budget);

}  // namespace rcm

#endif

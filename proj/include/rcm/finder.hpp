#ifndef RCM_FINDER_HPP
#define RCM_FINDER_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rcm/certificate.hpp"
#include "rcm/colouring.hpp"

namespace rcm {

// Blue-clique components of the vertices outside the red packing. Leftover
// vertices of the per-component greedy blue packing are kept as diagnostics.
struct BlueStructure {
    std::vector<VertexSet> components;
    VertexSet absorbed_z;
    bool pairwise_red = true;
};

// A constructive packing improvement: replace `retire` by `install`,
// growing the packing by at least one clique.
struct Augmentation {
    std::string rule;
    std::vector<std::vector<int>> retire;
    std::vector<std::vector<int>> install;
};

// Emitted when a structural fact the algorithm relies on fails and no
// augmentation applies. Never expected on inputs satisfying the finder's
// precondition; kept as a first-class outcome rather than an assert.
struct StructureViolation {
    std::string stage;
    std::string detail;
    std::vector<int> evidence;
};

struct structure_violation_error : std::runtime_error {
    StructureViolation violation;
    explicit structure_violation_error(StructureViolation v)
        : std::runtime_error(v.stage + ": " + v.detail), violation(std::move(v)) {}
};

// A component already packs n disjoint blue r-cliques.
struct BlueWin {
    int component_index = -1;
    std::vector<std::vector<int>> cliques;
};

using BlueAnalysis = std::variant<BlueStructure, Augmentation, BlueWin>;

// Components of the blue graph outside the packing, the early blue win via
// per-component greedy packing, and the two component-level augmentations.
BlueAnalysis analyse_blue_structure(const Colouring& g, const CliquePacking& red_packing,
                                    int r, long long n);

// Attachment pattern of one red clique to the blue components.
struct TypeI {
    std::vector<int> selections;  // selections[i]: vertex blue to all but <=1 of B_i
};

struct TypeII {
    std::vector<int> singles;  // singles[i]: vertex blue-complete to B_i, or -1
    int triple_component = -1;
    std::array<int, 3> triple{-1, -1, -1};  // blue-complete to triple_component
};

using CliqueClass = std::variant<TypeI, TypeII, Augmentation>;

CliqueClass classify_clique(const std::vector<int>& clique, const BlueStructure& s,
                            const Colouring& g);

struct TriplePlacement {
    std::array<int, 3> vertices{-1, -1, -1};
    std::vector<int> owner;  // the red clique the triple came from
};

// Aggregated classification of the whole packing.
struct CliqueClassification {
    int r = 0;
    long long n = 0;
    std::vector<VertexSet> components;
    long long s_clique_count = 0;
    long long t_clique_count = 0;
    std::vector<std::vector<int>> s_selections;        // per component: S_i
    std::vector<std::vector<int>> t_star;              // per component: T_i*
    std::vector<std::vector<TriplePlacement>> t_delta; // per component: T_i^triangle

    long long d_size(int i) const {
        return static_cast<long long>(components[static_cast<std::size_t>(i)].count()) +
               static_cast<long long>(s_selections[static_cast<std::size_t>(i)].size()) +
               static_cast<long long>(t_star[static_cast<std::size_t>(i)].size()) +
               3 * static_cast<long long>(t_delta[static_cast<std::size_t>(i)].size());
    }
};

// Cross-triple edges inside one component's triple set must all be blue;
// a red edge yields the retire-2-install-3 augmentation.
std::optional<Augmentation> check_triple_blue(const std::vector<TriplePlacement>& triples,
                                              int component, const BlueStructure& s,
                                              const Colouring& g, int r);

// Component with |D_i| >= rn+1, else |D_i| >= rn and |T_i^triangle| != 3.
int select_target(const CliqueClassification& cls, int r, long long n);

// n disjoint blue r-cliques inside D_target, all within one blue component.
std::vector<std::vector<int>> embed_blue_matching(int target,
                                                  const CliqueClassification& cls,
                                                  const Colouring& g, int r, long long n);

// Validates the augmentation invariants and returns the grown packing.
CliquePacking apply_augmentation(const CliquePacking& packing, const Augmentation& aug,
                                 const Colouring& g);

// The colour whose subgraph is connected on all vertices; red preferred.
// swapped=true means blue was chosen and the pipeline relabels colours.
std::pair<Colour, bool> choose_search_colour(const Colouring& g);

struct AugmentationEvent {
    std::string rule;
    std::size_t packing_before = 0;
    std::size_t packing_after = 0;
};

struct FindReport {
    bool swapped = false;
    std::string outcome;  // red-packing | blue-component | blue-embedding | violation
    std::vector<AugmentationEvent> trace;
    std::vector<std::size_t> component_sizes;
    long long s_cliques = 0;
    long long t_cliques = 0;
    std::vector<long long> d_sizes;
    int target_component = -1;
    std::size_t final_packing_size = 0;
    // filled only on violation: the packing at the moment of failure
    std::vector<std::vector<int>> packing_snapshot;

    std::string to_key_value_text() const;
};

struct FindOutcome {
    std::variant<Certificate, StructureViolation> result;
    FindReport report;

    bool succeeded() const { return std::holds_alternative<Certificate>(result); }
};

// The full augmentation loop: grows a red packing until it wins outright or
// the blue side yields a connected embedding, returning a certificate either
// way, or a StructureViolation dump if a relied-on structural fact fails.
// Throws std::invalid_argument when the (r, n, N) regime check fails.
FindOutcome find_connected_clique_matching(const Colouring& g, const Params& params);

}  // namespace rcm

#endif

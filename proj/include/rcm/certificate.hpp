#ifndef RCM_CERTIFICATE_HPP
#define RCM_CERTIFICATE_HPP

#include <string>
#include <utility>
#include <vector>

#include "rcm/colouring.hpp"

namespace rcm {

// Machine-checkable witness: n disjoint monochromatic r-cliques whose
// vertices share one connected component of the stated colour.
struct Certificate {
    Colour colour = Colour::red;
    std::vector<std::vector<int>> cliques;
    // Monochromatic edges connecting clique representatives; informational,
    // the verifier recomputes connectivity from scratch.
    std::vector<std::pair<int, int>> witness_edges;
    // True when the finder exchanged colour roles internally. Not serialized.
    bool colour_roles_swapped = false;

    std::string serialize() const;
    static Certificate parse(const std::string& text);
};

// Fills witness_edges with a deterministic set of colour-monochromatic edges
// linking all clique vertices inside their component.
void attach_connectivity_witness(const Colouring& g, Certificate& cert);

}  // namespace rcm

#endif

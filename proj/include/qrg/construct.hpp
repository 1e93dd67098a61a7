#ifndef QRG_CONSTRUCT_HPP
#define QRG_CONSTRUCT_HPP

#include "qrg/clique_core.hpp"

#include <string>
#include <utility>

namespace qrg {

// Explicit maximum clique of the representation graph of (q, a). The first
// vertex is always 0. For a unit scalar the next k vertices are linearly
// independent with q(x_i) = a and b(x_i, x_j) = a, and the extra vertex
// -(x_1 + ... + x_k) closes the clique when the case grants it. For a = 0
// the vertices are a maximal totally isotropic submodule.
struct Clique {
    Ring ring;
    int n = 0;
    std::vector<Vec> vertices;  // first entry is the zero vector
    int k = 0;                  // independent clique vectors (embedded dim)
    bool extra_vector = false;
};

// Deterministic construction: x_1 = represent_value, then each further
// vector is the first point (canonical coefficient order) of the affine
// solution set of b(x_j, x) = a that satisfies q(x) = a and is independent
// of its predecessors, with backtracking on dead ends. Over Z/p^k the chain
// is found over the residue field and Hensel-lifted one vector at a time.
// a = 0 builds a maximal totally isotropic submodule instead (hyperbolic
// part plus the p^ceil(k/2)-scaled anisotropic block over Z/p^k). Throws
// math_error if no clique of the predicted size is found, which signals a
// bug rather than a valid outcome.
Clique construct_max_clique(const QForm& q, Fe a);

struct CliqueValidation {
    bool ok = false;
    // first offending pair in scan order when !ok
    std::optional<std::pair<Vec, Vec>> witness;
    std::string reason;
};

// True iff the vertices are pairwise distinct and every pairwise difference
// represents a. Throws math_error on a vertex dimension mismatch.
CliqueValidation validate_clique(const QForm& q, Fe a,
                                 const std::vector<Vec>& vertices);

// One vertex per line, coordinates comma-separated in canonical encoding.
std::string clique_to_csv(const Clique& c);
// JSON array of coordinate arrays, e.g. [[0,0],[1,0]].
std::string clique_to_json(const Clique& c);

}  // namespace qrg

#endif

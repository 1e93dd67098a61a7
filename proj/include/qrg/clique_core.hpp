#ifndef QRG_CLIQUE_CORE_HPP
#define QRG_CLIQUE_CORE_HPP

#include "qrg/oracle.hpp"
#include "qrg/testform.hpp"

namespace qrg {

// Classification of (q, a) driving the closed-form clique numbers. Odd
// characteristic splits on q = gamma_{a,n} and divisibility of n, n+1, n+2
// by the characteristic; characteristic 2 splits on q = gamma_{a,n} and
// n mod 4. The two non-table labels: a = 0 (cliques are totally isotropic
// sets) and the char-2 dimension-2 anisotropic-complement corner, which the
// tables do not cover and which falls back to exhaustive search.
enum class CaseLabel {
    odd_a, odd_b, odd_c, odd_d, odd_e,
    char2_a, char2_b, char2_c, char2_d,
    isotropic,
    dimension_edge,
};

// "A".."E", "2A".."2D", "isotropic", "edge"
const char* case_token(CaseLabel label);

struct CliqueCase {
    CaseLabel label;
    // largest embedded test-form dimension; for the isotropic label this is
    // the Witt index of q (of its residue form over Z/p^k) instead
    int k = 0;
    // true when a maximum clique has k+2 points rather than k+1: odd
    // characteristic iff char | k+2, characteristic 2 iff k = 2 mod 4
    bool extra_vector = false;
    std::optional<EmbeddingReport> embedding;  // unit a only
};

// q non-degenerate over a finite field or Z/p^k (p odd); a must be zero or
// a unit. Over Z/p^k the table conditions are evaluated on the residue
// field, which determines the clique number of the lifted graph as well.
CliqueCase classify_case(const QForm& q, Fe a);

struct CliqueReport {
    BigInt omega;
    CliqueCase decision;
    std::vector<std::string> warnings;
};

// Clique number of the representation graph of (q, a). Unit a: k+1, plus 1
// when the extra vector -(x_1+...+x_k) extends the standard clique. a = 0:
// size of a maximal totally isotropic submodule. The char-2 dimension-2
// corner runs the exhaustive oracle under `fallback` and attaches a warning.
CliqueReport clique_number(const QForm& q, Fe a,
                           const OracleLimits& fallback = OracleLimits{});

struct GroupOrders {
    BigInt o_order;    // |O(q)|
    BigInt iso_order;  // affine isometries: f^n |O(q)|
};

// Orthogonal-group and affine-isometry-group orders of a non-degenerate
// form over a finite field (three-branch closed form: odd dimension,
// hyperbolic, even non-hyperbolic).
GroupOrders group_orders(const QForm& q);

struct CountReport {
    BigInt omega;
    BigInt omega_max;  // number of maximum cliques
    BigInt o_order;
    BigInt iso_order;
    // orbit sizes summing to omega_max: one per case
    std::vector<BigInt> orbit_terms;
    // 2f-2 or 2f+2 when the case formula divides by the complement factor
    std::optional<BigInt> alpha;
    CliqueCase decision;
    std::vector<std::string> warnings;
};

// Number of maximum cliques over a finite field with a a unit. Every
// division must be exact; a remainder signals a classification bug and
// throws. The char-2 dimension-2 corner counts via the oracle instead.
CountReport count_max_cliques(const QForm& q, Fe a,
                              const OracleLimits& fallback = OracleLimits{});

}  // namespace qrg

#endif

#ifndef QRG_CHARZERO_HPP
#define QRG_CHARZERO_HPP

#include <vector>

#include "qrg/algebra.hpp"

namespace qrg {

// Diagonal quadratic form over Q with every entry reduced to the squarefree
// representative of its square class.
struct RationalForm {
    std::vector<BigInt> entries;  // squarefree, nonzero
    int n = 0;
    int r_plus = 0;
    int r_minus = 0;
};

// Reduces a rational diagonal to squarefree integer entries. Empty diagonals
// and zero entries (degenerate forms) are rejected.
RationalForm make_rational_form(const std::vector<BigRat>& diag);

// Discriminant square class: squarefree part of the product of the entries.
BigInt form_discriminant(const RationalForm& q);

// Diagonalization over Q of the test form gamma_{a,n}: squarefree parts of
// 2a*i*(i+1), i = 1..n.
RationalForm gamma_rational_diag(const BigRat& a, int n);

// Clique number over the reals: r_+ + 1 for a > 0, r_- + 1 for a < 0.
int real_omega(const RationalForm& q, const BigRat& a);

// Witt index of q over the completion at v. Real place: min(r_+, r_-).
// Odd p: valuation-parity split into two unit diagonal forms over GF(p),
// i_W(phi_1) + i_W(phi_2). p = 2: recursive isotropy splitting on the
// classifying triple (dim, discriminant, Hasse invariant).
int local_witt_index(const RationalForm& q, const Place& v);

struct PlaceWitt {
    Place place = Place::at_infinity();
    int witt = 0;
};

struct SubformReport {
    bool contained = false;
    int needed = 0;                  // dim psi, the bound every place must meet
    std::vector<PlaceWitt> profile;  // real place, 2, odd primes dividing an entry
};

// Isometric embedding test psi -> phi over Q: contained iff the Witt index
// of phi + (-psi) reaches dim psi at the real place, at 2, and at every odd
// prime dividing an entry. At every other place the sum is unimodular of
// dimension dim phi + dim psi, whose generic Witt floor already meets the
// bound, so the pruned profile decides.
SubformReport rational_subform_test(const RationalForm& psi, const RationalForm& phi);

struct RationalOmegaReport {
    int omega = 0;
    int d = 0;            // largest k with gamma_{a,k} embedded
    int blocked_dim = 0;  // d + 1, the first dimension that fails
    Place blocked_place = Place::at_infinity();  // first failing place at d + 1
    std::vector<PlaceWitt> certificate;          // full profile at d + 1
};

// Clique number over Q by the local-global principle: ascend k while
// gamma_{a,k} embeds into q (the signature caps the ascent), omega = d + 1
// with no extra vector in characteristic zero, and the certificate is the
// local profile at the first dimension that fails.
RationalOmegaReport rational_omega(const RationalForm& q, const BigRat& a);

// Clique number over a single completion (R or Q_p): the same ascent with
// the Witt test at one place.
RationalOmegaReport local_omega(const RationalForm& q, const BigRat& a, const Place& v);

// Clique number of the sum-of-squares form s_n over Q. Even n: n + 1 when
// n + 1 is a perfect square, else n. Odd n: n + 1 when 2(n+1) is a perfect
// square; else n when <1, 2(n-1), -n> is isotropic over Q; else n - 1.
int sos_fastpath(int n);

}  // namespace qrg

#endif

#ifndef QRG_QFORM_HPP
#define QRG_QFORM_HPP

#include "qrg/algebra.hpp"
#include "qrg/linalg.hpp"

namespace qrg {

// Quadratic form in n variables over a finite ring, stored as the
// upper-triangular coefficient matrix: q(x) = sum_{i<=j} u[i][j] x_i x_j.
// The representation is uniform across characteristics; degenerate forms can
// be constructed and queried, but invariant/clique operations reject them.
struct QForm {
    Ring ring;
    int n = 0;
    std::vector<Fe> u;  // n*n row-major, entries below the diagonal are 0

    Fe at(int i, int j) const { return u[static_cast<std::size_t>(i) * n + j]; }
};

QForm make_form_diag(const Ring& R, const std::vector<Fe>& diag);
QForm make_form_upper(const Ring& R, const std::vector<std::vector<Fe>>& rows);
// Symmetric Gram matrix B with q(x) = (x^T B x)/2; requires 2 invertible,
// so it is rejected in characteristic 2.
QForm make_form_gram(const Ring& R, const std::vector<std::vector<Fe>>& rows);

// The block [a, b]: a x^2 + x y + b y^2 (any characteristic; the standard
// binary building block in characteristic 2).
QForm binary_block(const Ring& R, Fe a, Fe b);

QForm direct_sum(const QForm& q1, const QForm& q2);

// q'(x) = q(Sx) for row-major n x n S (need not be invertible; congruence
// tests pass invertible S).
QForm transform_congruent(const QForm& q, const std::vector<Fe>& S);

Fe evaluate(const QForm& q, const Vec& x);

// Polar form b(x, y) = q(x+y) - q(x) - q(y); its matrix is U + U^T.
std::vector<Fe> polar_matrix(const QForm& q);
Fe polar_value(const QForm& q, const Vec& x, const Vec& y);

// det(U + U^T); exact over Z/p^k via the integer lift.
Fe polar_det(const QForm& q);

// Non-degenerate == polar determinant is a unit.
bool is_nondegenerate(const QForm& q);

struct FormInvariants {
    int dim = 0;
    // Odd characteristic: canonical square-class representative of the polar
    // determinant (1 or the smallest non-square).
    std::optional<Fe> det_class;
    // Characteristic 2: Arf class in F/{x^2+x}, normalized to 0/1.
    std::optional<int> arf;
    int witt_index = 0;
    bool hyperbolic = false;
};

// Field rings only; non-degenerate only.
FormInvariants invariants_ff(const QForm& q);
int witt_index_ff(const QForm& q);
bool is_isometric_ff(const QForm& q1, const QForm& q2);

// First vector x (canonical scan order) with q(x) = a, if any. For n >= 3
// the scan first tries the coordinate plane x_3 = ... = x_n = 0 and falls
// back to the full space.
std::optional<Vec> represent_value(const QForm& q, Fe a);

// Coefficient-wise reduction Z/p^k -> GF(p).
QForm reduce_residue_form(const QForm& q);

}  // namespace qrg

#endif

#ifndef QRG_LINALG_HPP
#define QRG_LINALG_HPP

#include "qrg/algebra.hpp"

namespace qrg {

using Vec = std::vector<Fe>;

// Dense row-major matrices over a field (linear algebra over residue rings
// is routed through integer lifts or the residue field instead).

// Determinant by Gaussian elimination; field rings only.
Fe field_det(const Ring& R, std::vector<Fe> m, int n);

// Exact integer determinant (Bareiss); used for determinants over Z/p^k via
// the canonical lift.
BigInt int_det(std::vector<BigInt> m, int n);

// Rank of an r x c matrix over a field.
int field_rank(const Ring& R, std::vector<Fe> m, int rows, int cols);

// Solution set of A x = rhs over a field: one particular solution (if any)
// and a deterministic nullspace basis (free columns in ascending order).
struct LinearSolution {
    bool solvable = false;
    Vec particular;
    std::vector<Vec> nullspace;
};
LinearSolution solve_linear(const Ring& R, const std::vector<Vec>& rows,
                            const Vec& rhs);

Vec vec_add(const Ring& R, const Vec& x, const Vec& y);
Vec vec_sub(const Ring& R, const Vec& x, const Vec& y);
Vec vec_neg(const Ring& R, const Vec& x);
Vec vec_scale(const Ring& R, Fe c, const Vec& x);

// Canonical enumeration of ring^n: coordinate 0 varies fastest, so the
// index is sum enc(x_i) * size^i.
std::uint64_t vec_index(const Ring& R, const Vec& x);
Vec vec_from_index(const Ring& R, int n, std::uint64_t idx);

}  // namespace qrg

#endif

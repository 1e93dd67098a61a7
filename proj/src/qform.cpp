#include "qrg/qform.hpp"

#include <algorithm>

namespace qrg {

// --- linalg ---

Fe field_det(const Ring& R, std::vector<Fe> m, int n) {
    if (!R.is_field()) throw math_error("field determinant needs a field");
    Fe det = R.one();
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (m[static_cast<std::size_t>(r) * n + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(pivot) * n + j],
                          m[static_cast<std::size_t>(col) * n + j]);
            det = R.neg(det);
        }
        Fe p = m[static_cast<std::size_t>(col) * n + col];
        det = R.mul(det, p);
        Fe pinv = R.inv(p);
        for (int r = col + 1; r < n; ++r) {
            Fe f = R.mul(m[static_cast<std::size_t>(r) * n + col], pinv);
            if (f == 0) continue;
            for (int j = col; j < n; ++j) {
                Fe& cell = m[static_cast<std::size_t>(r) * n + j];
                cell = R.sub(cell, R.mul(f, m[static_cast<std::size_t>(col) * n + j]));
            }
        }
    }
    return det;
}

BigInt int_det(std::vector<BigInt> m, int n) {
    // Bareiss fraction-free elimination
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (int col = 0; col < n - 1; ++col) {
        if (m[static_cast<std::size_t>(col) * n + col] == 0) {
            int pivot = -1;
            for (int r = col + 1; r < n; ++r)
                if (m[static_cast<std::size_t>(r) * n + col] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return 0;
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(pivot) * n + j],
                          m[static_cast<std::size_t>(col) * n + j]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            for (int j = col + 1; j < n; ++j) {
                BigInt t = m[static_cast<std::size_t>(r) * n + j] *
                               m[static_cast<std::size_t>(col) * n + col] -
                           m[static_cast<std::size_t>(r) * n + col] *
                               m[static_cast<std::size_t>(col) * n + j];
                m[static_cast<std::size_t>(r) * n + j] = t / prev;
            }
            m[static_cast<std::size_t>(r) * n + col] = 0;
        }
        prev = m[static_cast<std::size_t>(col) * n + col];
    }
    return sign * m[static_cast<std::size_t>(n - 1) * n + (n - 1)];
}

int field_rank(const Ring& R, std::vector<Fe> m, int rows, int cols) {
    if (!R.is_field()) throw math_error("rank needs a field");
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<std::size_t>(r) * cols + col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < cols; ++j)
                std::swap(m[static_cast<std::size_t>(pivot) * cols + j],
                          m[static_cast<std::size_t>(rank) * cols + j]);
        Fe pinv = R.inv(m[static_cast<std::size_t>(rank) * cols + col]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Fe f = R.mul(m[static_cast<std::size_t>(r) * cols + col], pinv);
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j) {
                Fe& cell = m[static_cast<std::size_t>(r) * cols + j];
                cell = R.sub(cell,
                             R.mul(f, m[static_cast<std::size_t>(rank) * cols + j]));
            }
        }
        ++rank;
    }
    return rank;
}

LinearSolution solve_linear(const Ring& R, const std::vector<Vec>& rows,
                            const Vec& rhs) {
    if (!R.is_field()) throw math_error("linear solve needs a field");
    if (rows.size() != rhs.size())
        throw math_error("system row/rhs mismatch");
    int m = static_cast<int>(rows.size());
    int n = m ? static_cast<int>(rows[0].size()) : 0;
    for (const Vec& r : rows)
        if (static_cast<int>(r.size()) != n)
            throw math_error("ragged system rows");

    // reduced row echelon of [A | rhs]
    std::vector<Vec> a(rows.begin(), rows.end());
    Vec b(rhs);
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[pivot], a[rank]);
        std::swap(b[pivot], b[rank]);
        Fe pinv = R.inv(a[rank][col]);
        for (int j = 0; j < n; ++j) a[rank][j] = R.mul(a[rank][j], pinv);
        b[rank] = R.mul(b[rank], pinv);
        for (int r = 0; r < m; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Fe f = a[r][col];
            for (int j = 0; j < n; ++j)
                a[r][j] = R.sub(a[r][j], R.mul(f, a[rank][j]));
            b[r] = R.sub(b[r], R.mul(f, b[rank]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    LinearSolution sol;
    for (int r = rank; r < m; ++r)
        if (b[r] != 0) return sol;  // inconsistent
    sol.solvable = true;
    sol.particular.assign(n, 0);
    for (int r = 0; r < rank; ++r) sol.particular[pivot_col[r]] = b[r];
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec basis(n, 0);
        basis[free] = R.one();
        for (int r = 0; r < rank; ++r)
            basis[pivot_col[r]] = R.neg(a[r][free]);
        sol.nullspace.push_back(std::move(basis));
    }
    return sol;
}

Vec vec_add(const Ring& R, const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = R.add(x[i], y[i]);
    return r;
}

Vec vec_sub(const Ring& R, const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = R.sub(x[i], y[i]);
    return r;
}

Vec vec_neg(const Ring& R, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = R.neg(x[i]);
    return r;
}

Vec vec_scale(const Ring& R, Fe c, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = R.mul(c, x[i]);
    return r;
}

std::uint64_t vec_index(const Ring& R, const Vec& x) {
    std::uint64_t idx = 0;
    for (std::size_t i = x.size(); i-- > 0;) idx = idx * R.size() + x[i];
    return idx;
}

Vec vec_from_index(const Ring& R, int n, std::uint64_t idx) {
    Vec x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = static_cast<Fe>(idx % R.size());
        idx /= R.size();
    }
    return x;
}

// --- form construction ---

namespace {

void check_entry(const Ring& R, Fe v) {
    if (v >= R.size()) throw math_error("coefficient out of ring range");
}

}  // namespace

QForm make_form_diag(const Ring& R, const std::vector<Fe>& diag) {
    int n = static_cast<int>(diag.size());
    if (n < 1) throw math_error("form dimension must be >= 1");
    QForm q{R, n, std::vector<Fe>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) {
        check_entry(R, diag[static_cast<std::size_t>(i)]);
        q.u[static_cast<std::size_t>(i) * n + i] = diag[static_cast<std::size_t>(i)];
    }
    return q;
}

QForm make_form_upper(const Ring& R, const std::vector<std::vector<Fe>>& rows) {
    int n = static_cast<int>(rows.size());
    if (n < 1) throw math_error("form dimension must be >= 1");
    QForm q{R, n, std::vector<Fe>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw math_error("upper matrix must be square");
        for (int j = 0; j < n; ++j) {
            Fe v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            check_entry(R, v);
            if (j < i && v != 0)
                throw math_error("upper matrix has entries below the diagonal");
            if (j >= i) q.u[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
    return q;
}

QForm make_form_gram(const Ring& R, const std::vector<std::vector<Fe>>& rows) {
    if (R.char_two())
        throw math_error("gram input needs 2 invertible; use upper form");
    int n = static_cast<int>(rows.size());
    if (n < 1) throw math_error("form dimension must be >= 1");
    Fe half = R.inv(R.embed_int(2));
    QForm q{R, n, std::vector<Fe>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw math_error("gram matrix must be square");
        for (int j = 0; j < n; ++j) {
            Fe v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            check_entry(R, v);
            if (rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != v)
                throw math_error("gram matrix must be symmetric");
            if (i == j)
                q.u[static_cast<std::size_t>(i) * n + i] = R.mul(half, v);
            else if (j > i)
                q.u[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
    return q;
}

QForm binary_block(const Ring& R, Fe a, Fe b) {
    return make_form_upper(R, {{a, R.one()}, {0, b}});
}

QForm direct_sum(const QForm& q1, const QForm& q2) {
    if (q1.ring != q2.ring) throw math_error("direct sum across rings");
    int n = q1.n + q2.n;
    QForm q{q1.ring, n, std::vector<Fe>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < q1.n; ++i)
        for (int j = i; j < q1.n; ++j)
            q.u[static_cast<std::size_t>(i) * n + j] = q1.at(i, j);
    for (int i = 0; i < q2.n; ++i)
        for (int j = i; j < q2.n; ++j)
            q.u[static_cast<std::size_t>(q1.n + i) * n + (q1.n + j)] = q2.at(i, j);
    return q;
}

QForm transform_congruent(const QForm& q, const std::vector<Fe>& S) {
    const Ring& R = q.ring;
    int n = q.n;
    if (static_cast<int>(S.size()) != n * n)
        throw math_error("transform matrix size mismatch");
    // M = S^T U S, then fold to upper triangular
    std::vector<Fe> us(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Fe acc = 0;
            for (int l = 0; l < n; ++l)
                acc = R.add(acc, R.mul(q.u[static_cast<std::size_t>(i) * n + l],
                                       S[static_cast<std::size_t>(l) * n + j]));
            us[static_cast<std::size_t>(i) * n + j] = acc;
        }
    QForm out{R, n, std::vector<Fe>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Fe acc = 0;
            for (int l = 0; l < n; ++l)
                acc = R.add(acc, R.mul(S[static_cast<std::size_t>(l) * n + i],
                                       us[static_cast<std::size_t>(l) * n + j]));
            // fold M into the upper triangle
            if (i < j)
                out.u[static_cast<std::size_t>(i) * n + j] =
                    R.add(out.u[static_cast<std::size_t>(i) * n + j], acc);
            else if (i == j)
                out.u[static_cast<std::size_t>(i) * n + j] =
                    R.add(out.u[static_cast<std::size_t>(i) * n + j], acc);
            else
                out.u[static_cast<std::size_t>(j) * n + i] =
                    R.add(out.u[static_cast<std::size_t>(j) * n + i], acc);
        }
    return out;
}

Fe evaluate(const QForm& q, const Vec& x) {
    if (static_cast<int>(x.size()) != q.n)
        throw math_error("vector dimension mismatch");
    const Ring& R = q.ring;
    Fe acc = 0;
    for (int i = 0; i < q.n; ++i) {
        Fe xi = x[static_cast<std::size_t>(i)];
        if (xi == 0) continue;
        for (int j = i; j < q.n; ++j) {
            Fe c = q.at(i, j);
            if (c == 0) continue;
            acc = R.add(acc, R.mul(R.mul(c, xi), x[static_cast<std::size_t>(j)]));
        }
    }
    return acc;
}

std::vector<Fe> polar_matrix(const QForm& q) {
    const Ring& R = q.ring;
    int n = q.n;
    std::vector<Fe> b(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Fe c = q.at(i, j);
            if (i == j) {
                b[static_cast<std::size_t>(i) * n + i] = R.add(c, c);
            } else {
                b[static_cast<std::size_t>(i) * n + j] = c;
                b[static_cast<std::size_t>(j) * n + i] = c;
            }
        }
    return b;
}

Fe polar_value(const QForm& q, const Vec& x, const Vec& y) {
    if (static_cast<int>(x.size()) != q.n || static_cast<int>(y.size()) != q.n)
        throw math_error("vector dimension mismatch");
    const Ring& R = q.ring;
    Fe acc = 0;
    for (int i = 0; i < q.n; ++i) {
        for (int j = i; j < q.n; ++j) {
            Fe c = q.at(i, j);
            if (c == 0) continue;
            if (i == j) {
                Fe t = R.mul(R.mul(c, x[static_cast<std::size_t>(i)]),
                             y[static_cast<std::size_t>(i)]);
                acc = R.add(acc, R.add(t, t));
            } else {
                Fe t1 = R.mul(R.mul(c, x[static_cast<std::size_t>(i)]),
                              y[static_cast<std::size_t>(j)]);
                Fe t2 = R.mul(R.mul(c, x[static_cast<std::size_t>(j)]),
                              y[static_cast<std::size_t>(i)]);
                acc = R.add(acc, R.add(t1, t2));
            }
        }
    }
    return acc;
}

Fe polar_det(const QForm& q) {
    const Ring& R = q.ring;
    std::vector<Fe> b = polar_matrix(q);
    if (R.is_field()) return field_det(R, b, q.n);
    std::vector<BigInt> lift(b.begin(), b.end());
    BigInt d = int_det(std::move(lift), q.n);
    BigInt m = ((d % R.size()) + R.size()) % R.size();
    return static_cast<Fe>(m);
}

bool is_nondegenerate(const QForm& q) { return q.ring.is_unit(polar_det(q)); }

// --- invariants ---

namespace {

Vec unit_vec(int n, int i) {
    Vec e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
}

// Arf class via symplectic reduction of the (alternating) polar form:
// peel normalized pairs (u, v) with b(u,v) = 1, accumulate q(u) q(v), and
// reduce modulo {x^2 + x} by the absolute trace.
int arf_bit(const QForm& q) {
    const Ring& R = q.ring;
    std::vector<Vec> vecs;
    for (int i = 0; i < q.n; ++i) vecs.push_back(unit_vec(q.n, i));
    Fe acc = 0;
    while (!vecs.empty()) {
        Vec u = vecs.front();
        int partner = -1;
        for (std::size_t j = 1; j < vecs.size(); ++j) {
            if (polar_value(q, u, vecs[j]) != 0) {
                partner = static_cast<int>(j);
                break;
            }
        }
        if (partner < 0) throw math_error("arf needs a non-degenerate form");
        Fe c = polar_value(q, u, vecs[static_cast<std::size_t>(partner)]);
        Vec v = vec_scale(R, R.inv(c), vecs[static_cast<std::size_t>(partner)]);
        acc = R.add(acc, R.mul(evaluate(q, u), evaluate(q, v)));
        vecs.erase(vecs.begin() + partner);
        vecs.erase(vecs.begin());
        for (Vec& z : vecs) {
            Fe zu = polar_value(q, z, u);
            Fe zv = polar_value(q, z, v);
            z = vec_add(R, z, vec_add(R, vec_scale(R, zv, u), vec_scale(R, zu, v)));
        }
    }
    return R.trace(acc) == 0 ? 0 : 1;
}

void require_field_nondeg(const QForm& q, const char* what) {
    if (!q.ring.is_field())
        throw math_error(std::string(what) + " needs a field ring");
    if (!is_nondegenerate(q))
        throw math_error(std::string(what) + " needs a non-degenerate form");
}

bool hyperbolic_ff(const QForm& q) {
    const Ring& R = q.ring;
    if (q.n % 2 != 0) return false;
    if (R.char_two()) return arf_bit(q) == 0;
    // hyperbolic iff det(polar) lies in the square class of (-1)^(n/2)
    Fe sign = R.pow(R.neg(R.one()), static_cast<std::uint64_t>(q.n / 2));
    return R.is_square(R.mul(polar_det(q), sign));
}

}  // namespace

FormInvariants invariants_ff(const QForm& q) {
    require_field_nondeg(q, "invariants");
    const Ring& R = q.ring;
    FormInvariants inv;
    inv.dim = q.n;
    if (R.char_two()) {
        if (q.n % 2 != 0)
            throw math_error("no non-degenerate odd-dimensional form in char 2");
        inv.arf = arf_bit(q);
    } else {
        Fe d = polar_det(q);
        inv.det_class = R.is_square(d) ? R.one() : R.smallest_nonsquare();
    }
    inv.hyperbolic = hyperbolic_ff(q);
    inv.witt_index =
        q.n % 2 ? (q.n - 1) / 2 : (inv.hyperbolic ? q.n / 2 : q.n / 2 - 1);
    return inv;
}

int witt_index_ff(const QForm& q) { return invariants_ff(q).witt_index; }

bool is_isometric_ff(const QForm& q1, const QForm& q2) {
    if (q1.ring != q2.ring)
        throw math_error("isometry test across different rings");
    require_field_nondeg(q1, "isometry");
    require_field_nondeg(q2, "isometry");
    if (q1.n != q2.n) return false;
    const Ring& R = q1.ring;
    if (R.char_two()) return arf_bit(q1) == arf_bit(q2);
    return R.is_square(R.mul(polar_det(q1), polar_det(q2)));
}

std::optional<Vec> represent_value(const QForm& q, Fe a) {
    const Ring& R = q.ring;
    if (q.n >= 3) {
        // 2-dimensional subproblem on the first two coordinates
        std::uint64_t plane = R.size() * R.size();
        for (std::uint64_t idx = 0; idx < plane; ++idx) {
            Vec x(static_cast<std::size_t>(q.n), 0);
            x[0] = static_cast<Fe>(idx % R.size());
            x[1] = static_cast<Fe>(idx / R.size());
            if (evaluate(q, x) == a) return x;
        }
    }
    std::uint64_t total = 1;
    for (int i = 0; i < q.n; ++i) {
        if (total > (1ull << 30) / R.size())
            throw limit_error("representation scan space too large");
        total *= R.size();
    }
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Vec x = vec_from_index(R, q.n, idx);
        if (evaluate(q, x) == a) return x;
    }
    return std::nullopt;
}

QForm reduce_residue_form(const QForm& q) {
    const Ring& R = q.ring;
    if (R.kind() != RingKind::residue_ring)
        throw math_error("residue reduction needs a residue ring");
    Ring K = R.residue_field();
    QForm out{K, q.n, std::vector<Fe>(q.u.size(), 0)};
    for (std::size_t i = 0; i < q.u.size(); ++i) out.u[i] = R.residue(q.u[i]);
    return out;
}

}  // namespace qrg

#include "qrg/construct.hpp"

#include <sstream>

namespace qrg {

namespace {

// functional y -> b(x, y) as a row vector x^T (U + U^T)
Vec polar_row(const QForm& q, const std::vector<Fe>& B, const Vec& x) {
    const Ring& R = q.ring;
    Vec row(q.n, 0);
    for (int c = 0; c < q.n; ++c) {
        Fe s = 0;
        for (int r = 0; r < q.n; ++r)
            s = R.add(s, R.mul(x[r], B[static_cast<std::size_t>(r) * q.n + c]));
        row[c] = s;
    }
    return row;
}

// odometer over tuples with digits in [0, range), coordinate 0 fastest;
// false once the tuple wraps back to all zeros
bool next_tuple(Vec& t, std::uint64_t range) {
    for (Fe& d : t) {
        if (++d < range) return true;
        d = 0;
    }
    return false;
}

Vec combo(const Ring& R, int n, const std::vector<Vec>& basis, const Vec& t) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (t[i]) v = vec_add(R, v, vec_scale(R, t[i], basis[i]));
    return v;
}

// rank of the residue reductions over the residue field
int residue_rank(const Ring& R, const std::vector<Vec>& vecs, int n) {
    if (vecs.empty()) return 0;
    std::vector<Fe> m;
    for (const Vec& v : vecs)
        for (Fe x : v) m.push_back(R.is_field() ? x : R.residue(x));
    Ring K = R.is_field() ? R : R.residue_field();
    return field_rank(K, m, static_cast<int>(vecs.size()), n);
}

// one solution of b-functional rows * x = rhs over the full ring; the rows
// must be independent modulo the maximal ideal so every pivot is a unit
Vec solve_unit_rows(const Ring& R, std::vector<Vec> rows, Vec rhs) {
    int m = static_cast<int>(rows.size());
    int n = static_cast<int>(rows[0].size());
    std::vector<int> pivot_col(m, -1);
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int pr = -1;
        for (int i = r; i < m; ++i)
            if (R.is_unit(rows[i][c])) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[pr], rows[r]);
        std::swap(rhs[pr], rhs[r]);
        Fe iv = R.inv(rows[r][c]);
        for (int j = c; j < n; ++j) rows[r][j] = R.mul(rows[r][j], iv);
        rhs[r] = R.mul(rhs[r], iv);
        for (int i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Fe f = rows[i][c];
            for (int j = c; j < n; ++j)
                rows[i][j] = R.sub(rows[i][j], R.mul(f, rows[r][j]));
            rhs[i] = R.sub(rhs[i], R.mul(f, rhs[r]));
        }
        pivot_col[r] = c;
        ++r;
    }
    if (r < m)
        throw math_error("lift system lost rank; this signals a bug");
    Vec x(n, 0);
    for (int i = 0; i < m; ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

// depth-first extension of the clique chain over a field: each level scans
// the affine solution set of b(x_j, x) = a in canonical coefficient order
bool extend_chain(const QForm& q, Fe a, const std::vector<Fe>& B, int target,
                  std::vector<Vec>& chain) {
    if (static_cast<int>(chain.size()) == target) return true;
    const Ring& K = q.ring;
    std::vector<Vec> rows;
    Vec rhs;
    for (const Vec& x : chain) {
        rows.push_back(polar_row(q, B, x));
        rhs.push_back(a);
    }
    LinearSolution sol = solve_linear(K, rows, rhs);
    if (!sol.solvable) return false;
    Vec t(sol.nullspace.size(), 0);
    do {
        Vec cand = sol.particular;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i]) cand = vec_add(K, cand, vec_scale(K, t[i], sol.nullspace[i]));
        if (evaluate(q, cand) != a) continue;
        std::vector<Vec> trial = chain;
        trial.push_back(cand);
        if (residue_rank(K, trial, q.n) != static_cast<int>(trial.size()))
            continue;
        chain.push_back(cand);
        if (extend_chain(q, a, B, target, chain)) return true;
        chain.pop_back();
    } while (next_tuple(t, K.size()));
    return false;
}

// Newton lift of a residue chain vector to an exact one: each step solves
// b(x_j, delta) = a - b(x_j, x) and b(x, delta) = a - q(x), which kills the
// pair defects exactly and squares the q-defect's p-valuation
Vec lift_chain_vector(const QForm& q, Fe a, const std::vector<Vec>& exact,
                      const std::vector<Fe>& B, Vec x) {
    const Ring& R = q.ring;
    for (int guard = 0; guard < 64; ++guard) {
        std::vector<Vec> rows;
        Vec rhs;
        for (const Vec& xj : exact) {
            rows.push_back(polar_row(q, B, xj));
            rhs.push_back(R.sub(a, polar_value(q, xj, x)));
        }
        rows.push_back(polar_row(q, B, x));
        rhs.push_back(R.sub(a, evaluate(q, x)));
        bool done = true;
        for (Fe d : rhs)
            if (d != 0) { done = false; break; }
        if (done) return x;
        x = vec_add(R, x, solve_unit_rows(R, rows, rhs));
    }
    throw math_error("lift failed to converge; this signals a bug");
}

// q restricted to the span of the basis, as a form in basis coordinates
QForm restricted_form(const QForm& q, const std::vector<Vec>& basis) {
    const Ring& R = q.ring;
    int d = static_cast<int>(basis.size());
    std::vector<std::vector<Fe>> rows(d, std::vector<Fe>(d, 0));
    for (int i = 0; i < d; ++i) {
        rows[i][i] = evaluate(q, basis[i]);
        for (int j = i + 1; j < d; ++j)
            rows[i][j] = polar_value(q, basis[i], basis[j]);
    }
    return make_form_upper(R, rows);
}

// exact isotropic vector from a residue-isotropic one, inside the restricted
// coordinates (so orthogonality to already split-off planes is preserved)
Vec isotropic_lift(const QForm& qs, Vec t) {
    const Ring& R = qs.ring;
    if (R.is_field()) return t;
    std::vector<Fe> B = polar_matrix(qs);
    for (int guard = 0; guard < 64; ++guard) {
        Fe defect = R.neg(evaluate(qs, t));
        if (defect == 0) return t;
        t = vec_add(R, t, solve_unit_rows(R, {polar_row(qs, B, t)}, {defect}));
    }
    throw math_error("lift failed to converge; this signals a bug");
}

// all vectors of a maximal totally isotropic submodule: repeatedly split off
// a hyperbolic plane (isotropic vector, unit partner, projection), then over
// Z/p^k add the p^ceil(k/2)-scaled remaining block
std::vector<Vec> isotropic_vertices(const QForm& q, int witt) {
    const Ring& R = q.ring;
    int n = q.n;
    std::vector<Vec> space;
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = R.one();
        space.push_back(e);
    }
    std::vector<Vec> lagr;
    while (!space.empty()) {
        QForm qs = restricted_form(q, space);
        int d = qs.n;
        std::uint64_t range = R.is_field() ? R.size() : R.prime();
        std::optional<Vec> t0;
        Vec t(d, 0);
        while (next_tuple(t, range)) {
            Fe val = evaluate(qs, t);
            if (R.is_field() ? val == 0 : R.residue(val) == 0) {
                t0 = t;
                break;
            }
        }
        if (!t0) break;
        Vec tv = isotropic_lift(qs, *t0);
        std::vector<Fe> Bs = polar_matrix(qs);
        Vec vrow = polar_row(qs, Bs, tv);
        int l = -1;
        for (int c = 0; c < d; ++c)
            if (R.is_unit(vrow[c])) { l = c; break; }
        if (l < 0)
            throw math_error("no hyperbolic partner found; this signals a bug");
        Vec tu(d, 0);
        tu[l] = R.inv(vrow[l]);
        tu = vec_sub(R, tu, vec_scale(R, evaluate(qs, tu), tv));
        Vec v = combo(R, n, space, tv);
        Vec u = combo(R, n, space, tu);
        lagr.push_back(v);
        std::vector<Vec> next;
        for (const Vec& w : space) {
            Vec w1 = vec_sub(R, w, vec_scale(R, polar_value(q, w, u), v));
            w1 = vec_sub(R, w1, vec_scale(R, polar_value(q, w, v), u));
            std::vector<Vec> trial = next;
            trial.push_back(w1);
            if (residue_rank(R, trial, n) == static_cast<int>(trial.size()))
                next.push_back(std::move(w1));
            if (static_cast<int>(next.size()) == d - 2) break;
        }
        if (static_cast<int>(next.size()) != d - 2)
            throw math_error("complement projection lost rank; this signals a bug");
        space = std::move(next);
    }
    if (static_cast<int>(lagr.size()) != witt)
        throw math_error(
            "isotropic construction disagrees with the Witt index; this "
            "signals a bug");
    std::vector<Vec> verts;
    if (R.is_field()) {
        Vec alpha(lagr.size(), 0);
        do {
            verts.push_back(combo(R, n, lagr, alpha));
        } while (next_tuple(alpha, R.size()));
        return verts;
    }
    std::uint64_t p = R.prime();
    std::uint64_t scale = 1, brange = 1;
    for (unsigned j = 0; j < (R.degree() + 1) / 2; ++j) scale *= p;
    for (unsigned j = 0; j < R.degree() / 2; ++j) brange *= p;
    Vec beta(space.size(), 0);
    do {
        Vec base(n, 0);
        for (std::size_t i = 0; i < space.size(); ++i)
            if (beta[i])
                base = vec_add(
                    R, base,
                    vec_scale(R, static_cast<Fe>(scale * beta[i]), space[i]));
        Vec alpha(lagr.size(), 0);
        do {
            verts.push_back(vec_add(R, base, combo(R, n, lagr, alpha)));
        } while (next_tuple(alpha, R.size()));
    } while (next_tuple(beta, brange));
    // put the zero vector first: the beta = alpha = 0 entry already is
    return verts;
}

}  // namespace

Clique construct_max_clique(const QForm& q, Fe a) {
    const Ring& R = q.ring;
    CliqueCase c = classify_case(q, a);
    Clique out{R, q.n, {}, c.k, c.extra_vector};
    if (c.label == CaseLabel::isotropic) {
        out.vertices = isotropic_vertices(q, c.k);
        return out;
    }
    out.vertices.push_back(Vec(static_cast<std::size_t>(q.n), 0));
    if (c.k == 0) return out;

    bool lifted = !R.is_field();
    QForm qk = lifted ? reduce_residue_form(q) : q;
    Fe ak = lifted ? R.residue(a) : a;

    std::optional<Vec> x1 = represent_value(qk, ak);
    if (!x1)
        throw math_error("value not represented; this signals a classification bug");
    std::vector<Vec> chain{*x1};
    std::vector<Fe> B = polar_matrix(qk);
    if (!extend_chain(qk, ak, B, c.k, chain))
        throw math_error(
            "no clique of the predicted size; this signals a classification "
            "bug");

    if (lifted) {
        std::vector<Fe> BA = polar_matrix(q);
        std::vector<Vec> exact;
        for (const Vec& x : chain)
            exact.push_back(lift_chain_vector(q, a, exact, BA, x));
        chain = std::move(exact);
    }
    for (const Vec& x : chain) out.vertices.push_back(x);
    if (c.extra_vector) {
        Vec s(static_cast<std::size_t>(q.n), 0);
        for (const Vec& x : chain) s = vec_add(R, s, x);
        out.vertices.push_back(vec_neg(R, s));
    }
    CliqueValidation check = validate_clique(q, a, out.vertices);
    if (!check.ok)
        throw math_error("constructed clique failed validation; this signals a bug");
    return out;
}

CliqueValidation validate_clique(const QForm& q, Fe a,
                                 const std::vector<Vec>& vertices) {
    for (const Vec& v : vertices)
        if (static_cast<int>(v.size()) != q.n)
            throw math_error("vertex dimension does not match the form");
    const Ring& R = q.ring;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (vertices[i] == vertices[j])
                return {false, std::make_pair(vertices[i], vertices[j]),
                        "duplicate vertex"};
            if (evaluate(q, vec_sub(R, vertices[i], vertices[j])) != a)
                return {false, std::make_pair(vertices[i], vertices[j]),
                        "difference does not represent the scalar"};
        }
    return {true, std::nullopt, ""};
}

std::string clique_to_csv(const Clique& c) {
    std::ostringstream os;
    for (const Vec& v : c.vertices) {
        for (int i = 0; i < c.n; ++i) {
            if (i) os << ',';
            os << v[static_cast<std::size_t>(i)];
        }
        os << '\n';
    }
    return os.str();
}

std::string clique_to_json(const Clique& c) {
    std::ostringstream os;
    os << '[';
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        if (v) os << ',';
        os << '[';
        for (int i = 0; i < c.n; ++i) {
            if (i) os << ',';
            os << c.vertices[v][static_cast<std::size_t>(i)];
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace qrg

#include "qrg/testform.hpp"

namespace qrg {

TestForm make_gamma(const Ring& R, Fe a, int n) {
    if (!R.is_unit(a)) throw math_error("test form scalar must be a unit");
    if (n < 1) throw math_error("test form dimension must be >= 1");
    QForm q{R, n, std::vector<Fe>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            q.u[static_cast<std::size_t>(i) * n + j] = a;
    Fe pd = polar_det(q);
    TestForm t{a, n, std::move(q), pd, R.is_unit(pd), std::nullopt};
    if (R.char_two() && n % 2 == 0 && t.nondegenerate)
        t.arf = invariants_ff(t.form).arf;
    return t;
}

namespace {

EmbeddingReport embed_field(const QForm& q, Fe a) {
    const Ring& K = q.ring;
    int n = q.n;
    std::uint32_t p = K.prime();
    EmbeddingReport rep;

    TestForm gamma_n = make_gamma(K, a, n);
    bool iso = gamma_n.nondegenerate && is_isometric_ff(q, gamma_n.form);
    if (K.char_two()) {
        if (iso) {
            rep.k = n;
            return rep;
        }
        if (n % 4 == 2) {
            // gamma_{a,n-1} is dominated: its radical vector carries the value
            // a(n-1)n/2 = a, which the rank-2 complement of an embedded
            // gamma_{a,n-2} always represents.  Witness: q = gamma_{a,n-2} + [a,b].
            rep.k = n - 1;
            rep.mode = EmbedMode::dominated;
            for (std::uint64_t b = 0; b < K.size(); ++b) {
                QForm cand = binary_block(K, a, static_cast<Fe>(b));
                if (n > 2) cand = direct_sum(make_gamma(K, a, n - 2).form, cand);
                if (is_isometric_ff(q, cand)) {
                    rep.witness_b = static_cast<Fe>(b);
                    break;
                }
            }
            if (!rep.witness_b)
                throw math_error("no dominated decomposition found");  // unreachable
            return rep;
        }
        // n = 0 mod 4: the radical vector is singular, so a dominated
        // gamma_{a,n-1} would force q = gamma_{a,n-2} + H = gamma_{a,n}.
        rep.k = n - 2;
        return rep;
    }

    if (iso) {
        rep.k = n;
        return rep;
    }
    // gamma_{a,n-1} is regular and a subform exactly when char does not
    // divide n; otherwise its degeneracy would force q = gamma_{a,n}.
    rep.k = (n % p == 0) ? n - 2 : n - 1;
    return rep;
}

}  // namespace

EmbeddingReport max_embedded_dimension(const QForm& q, Fe a) {
    const Ring& R = q.ring;
    if (!R.is_unit(a)) throw math_error("embedding scalar must be a unit");
    if (!is_nondegenerate(q))
        throw math_error("embedding needs a non-degenerate form");
    if (R.is_field()) return embed_field(q, a);
    return embed_field(reduce_residue_form(q), R.residue(a));
}

}  // namespace qrg

#include "qrg/clique_core.hpp"

namespace qrg {

namespace {

BigInt factorial(int m) {
    BigInt r = 1;
    for (int i = 2; i <= m; ++i) r *= i;
    return r;
}

BigInt exact_div(const BigInt& num, const BigInt& den) {
    if (num % den != 0)
        throw math_error("count formula division is not exact; this signals "
                         "a classification bug");
    return num / den;
}

// clique number through the embedded dimension and the extra-vector flag.
// Over a field this realizes the closed-form case table
//   odd characteristic:  A, B -> n; C, D -> n+1; E -> n+2
//   characteristic 2:    A, B -> n; C -> n+1;    D -> n+2
// and over Z/p^k it stays correct where the table (whose divisibility
// conditions read the residue characteristic) does not.
int structural_omega(const CliqueCase& c) {
    return c.k + 1 + (c.extra_vector ? 1 : 0);
}

// 2f-2 when the 2-dimensional orthogonal complement of the embedded
// gamma_{a,n-2} is hyperbolic, 2f+2 when it is anisotropic (the two
// isometry classes of regular binary forms)
BigInt alpha_factor(const QForm& q, Fe a) {
    const Ring& K = q.ring;
    QForm gsub = make_gamma(K, a, q.n - 2).form;
    QForm plane = K.char_two()
                      ? binary_block(K, 0, 0)
                      : make_form_diag(K, {K.one(), K.neg(K.one())});
    bool hyperbolic_complement = is_isometric_ff(q, direct_sum(gsub, plane));
    BigInt f(K.size());
    return hyperbolic_complement ? BigInt(2 * f - 2) : BigInt(2 * f + 2);
}

const char* kEdgeWarning =
    "dimension-2 characteristic-2 forms not equivalent to the test form lie "
    "outside the closed-form tables; value computed by exhaustive search";

}  // namespace

const char* case_token(CaseLabel label) {
    switch (label) {
        case CaseLabel::odd_a: return "A";
        case CaseLabel::odd_b: return "B";
        case CaseLabel::odd_c: return "C";
        case CaseLabel::odd_d: return "D";
        case CaseLabel::odd_e: return "E";
        case CaseLabel::char2_a: return "2A";
        case CaseLabel::char2_b: return "2B";
        case CaseLabel::char2_c: return "2C";
        case CaseLabel::char2_d: return "2D";
        case CaseLabel::isotropic: return "isotropic";
        case CaseLabel::dimension_edge: return "edge";
    }
    return "?";
}

CliqueCase classify_case(const QForm& q, Fe a) {
    const Ring& R = q.ring;
    if (!is_nondegenerate(q))
        throw math_error("classification needs a non-degenerate form");
    if (a == 0) {
        QForm qk = R.is_field() ? q : reduce_residue_form(q);
        return CliqueCase{CaseLabel::isotropic, witt_index_ff(qk), false,
                          std::nullopt};
    }
    if (!R.is_unit(a))
        throw math_error("scalar must be zero or a unit");

    EmbeddingReport rep = max_embedded_dimension(q, a);
    int n = q.n;
    const Ring K = R.is_field() ? R : R.residue_field();
    if (K.char_two()) {
        if (n == 2 && rep.k < n)
            return CliqueCase{CaseLabel::dimension_edge, rep.k, false, rep};
        CaseLabel label;
        if (rep.k == n)
            label = n % 4 == 2 ? CaseLabel::char2_d : CaseLabel::char2_c;
        else if (n % 4 == 2)
            label = CaseLabel::char2_a;  // k = n-1, dominated embedding
        else
            label = CaseLabel::char2_b;  // k = n-2
        return CliqueCase{label, rep.k, rep.k % 4 == 2, rep};
    }
    std::uint32_t p = K.prime();
    CaseLabel label;
    if (rep.k == n)
        label = (n + 2) % p == 0 ? CaseLabel::odd_e : CaseLabel::odd_d;
    else if (rep.k == n - 1)
        label = (n + 1) % p == 0 ? CaseLabel::odd_c : CaseLabel::odd_b;
    else
        label = CaseLabel::odd_a;
    // the extra vector -(x_1+...+x_k) needs k+2 = 0 in A itself, not in the
    // residue field: over Z/p^e that means p^e | k+2
    std::uint64_t cha = R.is_field() ? p : R.size();
    return CliqueCase{label, rep.k, (rep.k + 2) % cha == 0, rep};
}

CliqueReport clique_number(const QForm& q, Fe a, const OracleLimits& fallback) {
    CliqueCase c = classify_case(q, a);
    const Ring& R = q.ring;
    CliqueReport report{0, c, {}};
    if (c.label == CaseLabel::isotropic) {
        // maximal totally isotropic submodule of H^i + q0: over a field
        // |A|^i; over Z/p^k the q0-block contributes p^floor(k/2) per
        // dimension through the p^ceil(k/2)-scaled vectors
        int i = c.k;
        if (R.is_field()) {
            report.omega = pow(BigInt(R.size()), static_cast<unsigned>(i));
        } else {
            unsigned k = R.degree();
            unsigned e = k * static_cast<unsigned>(i) +
                         (k / 2) * static_cast<unsigned>(q.n - 2 * i);
            report.omega = pow(BigInt(R.prime()), e);
        }
        return report;
    }
    if (c.label == CaseLabel::dimension_edge) {
        RepGraph g = build_graph(q, a, GraphMode::reduced, fallback);
        CliqueStats st = brute_clique_stats(g, fallback, false);
        report.omega = st.omega + 1;
        report.warnings.push_back(kEdgeWarning);
        return report;
    }
    report.omega = structural_omega(c);
    return report;
}

GroupOrders group_orders(const QForm& q) {
    const Ring& R = q.ring;
    if (!R.is_field())
        throw math_error("group orders are computed over finite fields");
    if (!is_nondegenerate(q))
        throw math_error("group orders need a non-degenerate form");
    BigInt f(R.size());
    int n = q.n;
    BigInt o;
    if (n % 2 == 1) {
        int t = (n - 1) / 2;
        o = 2 * pow(f, static_cast<unsigned>(t * t));
        for (int i = 1; i <= t; ++i) o *= pow(f, 2 * i) - 1;
    } else {
        int t = n / 2;
        bool hyp = invariants_ff(q).hyperbolic;
        BigInt half = pow(f, t);
        o = 2 * pow(f, static_cast<unsigned>(t * (t - 1))) *
            (hyp ? BigInt(half - 1) : BigInt(half + 1));
        for (int i = 1; i < t; ++i) o *= pow(f, 2 * i) - 1;
    }
    return GroupOrders{o, pow(f, static_cast<unsigned>(n)) * o};
}

CountReport count_max_cliques(const QForm& q, Fe a,
                              const OracleLimits& fallback) {
    const Ring& R = q.ring;
    if (!R.is_field())
        throw math_error(
            "maximum-clique counts are only established over finite fields");
    CliqueCase c = classify_case(q, a);
    if (c.label == CaseLabel::isotropic)
        throw math_error("maximum-clique counts for a = 0 are not supported");
    GroupOrders g = group_orders(q);
    CountReport report{0, 0, g.o_order, g.iso_order, {}, std::nullopt, c, {}};
    int n = q.n;
    const BigInt& iso = g.iso_order;
    switch (c.label) {
        case CaseLabel::odd_a: {
            BigInt al = alpha_factor(q, a);
            report.alpha = al;
            report.orbit_terms = {exact_div(iso, al * factorial(n))};
            break;
        }
        case CaseLabel::odd_b:
            report.orbit_terms = {exact_div(iso, 2 * factorial(n))};
            break;
        case CaseLabel::odd_c:
            report.orbit_terms = {exact_div(iso, 2 * factorial(n + 1))};
            break;
        case CaseLabel::odd_d:
            report.orbit_terms = {exact_div(iso, factorial(n + 1))};
            break;
        case CaseLabel::odd_e:
            report.orbit_terms = {exact_div(iso, factorial(n + 2))};
            break;
        case CaseLabel::char2_a:
            // one orbit of independent-type cliques; a stabilizer of the
            // n-1 clique vectors extends in exactly two ways across the
            // dominated direction
            report.orbit_terms = {exact_div(iso, 2 * factorial(n))};
            break;
        case CaseLabel::char2_b: {
            BigInt al = alpha_factor(q, a);
            // the binary complement of the embedded gamma_{a,n-2} cannot be
            // hyperbolic here: that would make q equivalent to the test form
            if (al != 2 * BigInt(R.size()) + 2)
                throw math_error("hyperbolic complement in a dependent-type "
                                 "count; this signals an isometry bug");
            report.alpha = al;
            report.orbit_terms = {exact_div(iso, al * factorial(n))};
            break;
        }
        case CaseLabel::char2_c:
            report.orbit_terms = {exact_div(iso, factorial(n + 1))};
            break;
        case CaseLabel::char2_d:
            report.orbit_terms = {exact_div(iso, factorial(n + 2))};
            break;
        case CaseLabel::dimension_edge: {
            RepGraph gr = build_graph(q, a, GraphMode::reduced, fallback);
            CliqueStats st = brute_clique_stats(gr, fallback, true);
            // each maximum clique of the full graph is a translate of
            // {0} + (maximum clique of the reduced graph)
            BigInt total = pow(BigInt(R.size()), static_cast<unsigned>(n));
            report.orbit_terms = {exact_div(total * st.count, st.omega + 1)};
            report.omega = st.omega + 1;
            report.warnings.push_back(kEdgeWarning);
            break;
        }
        case CaseLabel::isotropic:
            break;  // rejected above
    }
    if (c.label != CaseLabel::dimension_edge)
        report.omega = structural_omega(c);
    for (const BigInt& term : report.orbit_terms) report.omega_max += term;
    return report;
}

}  // namespace qrg

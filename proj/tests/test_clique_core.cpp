#include "doctest.h"
#include "qrg/clique_core.hpp"

#include <string>

using namespace qrg;

namespace {

CliqueStats oracle_stats(const QForm& q, Fe a, bool want_count = true) {
    OracleLimits lim;
    RepGraph g = build_graph(q, a, GraphMode::full, lim);
    return brute_clique_stats(g, lim, want_count);
}

// matrices S with q(Sx) = q(x) for all x, counted by full enumeration
BigInt brute_orthogonal_order(const QForm& q) {
    const Ring& R = q.ring;
    int n = q.n;
    std::uint64_t cells = 1;
    for (int i = 0; i < n * n; ++i) cells *= R.size();
    std::uint64_t points = 1;
    for (int i = 0; i < n; ++i) points *= R.size();
    BigInt found = 0;
    std::vector<Fe> S(static_cast<std::size_t>(n) * n);
    for (std::uint64_t m = 0; m < cells; ++m) {
        std::uint64_t rest = m;
        for (auto& s : S) {
            s = static_cast<Fe>(rest % R.size());
            rest /= R.size();
        }
        bool ok = true;
        for (std::uint64_t ix = 0; ix < points && ok; ++ix) {
            Vec x = vec_from_index(R, n, ix);
            Vec y(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    y[static_cast<std::size_t>(i)] =
                        R.add(y[static_cast<std::size_t>(i)],
                              R.mul(S[static_cast<std::size_t>(i) * n + j],
                                    x[static_cast<std::size_t>(j)]));
            ok = evaluate(q, y) == evaluate(q, x);
        }
        if (ok) ++found;
    }
    return found;
}

}  // namespace

TEST_SUITE("clique_core") {

TEST_CASE("classification hits the expected table cases") {
    Ring F3 = Ring::finite_field(3);
    Ring F5 = Ring::finite_field(5);
    Ring F2 = Ring::finite_field(2);
    Ring F4 = Ring::finite_field(2, 2);

    CliqueCase c = classify_case(make_form_diag(F5, {1, 1, 2}), 1);
    CHECK(c.label == CaseLabel::odd_e);
    CHECK(c.k == 3);
    CHECK(c.extra_vector);
    CHECK(std::string(case_token(c.label)) == "E");

    CHECK(classify_case(make_form_diag(F3, {1, 1}), 1).label ==
          CaseLabel::odd_c);
    CHECK(classify_case(make_form_diag(F3, {1, 1, 1}), 1).label ==
          CaseLabel::odd_a);
    CHECK(classify_case(make_form_diag(F3, {1, 1, 1}), 1).extra_vector);
    CHECK(classify_case(make_form_diag(F5, {1}), 1).label ==
          CaseLabel::odd_d);
    CHECK(classify_case(make_form_diag(F5, {1}), 2).label ==
          CaseLabel::odd_b);
    CHECK(classify_case(make_form_diag(F3, {1}), 1).label ==
          CaseLabel::odd_e);

    CHECK(classify_case(binary_block(F4, 0, 0), 1).label ==
          CaseLabel::char2_d);
    CHECK(classify_case(binary_block(F2, 1, 1), 1).label ==
          CaseLabel::char2_d);
    CHECK(classify_case(binary_block(F2, 0, 0), 1).label ==
          CaseLabel::dimension_edge);
    CHECK(classify_case(binary_block(F4, 1, 2), 1).label ==
          CaseLabel::dimension_edge);
    QForm hh = direct_sum(binary_block(F2, 0, 0), binary_block(F2, 0, 0));
    CHECK(classify_case(hh, 1).label == CaseLabel::char2_b);
    CHECK(classify_case(hh, 1).k == 2);
    CHECK(classify_case(hh, 1).extra_vector);
    CHECK(classify_case(make_gamma(F2, 1, 4).form, 1).label ==
          CaseLabel::char2_c);
    QForm minus6 = direct_sum(hh, binary_block(F2, 1, 1));
    CHECK(classify_case(minus6, 1).label == CaseLabel::char2_a);
    CHECK(classify_case(minus6, 1).k == 5);
    CHECK_FALSE(classify_case(minus6, 1).extra_vector);
    CHECK(std::string(case_token(CaseLabel::char2_a)) == "2A");

    CHECK(classify_case(make_form_diag(F5, {1, 3}), 0).label ==
          CaseLabel::isotropic);
    CHECK(classify_case(make_form_diag(Ring::residue_ring(3, 2), {1, 1}), 1)
              .label == CaseLabel::odd_c);
    CHECK_THROWS_AS(
        classify_case(make_form_diag(Ring::residue_ring(3, 2), {1, 1}), 3),
        math_error);
    CHECK_THROWS_AS(classify_case(make_form_diag(F3, {1, 2, 0}), 1),
                    math_error);
}

TEST_CASE("clique numbers match exhaustive search, odd characteristic") {
    for (std::uint32_t p : {3u, 5u}) {
        Ring F = Ring::finite_field(p);
        int max_n = p == 3 ? 3 : 2;
        for (int n = 1; n <= max_n; ++n) {
            std::uint64_t combos = 1;
            for (int i = 0; i < n; ++i) combos *= p - 1;
            for (std::uint64_t c = 0; c < combos; ++c) {
                std::vector<Fe> d;
                std::uint64_t rest = c;
                for (int i = 0; i < n; ++i) {
                    d.push_back(static_cast<Fe>(1 + rest % (p - 1)));
                    rest /= p - 1;
                }
                QForm q = make_form_diag(F, d);
                for (Fe a = 1; a < p; ++a) {
                    CAPTURE(p);
                    CAPTURE(n);
                    CAPTURE(c);
                    CAPTURE(a);
                    CliqueReport r = clique_number(q, a);
                    CHECK(r.omega == oracle_stats(q, a, false).omega);
                    CHECK(r.warnings.empty());
                }
            }
        }
    }
    // a couple of GF(5) n=3 and GF(7) instances to cover dimension/char spread
    Ring F5 = Ring::finite_field(5);
    for (const std::vector<Fe>& d :
         {std::vector<Fe>{1, 1, 2}, {1, 2, 3}, {1, 1, 1}})
        for (Fe a : {Fe{1}, Fe{2}}) {
            QForm q = make_form_diag(F5, d);
            CHECK(clique_number(q, a).omega == oracle_stats(q, a, false).omega);
        }
    Ring F7 = Ring::finite_field(7);
    for (const std::vector<Fe>& d :
         {std::vector<Fe>{1, 1}, {1, 3}, {3, 5}, {1, 6}})
        for (Fe a = 1; a < 7; ++a) {
            QForm q = make_form_diag(F7, d);
            CHECK(clique_number(q, a).omega == oracle_stats(q, a, false).omega);
        }
}

TEST_CASE("clique numbers match exhaustive search, characteristic 2") {
    Ring F2 = Ring::finite_field(2);
    Ring F4 = Ring::finite_field(2, 2);
    for (std::uint64_t ab = 0; ab < 4; ++ab) {
        QForm q = binary_block(F2, static_cast<Fe>(ab >> 1),
                               static_cast<Fe>(ab & 1));
        CliqueReport r = clique_number(q, 1);
        CHECK(r.omega == oracle_stats(q, 1, false).omega);
    }
    for (std::uint64_t ab = 0; ab < 16; ++ab)
        for (Fe a = 1; a < 4; ++a) {
            QForm q = binary_block(F4, static_cast<Fe>(ab >> 2),
                                   static_cast<Fe>(ab & 3));
            CAPTURE(ab);
            CAPTURE(a);
            CHECK(clique_number(q, a).omega == oracle_stats(q, a, false).omega);
        }
    // n = 4 and n = 6 over GF(2), both isometry classes; n = 4 over GF(4)
    QForm h2 = binary_block(F2, 0, 0);
    QForm an2 = binary_block(F2, 1, 1);
    for (const QForm& q : {direct_sum(h2, h2), direct_sum(h2, an2),
                           direct_sum(an2, an2),
                           direct_sum(direct_sum(h2, h2), h2),
                           direct_sum(direct_sum(h2, h2), an2)}) {
        CliqueReport r = clique_number(q, 1);
        CHECK(r.omega == oracle_stats(q, 1, false).omega);
        CHECK(r.warnings.empty());
    }
    QForm h4 = binary_block(F4, 0, 0);
    QForm an4 = binary_block(F4, 1, 2);
    for (const QForm& q : {direct_sum(h4, h4), direct_sum(h4, an4),
                           direct_sum(an4, an4)})
        for (Fe a = 1; a < 4; ++a)
            CHECK(clique_number(q, a).omega == oracle_stats(q, a, false).omega);

    // the dimension-2 corner outside the tables: exhaustive value + warning
    CliqueReport edge = clique_number(binary_block(F2, 0, 0), 1);
    CHECK(edge.decision.label == CaseLabel::dimension_edge);
    CHECK(edge.omega == 2);
    REQUIRE(edge.warnings.size() == 1);
    CHECK(edge.warnings[0].find("exhaustive") != std::string::npos);
}

TEST_CASE("isotropic clique numbers are maximal totally isotropic sizes") {
    Ring F3 = Ring::finite_field(3);
    Ring F5 = Ring::finite_field(5);
    Ring F2 = Ring::finite_field(2);
    Ring F4 = Ring::finite_field(2, 2);
    // anisotropic binary form: Witt index 0, single-vertex cliques only
    CHECK(clique_number(make_form_diag(F3, {1, 1}), 0).omega == 1);

    for (const std::vector<Fe>& d :
         {std::vector<Fe>{1}, {1, 1}, {1, 2}, {1, 1, 1}, {1, 1, 2}})
        CHECK(clique_number(make_form_diag(F3, d), 0).omega ==
              oracle_stats(make_form_diag(F3, d), 0, false).omega);
    for (const std::vector<Fe>& d : {std::vector<Fe>{1, 1}, {1, 2}, {2, 3}})
        CHECK(clique_number(make_form_diag(F5, d), 0).omega ==
              oracle_stats(make_form_diag(F5, d), 0, false).omega);
    QForm h2 = binary_block(F2, 0, 0);
    QForm an2 = binary_block(F2, 1, 1);
    for (const QForm& q : {h2, an2, direct_sum(h2, h2), direct_sum(h2, an2)})
        CHECK(clique_number(q, 0).omega == oracle_stats(q, 0, false).omega);
    for (const QForm& q : {binary_block(F4, 0, 0), binary_block(F4, 1, 2)})
        CHECK(clique_number(q, 0).omega == oracle_stats(q, 0, false).omega);
}

TEST_CASE("isotropic clique numbers over residue rings") {
    Ring Z9 = Ring::residue_ring(3, 2);
    // the residue form is anisotropic, yet 3A x 3A is totally isotropic:
    // the clique number is not |A|^{witt index} over Z/p^k
    CliqueReport r = clique_number(make_form_diag(Z9, {1, 1}), 0);
    CHECK(r.decision.k == 0);
    CHECK(r.omega == 9);
    CHECK(r.omega == oracle_stats(make_form_diag(Z9, {1, 1}), 0, false).omega);

    for (const std::vector<Fe>& d :
         {std::vector<Fe>{1, 2}, {1, 1, 1}, {1, 1, 2}}) {
        QForm q = make_form_diag(Z9, d);
        CAPTURE(d.size());
        CHECK(clique_number(q, 0).omega == oracle_stats(q, 0, false).omega);
    }
    Ring Z25 = Ring::residue_ring(5, 2);
    for (const std::vector<Fe>& d : {std::vector<Fe>{1, 1}, {1, 2}}) {
        QForm q = make_form_diag(Z25, d);
        CHECK(clique_number(q, 0).omega == oracle_stats(q, 0, false).omega);
    }
}

TEST_CASE("clique numbers over residue rings match exhaustive search") {
    Ring Z9 = Ring::residue_ring(3, 2);
    for (const std::vector<Fe>& d :
         {std::vector<Fe>{1}, {2}, {1, 1}, {1, 2}, {2, 5}, {4, 7}})
        for (Fe a : {Fe{1}, Fe{2}, Fe{4}}) {
            QForm q = make_form_diag(Z9, d);
            CAPTURE(d.size());
            CAPTURE(a);
            CHECK(clique_number(q, a).omega == oracle_stats(q, a, false).omega);
        }
    QForm q3 = make_form_diag(Z9, {1, 1, 1});
    CHECK(clique_number(q3, 1).omega == oracle_stats(q3, 1, false).omega);
    CHECK_THROWS_AS(count_max_cliques(make_form_diag(Z9, {1, 1}), 1),
                    math_error);
}

TEST_CASE("group orders match brute-force matrix enumeration") {
    Ring F3 = Ring::finite_field(3);
    Ring F5 = Ring::finite_field(5);
    Ring F2 = Ring::finite_field(2);
    Ring F4 = Ring::finite_field(2, 2);

    CHECK(group_orders(make_form_diag(F5, {1})).o_order == 2);
    CHECK(group_orders(make_form_diag(F3, {1, 2})).o_order == 4);  // 2f-2
    GroupOrders flagship = group_orders(make_form_diag(F5, {1, 1, 2}));
    CHECK(flagship.o_order == 240);
    CHECK(flagship.iso_order == 30000);

    for (const std::vector<Fe>& d : {std::vector<Fe>{1, 1}, {1, 2}, {2, 2}})
        CHECK(group_orders(make_form_diag(F3, d)).o_order ==
              brute_orthogonal_order(make_form_diag(F3, d)));
    for (const std::vector<Fe>& d : {std::vector<Fe>{1, 1}, {1, 2}, {1, 3}})
        CHECK(group_orders(make_form_diag(F5, d)).o_order ==
              brute_orthogonal_order(make_form_diag(F5, d)));
    CHECK(group_orders(make_form_diag(F3, {1, 1, 1})).o_order ==
          brute_orthogonal_order(make_form_diag(F3, {1, 1, 1})));

    CHECK(group_orders(binary_block(F2, 0, 0)).o_order == 2);
    CHECK(group_orders(binary_block(F2, 1, 1)).o_order ==
          brute_orthogonal_order(binary_block(F2, 1, 1)));
    CHECK(group_orders(binary_block(F4, 0, 0)).o_order ==
          brute_orthogonal_order(binary_block(F4, 0, 0)));
    CHECK(group_orders(binary_block(F4, 1, 2)).o_order ==
          brute_orthogonal_order(binary_block(F4, 1, 2)));
    CHECK(group_orders(make_gamma(F2, 1, 4).form).o_order ==
          brute_orthogonal_order(make_gamma(F2, 1, 4).form));

    CHECK_THROWS_AS(group_orders(make_form_diag(F3, {1, 2, 0})), math_error);
}

TEST_CASE("maximum-clique counts match exhaustive search") {
    Ring F3 = Ring::finite_field(3);
    Ring F5 = Ring::finite_field(5);

    // flagship instance: omega 5, 250 maximum cliques
    QForm flagship = make_form_diag(F5, {1, 1, 2});
    CountReport fr = count_max_cliques(flagship, 1);
    CHECK(fr.omega == 5);
    CHECK(fr.omega_max == 250);
    CHECK(fr.o_order == 240);
    CHECK(fr.iso_order == 30000);
    CHECK(fr.decision.label == CaseLabel::odd_e);
    CliqueStats fs = oracle_stats(flagship, 1);
    CHECK(fs.omega == 5);
    CHECK(fs.count == 250);

    CHECK(count_max_cliques(make_form_diag(F5, {1}), 1).omega_max == 5);
    CHECK(count_max_cliques(make_form_diag(F3, {1, 1}), 1).omega_max == 6);

    for (std::uint32_t p : {3u, 5u}) {
        Ring F = Ring::finite_field(p);
        int max_n = p == 3 ? 3 : 2;
        for (int n = 1; n <= max_n; ++n) {
            std::uint64_t combos = 1;
            for (int i = 0; i < n; ++i) combos *= p - 1;
            for (std::uint64_t c = 0; c < combos; ++c) {
                std::vector<Fe> d;
                std::uint64_t rest = c;
                for (int i = 0; i < n; ++i) {
                    d.push_back(static_cast<Fe>(1 + rest % (p - 1)));
                    rest /= p - 1;
                }
                QForm q = make_form_diag(F, d);
                for (Fe a = 1; a < p; ++a) {
                    CAPTURE(p);
                    CAPTURE(n);
                    CAPTURE(c);
                    CAPTURE(a);
                    CountReport r = count_max_cliques(q, a);
                    CliqueStats s = oracle_stats(q, a);
                    CHECK(r.omega == s.omega);
                    CHECK(r.omega_max == s.count);
                    BigInt total = 0;
                    for (const BigInt& t : r.orbit_terms) total += t;
                    CHECK(total == r.omega_max);
                    if (r.alpha) {
                        BigInt f(p);
                        CHECK((*r.alpha == 2 * f - 2 || *r.alpha == 2 * f + 2));
                    }
                }
            }
        }
    }
}

TEST_CASE("maximum-clique counts match exhaustive search, characteristic 2") {
    Ring F2 = Ring::finite_field(2);
    Ring F4 = Ring::finite_field(2, 2);
    QForm h2 = binary_block(F2, 0, 0);
    QForm an2 = binary_block(F2, 1, 1);

    // dimension-2 corner: the 4-vertex graph has exactly 2 maximum cliques
    CountReport edge = count_max_cliques(h2, 1);
    CHECK(edge.omega == 2);
    CHECK(edge.omega_max == 2);
    CHECK_FALSE(edge.warnings.empty());

    for (const QForm& q : {an2, direct_sum(h2, h2), direct_sum(h2, an2),
                           direct_sum(an2, an2),
                           direct_sum(direct_sum(h2, h2), h2),
                           direct_sum(direct_sum(h2, h2), an2)}) {
        CountReport r = count_max_cliques(q, 1);
        CliqueStats s = oracle_stats(q, 1);
        CAPTURE(q.n);
        CHECK(r.omega == s.omega);
        CHECK(r.omega_max == s.count);
    }
    // case B has a single orbit of dependent-type cliques: iso/(alpha n!)
    CountReport b = count_max_cliques(direct_sum(h2, h2), 1);
    CHECK(b.decision.label == CaseLabel::char2_b);
    REQUIRE(b.orbit_terms.size() == 1);
    CHECK(b.orbit_terms[0] == 8);
    CHECK(b.omega == 4);
    CHECK(b.omega_max == 8);
    CHECK(*b.alpha == 6);

    // case A has a single orbit of independent-type cliques: iso/(2 n!)
    CountReport a6 = count_max_cliques(direct_sum(direct_sum(h2, h2), an2), 1);
    CHECK(a6.decision.label == CaseLabel::char2_a);
    CHECK(a6.omega == 6);
    CHECK(a6.omega_max == 2304);
    CHECK_FALSE(a6.alpha.has_value());

    QForm h4 = binary_block(F4, 0, 0);
    QForm an4 = binary_block(F4, 1, 2);
    for (const QForm& q : {h4, direct_sum(h4, h4), direct_sum(h4, an4),
                           direct_sum(an4, an4)})
        for (Fe a = 1; a < 4; ++a) {
            CountReport r = count_max_cliques(q, a);
            CliqueStats s = oracle_stats(q, a);
            CAPTURE(q.n);
            CAPTURE(a);
            CHECK(r.omega == s.omega);
            CHECK(r.omega_max == s.count);
        }

    CountReport b4 = count_max_cliques(direct_sum(h4, an4), 1);
    CHECK(b4.decision.label == CaseLabel::char2_b);
    CHECK(b4.omega_max == 8704);
    CHECK(*b4.alpha == 10);
    CountReport c4 = count_max_cliques(direct_sum(h4, h4), 2);
    CHECK(c4.decision.label == CaseLabel::char2_c);
    CHECK(c4.omega_max == 15360);
}

TEST_CASE("count preconditions") {
    Ring F3 = Ring::finite_field(3);
    CHECK_THROWS_AS(count_max_cliques(make_form_diag(F3, {1, 1}), 0),
                    math_error);
    CHECK_THROWS_AS(clique_number(make_form_diag(F3, {1, 0}), 1), math_error);
}

}  // TEST_SUITE

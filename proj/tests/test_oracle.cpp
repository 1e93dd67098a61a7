#include "doctest.h"
#include "qrg/oracle.hpp"

#include <set>
#include <sstream>

using namespace qrg;

TEST_SUITE("oracle") {

TEST_CASE("full graph of diag(1,1,2) over GF(5) at a=1") {
    Ring F5 = Ring::finite_field(5);
    QForm q = make_form_diag(F5, {1, 1, 2});
    RepGraph g = build_graph(q, 1, GraphMode::full);
    CHECK(g.vertex_count() == 125);
    // degree = #{v != 0 : q(v) = 1}, counted independently here
    std::size_t solutions = 0;
    for (std::uint64_t i = 1; i < 125; ++i)
        if (evaluate(q, vec_from_index(F5, 3, i)) == 1) ++solutions;
    CHECK(solutions == 20);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        CHECK(g.degree(i) == solutions);

    CliqueStats full = brute_clique_stats(g);
    CHECK(full.omega == 5);
    // double count: 240 ordered basis tuples / 4! per clique through a fixed
    // vertex gives 10, and 10 * 125 / 5 = 250 maximum cliques
    CHECK(full.count == 250);
    CHECK(full.witness.size() == 5);

    RepGraph red = build_graph(q, 1, GraphMode::reduced);
    CHECK(red.vertex_count() == 20);
    CliqueStats rstats = brute_clique_stats(red);
    CHECK(rstats.omega == 4);  // omega(full) = omega(reduced) + 1
    // |V| * N_red / omega = count(full)
    CHECK(BigInt(125) * rstats.count == full.count * 5);
}

TEST_CASE("reduced adjacency via the polar form matches difference evaluation") {
    for (const Ring& R : {Ring::finite_field(5), Ring::finite_field(2, 2)}) {
        QForm q = R.char_two() ? binary_block(R, 1, 1)
                               : make_form_diag(R, {1, 2});
        for (Fe a = 1; a < 3; ++a) {
            RepGraph red = build_graph(q, a, GraphMode::reduced);
            for (std::size_t i = 0; i < red.vertex_count(); ++i)
                for (std::size_t j = i + 1; j < red.vertex_count(); ++j) {
                    Vec d = vec_sub(R, red.vertex(i), red.vertex(j));
                    CHECK(red.adjacent(i, j) == (evaluate(q, d) == a));
                }
        }
    }
}

TEST_CASE("hyperbolic plane over GF(2): reduced is a point, full is a matching") {
    Ring F2 = Ring::finite_field(2);
    QForm h = binary_block(F2, 0, 0);  // q = xy
    RepGraph red = build_graph(h, 1, GraphMode::reduced);
    CHECK(red.vertex_count() == 1);
    CHECK(red.vertex_ids[0] == 3);  // (1,1)
    CliqueStats rs = brute_clique_stats(red);
    CHECK(rs.omega == 1);
    CHECK(rs.count == 1);

    RepGraph full = build_graph(h, 1, GraphMode::full);
    CliqueStats fs = brute_clique_stats(full);
    CHECK(fs.omega == 2);
    CHECK(fs.count == 2);
    std::ostringstream os;
    export_edge_list(full, os);
    CHECK(os.str() == "0 3\n1 2\n");
}

TEST_CASE("empty and edgeless graphs") {
    Ring F5 = Ring::finite_field(5);
    QForm q = make_form_diag(F5, {1});
    RepGraph red = build_graph(q, 2, GraphMode::reduced);  // x^2 = 2 unsolvable
    CHECK(red.vertex_count() == 0);
    CliqueStats rs = brute_clique_stats(red);
    CHECK(rs.omega == 0);
    CHECK(rs.count == 1);
    RepGraph full = build_graph(q, 2, GraphMode::full);
    CliqueStats fs = brute_clique_stats(full);
    CHECK(fs.omega == 1);
    CHECK(fs.count == 5);
}

TEST_CASE("unit scaling of (q, a) preserves the graph exactly") {
    Ring F5 = Ring::finite_field(5);
    QForm q = make_form_diag(F5, {1, 2});
    QForm q3 = make_form_diag(F5, {3, 1});  // 3*q with 3*2=6=1
    RepGraph g1 = build_graph(q, 2, GraphMode::full);
    RepGraph g2 = build_graph(q3, F5.mul(3, 2), GraphMode::full);
    CHECK(g1.adj == g2.adj);
}

TEST_CASE("square scaling of the value preserves clique statistics") {
    Ring F5 = Ring::finite_field(5);
    QForm q = make_form_diag(F5, {1, 1, 2});
    CliqueStats s1 = brute_clique_stats(build_graph(q, 1, GraphMode::full));
    CliqueStats s4 = brute_clique_stats(build_graph(q, 4, GraphMode::full));
    CHECK(s1.omega == s4.omega);
    CHECK(s1.count == s4.count);
}

TEST_CASE("adjacency is translation invariant") {
    Ring F3 = Ring::finite_field(3);
    QForm q = make_form_diag(F3, {1, 1, 1});
    RepGraph g = build_graph(q, 1, GraphMode::full);
    Vec t = {1, 2, 0};
    for (std::uint64_t i = 0; i < 27; i += 5)
        for (std::uint64_t j = 0; j < 27; j += 3) {
            if (i == j) continue;
            std::uint64_t ti = vec_index(F3, vec_add(F3, g.vertex(i), t));
            std::uint64_t tj = vec_index(F3, vec_add(F3, g.vertex(j), t));
            CHECK(g.adjacent(i, j) == g.adjacent(ti, tj));
        }
}

TEST_CASE("clique counting is identical across worker counts") {
    Ring F5 = Ring::finite_field(5);
    QForm q = make_form_diag(F5, {1, 1, 2});
    OracleLimits l1, l2, l8;
    l2.workers = 2;
    l8.workers = 8;
    RepGraph g = build_graph(q, 1, GraphMode::full);
    CliqueStats s1 = brute_clique_stats(g, l1);
    CliqueStats s2 = brute_clique_stats(g, l2);
    CliqueStats s8 = brute_clique_stats(g, l8);
    CHECK(s1.count == s2.count);
    CHECK(s1.count == s8.count);
    CHECK(s1.omega == s2.omega);
    CHECK(s1.witness == s2.witness);
}

TEST_CASE("caps and budgets are enforced, not silently truncated") {
    Ring F5 = Ring::finite_field(5);
    OracleLimits tight;
    tight.vertex_cap = 100;
    CHECK_THROWS_AS(build_graph(make_form_diag(F5, {1, 1, 2}), 1,
                                GraphMode::full, tight),
                    limit_error);
    OracleLimits small_adj;
    small_adj.adjacency_cap = 10;
    RepGraph g = build_graph(make_form_diag(F5, {1, 1, 2}), 1, GraphMode::full,
                             small_adj);
    CHECK_FALSE(g.has_adjacency());
    CHECK_THROWS_AS(brute_clique_stats(g), limit_error);
    OracleLimits no_budget;
    no_budget.node_budget = 3;
    RepGraph g2 = build_graph(make_form_diag(F5, {1, 1, 2}), 1, GraphMode::full);
    CHECK_THROWS_AS(brute_clique_stats(g2, no_budget), limit_error);
}

TEST_CASE("streamed edge list equals materialized edge list") {
    Ring F3 = Ring::finite_field(3);
    QForm q = make_form_diag(F3, {1, 1});
    OracleLimits stream;
    stream.adjacency_cap = 2;  // force streaming
    RepGraph gs = build_graph(q, 1, GraphMode::full, stream);
    RepGraph gm = build_graph(q, 1, GraphMode::full);
    std::ostringstream a, b;
    export_edge_list(gs, a);
    export_edge_list(gm, b);
    auto lines = [](const std::string& s) {
        std::set<std::string> out;
        std::istringstream is(s);
        std::string l;
        while (std::getline(is, l)) out.insert(l);
        return out;
    };
    CHECK(lines(a.str()) == lines(b.str()));
    CHECK_FALSE(lines(b.str()).empty());
}

TEST_CASE("dot export carries coordinate labels") {
    Ring F2 = Ring::finite_field(2);
    RepGraph g = build_graph(binary_block(F2, 0, 0), 1, GraphMode::reduced);
    std::ostringstream os;
    export_dot(g, os);
    CHECK(os.str().find("label=\"(1,1)\"") != std::string::npos);
    CHECK(os.str().find("graph repgraph") != std::string::npos);
}

}  // TEST_SUITE

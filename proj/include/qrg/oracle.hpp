#ifndef QRG_ORACLE_HPP
#define QRG_ORACLE_HPP

#include "qrg/qform.hpp"

#include <iosfwd>

namespace qrg {

enum class GraphMode { full, reduced };

struct OracleLimits {
    // full-mode vertex cap (|ring|^n)
    std::uint64_t vertex_cap = 1000000;
    // adjacency bitsets are materialized only up to this many vertices;
    // beyond it the graph supports streaming export but not clique search
    std::uint64_t adjacency_cap = 1u << 14;
    // branch-and-bound node budget for clique search
    std::uint64_t node_budget = 500000000;
    int workers = 1;
};

// Representation graph of (q, a): full mode has vertex set ring^n with
// x ~ y iff q(x - y) = a; reduced mode restricts to {x : q(x) = a} where
// adjacency is equivalently b(x, y) = a. Vertices are listed in canonical
// scan order; vertex ids are the canonical ring^n indices.
struct RepGraph {
    QForm q;
    Fe a = 0;
    GraphMode mode = GraphMode::full;
    std::vector<std::uint64_t> vertex_ids;
    std::size_t words = 0;            // bitset words per adjacency row
    std::vector<std::uint64_t> adj;   // nv * words, empty if not materialized
    // full mode: membership bitset of the difference set {d != 0 : q(d) = a}
    std::vector<std::uint64_t> diff_set;

    std::size_t vertex_count() const { return vertex_ids.size(); }
    bool has_adjacency() const { return !adj.empty(); }
    bool adjacent(std::size_t i, std::size_t j) const {
        return (adj[i * words + j / 64] >> (j % 64)) & 1;
    }
    std::size_t degree(std::size_t i) const;
    Vec vertex(std::size_t i) const;
};

RepGraph build_graph(const QForm& q, Fe a, GraphMode mode,
                     const OracleLimits& limits = {});

struct CliqueStats {
    int omega = 0;          // 0 for the empty graph
    BigInt count = 0;       // number of maximum cliques (1 for the empty graph)
    std::vector<std::uint64_t> witness;  // vertex ids of one maximum clique
};

// Exhaustive maximum-clique search (branch and bound with greedy coloring)
// plus exact counting of maximum cliques. Deterministic, including under
// parallel counting (per-root subtotals are combined in root order).
CliqueStats brute_clique_stats(const RepGraph& g, const OracleLimits& limits = {},
                               bool want_count = true);

// "u v" per edge, ascending vertex ids; works in streaming mode too.
void export_edge_list(const RepGraph& g, std::ostream& os);
// Graphviz with coordinate labels.
void export_dot(const RepGraph& g, std::ostream& os);

}  // namespace qrg

#endif

#include "qrg/oracle.hpp"

#include <atomic>
#include <ostream>
#include <thread>

namespace qrg {

namespace {

struct Bitset {
    std::size_t words = 0;
    std::vector<std::uint64_t> w;

    explicit Bitset(std::size_t nbits = 0)
        : words((nbits + 63) / 64), w(words, 0) {}
    void set(std::size_t i) { w[i / 64] |= 1ull << (i % 64); }
    void clear(std::size_t i) { w[i / 64] &= ~(1ull << (i % 64)); }
    bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    bool empty() const {
        for (std::uint64_t x : w)
            if (x) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }
    // intersection with a row of packed adjacency
    void intersect_row(const std::uint64_t* row) {
        for (std::size_t i = 0; i < words; ++i) w[i] &= row[i];
    }
    void intersect(const Bitset& o) {
        for (std::size_t i = 0; i < words; ++i) w[i] &= o.w[i];
    }
    int first_set(std::size_t from = 0) const {
        for (std::size_t i = from / 64; i < words; ++i) {
            std::uint64_t x = w[i];
            if (i == from / 64) x &= ~0ull << (from % 64);
            if (x) return static_cast<int>(i * 64 + static_cast<std::size_t>(
                                                        __builtin_ctzll(x)));
        }
        return -1;
    }
};

std::uint64_t space_size(const Ring& R, int n, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / R.size() + 1) throw limit_error("vertex cap exceeded");
        total *= R.size();
    }
    if (total > cap) throw limit_error("vertex cap exceeded");
    return total;
}

}  // namespace

std::size_t RepGraph::degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words; ++w)
        d += static_cast<std::size_t>(__builtin_popcountll(adj[i * words + w]));
    return d;
}

Vec RepGraph::vertex(std::size_t i) const {
    return vec_from_index(q.ring, q.n, vertex_ids[i]);
}

RepGraph build_graph(const QForm& q, Fe a, GraphMode mode,
                     const OracleLimits& limits) {
    const Ring& R = q.ring;
    std::uint64_t total = space_size(R, q.n, limits.vertex_cap);
    RepGraph g{q, a, mode, {}, 0, {}, {}};

    if (mode == GraphMode::reduced) {
        for (std::uint64_t idx = 0; idx < total; ++idx)
            if (evaluate(q, vec_from_index(R, q.n, idx)) == a)
                g.vertex_ids.push_back(idx);
        std::size_t nv = g.vertex_ids.size();
        if (nv > limits.adjacency_cap)
            throw limit_error("reduced graph exceeds adjacency cap");
        g.words = (nv + 63) / 64;
        g.adj.assign(nv * g.words, 0);
        std::vector<Vec> verts(nv);
        for (std::size_t i = 0; i < nv; ++i)
            verts[i] = vec_from_index(R, q.n, g.vertex_ids[i]);
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i + 1; j < nv; ++j)
                if (polar_value(q, verts[i], verts[j]) == a) {
                    g.adj[i * g.words + j / 64] |= 1ull << (j % 64);
                    g.adj[j * g.words + i / 64] |= 1ull << (i % 64);
                }
        return g;
    }

    // full mode: difference-set driven
    g.vertex_ids.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) g.vertex_ids[i] = i;
    g.diff_set.assign((total + 63) / 64, 0);
    std::vector<Vec> diffs;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        Vec d = vec_from_index(R, q.n, idx);
        if (evaluate(q, d) == a) {
            g.diff_set[idx / 64] |= 1ull << (idx % 64);
            diffs.push_back(std::move(d));
        }
    }
    if (total <= limits.adjacency_cap) {
        std::size_t nv = static_cast<std::size_t>(total);
        g.words = (nv + 63) / 64;
        g.adj.assign(nv * g.words, 0);
        for (std::size_t i = 0; i < nv; ++i) {
            Vec vi = vec_from_index(R, q.n, i);
            for (const Vec& d : diffs) {
                std::uint64_t j = vec_index(R, vec_add(R, vi, d));
                g.adj[i * g.words + j / 64] |= 1ull << (j % 64);
            }
        }
    }
    return g;
}

namespace {

struct Searcher {
    const RepGraph& g;
    std::size_t nv, words;
    std::atomic<std::uint64_t>& nodes;
    std::uint64_t budget;

    void tick() const {
        if (nodes.fetch_add(1, std::memory_order_relaxed) >= budget)
            throw limit_error("clique search node budget exceeded");
    }

    // Tomita-style max clique: candidates ordered by greedy coloring,
    // processed in reverse with the chromatic bound.
    void max_clique(std::vector<int>& stack, Bitset P, int& best,
                    std::vector<std::uint64_t>& witness) const {
        tick();
        std::vector<int> order;
        std::vector<int> color;
        std::vector<Bitset> classes;
        for (int v = P.first_set(); v >= 0;
             v = P.first_set(static_cast<std::size_t>(v) + 1)) {
            // first color class containing no neighbour of v
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool conflict = false;
                const std::uint64_t* row = &g.adj[static_cast<std::size_t>(v) * words];
                for (std::size_t w = 0; w < words; ++w)
                    if (classes[c].w[w] & row[w]) {
                        conflict = true;
                        break;
                    }
                if (!conflict) break;
            }
            if (c == classes.size()) classes.emplace_back(nv);
            classes[c].set(static_cast<std::size_t>(v));
            order.push_back(v);
            color.push_back(static_cast<int>(c) + 1);
        }
        if (order.empty()) {
            if (static_cast<int>(stack.size()) > best) {
                best = static_cast<int>(stack.size());
                witness.clear();
                for (int u : stack) witness.push_back(g.vertex_ids[static_cast<std::size_t>(u)]);
            }
            return;
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            int v = order[i];
            if (static_cast<int>(stack.size()) + color[i] <= best) return;
            Bitset P2 = P;
            P2.intersect_row(&g.adj[static_cast<std::size_t>(v) * words]);
            stack.push_back(v);
            max_clique(stack, std::move(P2), best, witness);
            stack.pop_back();
            P.clear(static_cast<std::size_t>(v));
        }
    }

    // counts cliques of size exactly `target` that extend the current stack,
    // enumerating candidates in ascending order (each clique visited once)
    void count_exact(int depth, int target, const Bitset& P, BigInt& out) const {
        tick();
        if (depth == target) {
            out += 1;
            return;
        }
        int need = target - depth;
        if (static_cast<int>(P.count()) < need) return;
        Bitset rest = P;
        for (int v = rest.first_set(); v >= 0;
             v = rest.first_set(static_cast<std::size_t>(v) + 1)) {
            if (static_cast<int>(rest.count()) < need) return;
            Bitset P2 = rest;
            P2.clear(static_cast<std::size_t>(v));
            P2.intersect_row(&g.adj[static_cast<std::size_t>(v) * words]);
            count_exact(depth + 1, target, P2, out);
            rest.clear(static_cast<std::size_t>(v));
        }
    }
};

}  // namespace

CliqueStats brute_clique_stats(const RepGraph& g, const OracleLimits& limits,
                               bool want_count) {
    if (!g.has_adjacency() && g.vertex_count() > 0)
        throw limit_error("graph too large for clique search (adjacency cap)");
    CliqueStats stats;
    std::size_t nv = g.vertex_count();
    if (nv == 0) {
        stats.omega = 0;
        stats.count = 1;  // the empty clique
        return stats;
    }
    std::atomic<std::uint64_t> nodes{0};
    Searcher s{g, nv, g.words, nodes, limits.node_budget};

    Bitset all(nv);
    for (std::size_t i = 0; i < nv; ++i) all.set(i);
    int best = 0;
    std::vector<int> stack;
    s.max_clique(stack, all, best, stats.witness);
    stats.omega = best;
    if (!want_count) {
        stats.count = -1;
        return stats;
    }

    int workers = std::max(1, limits.workers);
    std::vector<BigInt> per_root(nv, 0);
    auto run_roots = [&](int offset) {
        for (std::size_t v = static_cast<std::size_t>(offset); v < nv;
             v += static_cast<std::size_t>(workers)) {
            Bitset P(nv);
            const std::uint64_t* row = &g.adj[v * g.words];
            for (std::size_t w = 0; w < g.words; ++w) P.w[w] = row[w];
            // only candidates after v: roots enumerate ascending
            for (std::size_t u = 0; u <= v; ++u) P.clear(u);
            s.count_exact(1, best, P, per_root[v]);
        }
    };
    if (workers == 1) {
        run_roots(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                try {
                    run_roots(t);
                } catch (...) {
                    errs[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    for (std::size_t v = 0; v < nv; ++v) stats.count += per_root[v];
    return stats;
}

void export_edge_list(const RepGraph& g, std::ostream& os) {
    const Ring& R = g.q.ring;
    std::size_t nv = g.vertex_count();
    if (g.has_adjacency()) {
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i + 1; j < nv; ++j)
                if (g.adjacent(i, j))
                    os << g.vertex_ids[i] << " " << g.vertex_ids[j] << "\n";
        return;
    }
    // streaming over the difference set
    std::uint64_t pairs = 0;
    for (std::uint64_t w : g.diff_set) pairs += static_cast<std::uint64_t>(__builtin_popcountll(w));
    if (nv * pairs > 200000000ull)
        throw limit_error("edge export too large");
    std::vector<Vec> diffs;
    for (std::uint64_t idx = 0; idx < nv; ++idx)
        if ((g.diff_set[idx / 64] >> (idx % 64)) & 1)
            diffs.push_back(vec_from_index(R, g.q.n, idx));
    for (std::uint64_t i = 0; i < nv; ++i) {
        Vec vi = vec_from_index(R, g.q.n, i);
        for (const Vec& d : diffs) {
            std::uint64_t j = vec_index(R, vec_add(R, vi, d));
            if (j > i) os << i << " " << j << "\n";
        }
    }
}

void export_dot(const RepGraph& g, std::ostream& os) {
    os << "graph repgraph {\n";
    std::size_t nv = g.vertex_count();
    for (std::size_t i = 0; i < nv; ++i) {
        Vec v = g.vertex(i);
        os << "  v" << g.vertex_ids[i] << " [label=\"(";
        for (std::size_t c = 0; c < v.size(); ++c)
            os << (c ? "," : "") << v[c];
        os << ")\"];\n";
    }
    if (g.has_adjacency()) {
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i + 1; j < nv; ++j)
                if (g.adjacent(i, j))
                    os << "  v" << g.vertex_ids[i] << " -- v" << g.vertex_ids[j]
                       << ";\n";
    } else {
        throw limit_error("dot export needs materialized adjacency");
    }
    os << "}\n";
}

}  // namespace qrg

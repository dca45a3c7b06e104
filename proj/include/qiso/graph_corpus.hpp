#pragma once

#include "qiso/plane_graph.hpp"

#include <cstdint>
#include <numeric>

namespace qiso {

namespace named {

inline AbstractGraph complete(int m) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) e.emplace_back(i, j);
    return AbstractGraph::from_pairs(m, e);
}

inline AbstractGraph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return AbstractGraph::from_pairs(a + b, e);
}

inline AbstractGraph cycle(int m) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
    return AbstractGraph::from_pairs(m, e);
}

inline AbstractGraph path(int m) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
    return AbstractGraph::from_pairs(m, e);
}

inline AbstractGraph cube() {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < 8; ++v)
        for (int b : {1, 2, 4})
            if (!(v & b)) e.emplace_back(v, v | b);
    return AbstractGraph::from_pairs(8, e);
}

/// Q_3 with vertex 7 removed: 7 vertices, 9 edges.
inline AbstractGraph cube_minus_vertex() {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < 7; ++v)
        for (int b : {1, 2, 4})
            if (!(v & b) && (v | b) != 7) e.emplace_back(v, v | b);
    return AbstractGraph::from_pairs(7, e);
}

inline AbstractGraph octahedron() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (j != i + 3) e.emplace_back(i, j);
    return AbstractGraph::from_pairs(6, e);
}

/// Hub 0 joined to every vertex of a rim C_{m}.
inline AbstractGraph wheel(int m) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i) {
        e.emplace_back(0, 1 + i);
        e.emplace_back(1 + i, 1 + (i + 1) % m);
    }
    return AbstractGraph::from_pairs(m + 1, e);
}

inline AbstractGraph grid(int rows, int cols) {
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(r * cols + c, r * cols + c + 1);
            if (r + 1 < rows) e.emplace_back(r * cols + c, (r + 1) * cols + c);
        }
    return AbstractGraph::from_pairs(rows * cols, e);
}

/// Vertex-disjoint union; b's vertices are shifted past a's.
inline AbstractGraph disjoint_union(const AbstractGraph& a, const AbstractGraph& b) {
    AbstractGraph g = a;
    const int shift = a.vertices.empty() ? 0 : *std::max_element(a.vertices.begin(), a.vertices.end()) + 1;
    int next_edge = 0;
    for (const auto& e : a.edges) next_edge = std::max(next_edge, e.id + 1);
    for (int v : b.vertices) g.vertices.push_back(v + shift);
    for (const auto& e : b.edges) g.edges.push_back({next_edge++, e.u + shift, e.v + shift});
    return g;
}

/// Glues b's vertex vb onto a's vertex va.
inline AbstractGraph vertex_sum(const AbstractGraph& a, int va, const AbstractGraph& b, int vb) {
    AbstractGraph g = disjoint_union(a, b);
    const int shift = *std::max_element(a.vertices.begin(), a.vertices.end()) + 1;
    const int gone = vb + shift;
    g.vertices.erase(std::find(g.vertices.begin(), g.vertices.end(), gone));
    for (auto& e : g.edges) {
        if (e.u == gone) e.u = va;
        if (e.v == gone) e.v = va;
    }
    return g;
}

/// C_4 alongside the cube with a vertex removed, as two components
/// (11 vertices, 13 edges).
inline AbstractGraph c4_and_cube_minus_vertex() { return disjoint_union(cycle(4), cube_minus_vertex()); }

/// The connected 1-clique-sum: a C_4 vertex glued to vertex 0 of Q_3 - v
/// (the vertex antipodal to the removed one).
inline AbstractGraph c4_glued_cube_minus_vertex() { return vertex_sum(cycle(4), 0, cube_minus_vertex(), 0); }

}  // namespace named

namespace detail {

// Multiplicity matrix, loops on the diagonal (each loop counted once).
using Mult = std::vector<std::vector<int>>;

inline std::vector<int> refine(const Mult& m, std::vector<int> colour) {
    const std::size_t n = m.size();
    std::size_t classes = 0;
    while (true) {
        std::vector<std::vector<int>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::pair<int, int>> nb;
            for (std::size_t w = 0; w < n; ++w)
                if (w != v && m[v][w]) nb.emplace_back(colour[w], m[v][w]);
            std::sort(nb.begin(), nb.end());
            sig[v] = {colour[v], m[v][v]};
            for (auto [c, k] : nb) {
                sig[v].push_back(c);
                sig[v].push_back(k);
            }
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (sorted.size() == classes) return colour;
        classes = sorted.size();
    }
}

inline void canon_search(const Mult& m, const std::vector<int>& colour, std::vector<int>& best) {
    const std::size_t n = m.size();
    std::vector<std::vector<std::size_t>> cells(n);
    for (std::size_t v = 0; v < n; ++v) cells[static_cast<std::size_t>(colour[v])].push_back(v);
    const auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (target == cells.end()) {
        std::vector<std::size_t> order(n);
        for (std::size_t v = 0; v < n; ++v) order[static_cast<std::size_t>(colour[v])] = v;
        std::vector<int> code;
        code.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) code.push_back(m[order[i]][order[j]]);
        if (best.empty() || code < best) best = std::move(code);
        return;
    }
    std::vector<std::size_t> tried;
    for (std::size_t v : *target) {
        // Twins (swapping them is an automorphism) give identical subtrees.
        bool twin = false;
        for (std::size_t u : tried) {
            bool same = m[u][u] == m[v][v];
            for (std::size_t w = 0; w < n && same; ++w)
                if (w != u && w != v) same = m[u][w] == m[v][w];
            if (same) {
                twin = true;
                break;
            }
        }
        if (twin) continue;
        tried.push_back(v);
        std::vector<int> c = colour;
        for (std::size_t w = 0; w < n; ++w) c[w] = 2 * c[w] + (c[w] == colour[v] && w != v ? 1 : 0);
        canon_search(m, refine(m, c), best);
    }
}

}  // namespace detail

/// Canonical code of a multigraph: equal codes iff isomorphic.
inline std::vector<int> canonical_code(const AbstractGraph& g) {
    std::map<int, std::size_t> idx;
    for (int v : g.vertices) idx.emplace(v, idx.size());
    detail::Mult m(idx.size(), std::vector<int>(idx.size(), 0));
    for (const auto& e : g.edges) {
        const auto a = idx.at(e.u), b = idx.at(e.v);
        ++m[a][b];
        if (a != b) ++m[b][a];
    }
    std::vector<int> best;
    detail::canon_search(m, detail::refine(m, std::vector<int>(m.size(), 0)), best);
    best.insert(best.begin(), static_cast<int>(m.size()));
    return best;
}

struct CorpusOptions {
    bool loops = true;
    bool multi_edges = true;
};

/// Every connected graph with 1..max_edges edges, one per isomorphism class,
/// grouped by edge count. All graphs with at most 8 edges are planar.
inline std::vector<AbstractGraph> connected_graphs(int max_edges, CorpusOptions opt = {}) {
    using Pairs = std::vector<std::pair<int, int>>;
    std::vector<std::pair<int, Pairs>> level{{1, {}}};  // K_1
    std::vector<AbstractGraph> out;
    for (int e = 1; e <= max_edges; ++e) {
        std::set<std::vector<int>> seen;
        std::vector<std::pair<int, Pairs>> next;
        auto offer = [&](int n, Pairs p) {
            if (!opt.multi_edges) {
                auto key = ordered(p.back().first, p.back().second);
                for (std::size_t i = 0; i + 1 < p.size(); ++i)
                    if (ordered(p[i].first, p[i].second) == key) return;
            }
            auto g = AbstractGraph::from_pairs(n, p);
            if (seen.insert(canonical_code(g)).second) next.emplace_back(n, std::move(p));
        };
        for (const auto& [n, pairs] : level) {
            for (int a = 0; a < n; ++a) {
                for (int b = a; b < n; ++b) {
                    if (a == b && !opt.loops) continue;
                    Pairs p = pairs;
                    p.emplace_back(a, b);
                    offer(n, std::move(p));
                }
                Pairs p = pairs;
                p.emplace_back(a, n);
                offer(n + 1, std::move(p));
            }
        }
        for (const auto& [n, p] : next) out.push_back(AbstractGraph::from_pairs(n, p));
        level = std::move(next);
    }
    return out;
}

}  // namespace qiso

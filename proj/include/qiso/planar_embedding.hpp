#pragma once

#include "qiso/plane_graph.hpp"

#include <deque>
#include <functional>

namespace qiso {

namespace detail {

using Adjacency = std::map<int, std::set<int>>;

// Biconnected blocks (as edge sets of the simple graph) via Hopcroft-Tarjan.
inline std::vector<std::vector<std::pair<int, int>>> blocks(const Adjacency& adj) {
    std::map<int, int> disc, low;
    std::vector<std::pair<int, int>> stack;
    std::vector<std::vector<std::pair<int, int>>> out;
    int time = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent) {
        disc[v] = low[v] = time++;
        for (int w : adj.at(v)) {
            if (w == parent) continue;
            if (!disc.count(w)) {
                stack.emplace_back(v, w);
                dfs(w, v);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= disc[v]) {
                    std::vector<std::pair<int, int>> blk;
                    while (true) {
                        auto e = stack.back();
                        stack.pop_back();
                        blk.push_back(e);
                        if (e == std::pair{v, w}) break;
                    }
                    out.push_back(std::move(blk));
                }
            } else if (disc[w] < disc[v]) {
                stack.emplace_back(v, w);
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (const auto& [v, nb] : adj)
        if (!disc.count(v)) dfs(v, -1);
    return out;
}

// Oriented face cycles (vertex sequences) of a planar embedding of a
// 2-connected simple graph, by Demoucron-Malgrange-Pertuiset insertion.
inline std::vector<std::vector<int>> dmp_faces(const Adjacency& adj) {
    // Initial cycle from a DFS back edge.
    std::map<int, int> parent, depth;
    std::vector<int> cycle;
    {
        const int root = adj.begin()->first;
        std::function<bool(int)> dfs = [&](int v) {
            for (int w : adj.at(v)) {
                if (w == parent[v]) continue;
                if (depth.count(w)) {
                    if (depth[w] < depth[v]) {
                        for (int u = v; u != w; u = parent[u]) cycle.push_back(u);
                        cycle.push_back(w);
                        return true;
                    }
                    continue;
                }
                parent[w] = v;
                depth[w] = depth[v] + 1;
                if (dfs(w)) return true;
            }
            return false;
        };
        parent[root] = -1;
        depth[root] = 0;
        dfs(root);
    }
    std::set<int> in_h(cycle.begin(), cycle.end());
    std::set<std::pair<int, int>> h_edges;
    auto add_edge = [&](int a, int b) { h_edges.insert(ordered(a, b)); };
    for (std::size_t i = 0; i < cycle.size(); ++i) add_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
    std::vector<std::vector<int>> faces{cycle, std::vector<int>(cycle.rbegin(), cycle.rend())};
    std::size_t total_edges = 0;
    for (const auto& [v, nb] : adj) total_edges += nb.size();
    total_edges /= 2;

    struct Fragment {
        std::set<int> contacts;
        std::vector<int> path;  // contact, interior..., contact
    };

    while (h_edges.size() < total_edges) {
        std::vector<Fragment> frags;
        // Chords.
        for (const auto& [v, nb] : adj)
            for (int w : nb)
                if (v < w && in_h.count(v) && in_h.count(w) && !h_edges.count({v, w}))
                    frags.push_back({{v, w}, {v, w}});
        // Components of G - H with their attachments.
        std::set<int> seen;
        for (const auto& [root, nb0] : adj) {
            if (in_h.count(root) || seen.count(root)) continue;
            Fragment f;
            std::vector<int> comp{root};
            seen.insert(root);
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (int w : adj.at(comp[i])) {
                    if (in_h.count(w)) f.contacts.insert(w);
                    else if (seen.insert(w).second) comp.push_back(w);
                }
            // Path between two contacts through the interior.
            const int a = *f.contacts.begin();
            std::map<int, int> prev;
            std::deque<int> q;
            for (int w : adj.at(a))
                if (!in_h.count(w) && std::find(comp.begin(), comp.end(), w) != comp.end() && !prev.count(w)) {
                    prev[w] = a;
                    q.push_back(w);
                }
            int end_inner = -1, b = -1;
            while (!q.empty() && b < 0) {
                const int v = q.front();
                q.pop_front();
                for (int w : adj.at(v)) {
                    if (in_h.count(w)) {
                        if (w != a) {
                            b = w;
                            end_inner = v;
                            break;
                        }
                    } else if (!prev.count(w)) {
                        prev[w] = v;
                        q.push_back(w);
                    }
                }
            }
            if (b < 0) throw std::logic_error("fragment with a single contact in a 2-connected block");
            std::vector<int> rev{b};
            for (int v = end_inner; v != a; v = prev[v]) rev.push_back(v);
            rev.push_back(a);
            f.path.assign(rev.rbegin(), rev.rend());
            frags.push_back(std::move(f));
        }
        // Admissible faces.
        std::size_t pick = frags.size(), pick_face = 0;
        for (std::size_t i = 0; i < frags.size(); ++i) {
            std::vector<std::size_t> ok;
            for (std::size_t fi = 0; fi < faces.size(); ++fi) {
                const std::set<int> fv(faces[fi].begin(), faces[fi].end());
                if (std::all_of(frags[i].contacts.begin(), frags[i].contacts.end(), [&](int c) { return fv.count(c) != 0; }))
                    ok.push_back(fi);
            }
            if (ok.empty()) throw EmbeddingError(EmbeddingError::Kind::NotPlanar, "graph is not planar");
            if (ok.size() == 1 || pick == frags.size()) {
                const bool forced = ok.size() == 1;
                pick = i;
                pick_face = ok.front();
                if (forced) break;
            }
        }
        // Split the face along the path.
        const auto& path = frags[pick].path;
        const auto face = faces[pick_face];
        const int a = path.front(), b = path.back();
        const std::size_t m = face.size();
        const std::size_t ia = static_cast<std::size_t>(std::find(face.begin(), face.end(), a) - face.begin());
        const std::size_t ib = static_cast<std::size_t>(std::find(face.begin(), face.end(), b) - face.begin());
        std::vector<int> f1, f2;
        for (std::size_t k = ia;; k = (k + 1) % m) {
            f1.push_back(face[k]);
            if (k == ib) break;
        }
        for (std::size_t k = path.size() - 2; k >= 1; --k) f1.push_back(path[k]);
        for (std::size_t k = ib;; k = (k + 1) % m) {
            f2.push_back(face[k]);
            if (k == ia) break;
        }
        for (std::size_t k = 1; k + 1 < path.size(); ++k) f2.push_back(path[k]);
        faces[pick_face] = std::move(f1);
        faces.push_back(std::move(f2));
        for (std::size_t k = 0; k + 1 < path.size(); ++k) add_edge(path[k], path[k + 1]);
        for (int v : path) in_h.insert(v);
    }
    return faces;
}

}  // namespace detail

/// Embeds an abstract multigraph in the plane. Loops and parallel edges are
/// placed next to a representative edge. Throws EmbeddingError(NotPlanar).
inline PlaneGraph embed_planar(const AbstractGraph& input) {
    detail::Adjacency adj;
    for (int v : input.vertices) adj[v];
    std::map<std::pair<int, int>, std::vector<int>> bundle;  // simple edge -> edge ids
    std::vector<const GraphEdge*> loops;
    for (const auto& e : input.edges) {
        if (!adj.count(e.u) || !adj.count(e.v)) throw std::invalid_argument("edge " + std::to_string(e.id) + " has unknown endpoint");
        if (e.is_loop()) {
            loops.push_back(&e);
            continue;
        }
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
        bundle[ordered(e.u, e.v)].push_back(e.id);
    }
    // Cyclic successor of neighbours around each vertex, per block.
    std::map<int, std::vector<int>> nbr_order;
    for (const auto& blk : detail::blocks(adj)) {
        std::map<int, std::vector<int>> local;
        if (blk.size() == 1) {
            const auto [a, b] = blk[0];
            local[a] = {b};
            local[b] = {a};
        } else {
            detail::Adjacency sub;
            for (auto [a, b] : blk) {
                sub[a].insert(b);
                sub[b].insert(a);
            }
            // Face ... u, v, w ... means w follows u around v.
            std::map<int, std::map<int, int>> succ;
            for (const auto& f : detail::dmp_faces(sub)) {
                const std::size_t m = f.size();
                for (std::size_t i = 0; i < m; ++i) succ[f[(i + 1) % m]][f[i]] = f[(i + 2) % m];
            }
            for (const auto& [v, s] : succ) {
                std::vector<int> order{s.begin()->first};
                while (order.size() < s.size()) order.push_back(s.at(order.back()));
                local[v] = std::move(order);
            }
        }
        for (auto& [v, order] : local) nbr_order[v].insert(nbr_order[v].end(), order.begin(), order.end());
    }

    std::vector<GraphEdge> edges;
    std::map<int, std::vector<EdgeEnd>> rotation;
    std::map<std::pair<int, int>, int> rep;
    for (const auto& [key, ids] : bundle) {
        for (int id : ids) edges.push_back({id, key.first, key.second});
        rep[key] = ids.front();
    }
    // Bundle members are consecutive, in opposite orders at the two ends so
    // that neighbouring copies bound 2-gon faces.
    for (const auto& [v, order] : nbr_order) {
        auto& rot = rotation[v];
        for (int w : order) {
            const auto key = ordered(v, w);
            const auto& ids = bundle.at(key);
            const int side = v == key.first ? 0 : 1;
            if (side == 0)
                for (int id : ids) rot.push_back({id, 0});
            else
                for (auto it = ids.rbegin(); it != ids.rend(); ++it) rot.push_back({*it, 1});
        }
    }
    for (const auto* l : loops) {
        edges.push_back(*l);
        auto& rot = rotation[l->u];
        rot.push_back({l->id, 0});
        rot.push_back({l->id, 1});
    }
    PlaneGraph g(input.vertices, edges, std::move(rotation));
    validate_embedding(g);
    return g;
}

}  // namespace qiso

#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qiso {

struct GraphEdge {
    int id = 0;
    int u = 0;
    int v = 0;
    bool is_loop() const { return u == v; }
    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

inline std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

/// Graph without an embedding. Loops and parallel edges are allowed.
struct AbstractGraph {
    std::vector<int> vertices;
    std::vector<GraphEdge> edges;

    static AbstractGraph from_pairs(int vertex_count, const std::vector<std::pair<int, int>>& pairs) {
        AbstractGraph g;
        for (int v = 0; v < vertex_count; ++v) g.vertices.push_back(v);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            g.edges.push_back({static_cast<int>(i), pairs[i].first, pairs[i].second});
        return g;
    }
    friend bool operator==(const AbstractGraph&, const AbstractGraph&) = default;
};

/// One end of an edge; side 0 sits at edge.u, side 1 at edge.v. As a dart it
/// means "leave through this end".
struct EdgeEnd {
    int edge = 0;
    int side = 0;
    friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

class EmbeddingError : public std::runtime_error {
public:
    enum class Kind { Rotation, Genus, NotPlanar, Disconnected };
    EmbeddingError(Kind kind, std::string msg, long V = 0, long E = 0, long F = 0)
        : std::runtime_error(std::move(msg)), kind_(kind), V_(V), E_(E), F_(F) {}
    Kind kind() const { return kind_; }
    long V() const { return V_; }
    long E() const { return E_; }
    long F() const { return F_; }

private:
    Kind kind_;
    long V_, E_, F_;
};

/// Multigraph with a rotation system: for every vertex, the cyclic order of
/// the edge-ends incident to it.
class PlaneGraph {
public:
    PlaneGraph() = default;
    PlaneGraph(const std::vector<int>& vertices, const std::vector<GraphEdge>& edges,
               std::map<int, std::vector<EdgeEnd>> rotation)
        : vertices_(vertices.begin(), vertices.end()), rotation_(std::move(rotation)) {
        for (const auto& e : edges) edges_[e.id] = e;
        for (int v : vertices_) rotation_[v];
    }

    const std::set<int>& vertices() const { return vertices_; }
    const std::map<int, GraphEdge>& edges() const { return edges_; }
    const std::map<int, std::vector<EdgeEnd>>& rotations() const { return rotation_; }
    const std::vector<EdgeEnd>& rotation(int v) const { return rotation_.at(v); }
    const GraphEdge& edge(int id) const { return edges_.at(id); }
    bool has_vertex(int v) const { return vertices_.count(v) != 0; }
    bool has_edge(int e) const { return edges_.count(e) != 0; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t degree(int v) const { return rotation_.at(v).size(); }
    bool is_single_vertex() const { return vertices_.size() == 1 && edges_.empty(); }

    int at(EdgeEnd h) const {
        const auto& e = edges_.at(h.edge);
        return h.side == 0 ? e.u : e.v;
    }
    int far(EdgeEnd h) const { return at({h.edge, 1 - h.side}); }

    int fresh_vertex_id() const { return vertices_.empty() ? 0 : *vertices_.rbegin() + 1; }

    AbstractGraph abstract() const {
        AbstractGraph g;
        g.vertices.assign(vertices_.begin(), vertices_.end());
        for (const auto& [id, e] : edges_) g.edges.push_back(e);
        return g;
    }

    // Low-level surgery used by the move implementations; callers keep the
    // rotation system consistent.
    void add_vertex(int v) {
        vertices_.insert(v);
        rotation_[v];
    }
    void erase_vertex(int v) {
        vertices_.erase(v);
        rotation_.erase(v);
    }
    void set_edge(const GraphEdge& e) { edges_[e.id] = e; }
    void erase_edge(int id) { edges_.erase(id); }
    std::vector<EdgeEnd>& rotation_mut(int v) { return rotation_.at(v); }

    friend bool operator==(const PlaneGraph&, const PlaneGraph&) = default;

private:
    std::set<int> vertices_;
    std::map<int, GraphEdge> edges_;
    std::map<int, std::vector<EdgeEnd>> rotation_;
};

/// Every edge-end appears exactly once, at the right vertex.
inline std::optional<std::string> rotation_problem(const PlaneGraph& g) {
    std::set<EdgeEnd> seen;
    for (const auto& [v, rot] : g.rotations()) {
        if (!g.has_vertex(v)) return "rotation given for unknown vertex " + std::to_string(v);
        for (const auto& h : rot) {
            if (!g.has_edge(h.edge) || (h.side != 0 && h.side != 1))
                return "bad edge-end (" + std::to_string(h.edge) + "," + std::to_string(h.side) + ") at vertex " + std::to_string(v);
            if (g.at(h) != v)
                return "edge-end (" + std::to_string(h.edge) + "," + std::to_string(h.side) + ") listed at vertex " +
                       std::to_string(v) + " but belongs to " + std::to_string(g.at(h));
            if (!seen.insert(h).second)
                return "edge-end (" + std::to_string(h.edge) + "," + std::to_string(h.side) + ") repeated";
        }
    }
    for (const auto& [id, e] : g.edges()) {
        if (!g.has_vertex(e.u) || !g.has_vertex(e.v)) return "edge " + std::to_string(id) + " has unknown endpoint";
        for (int s : {0, 1})
            if (!seen.count({id, s})) return "edge-end (" + std::to_string(id) + "," + std::to_string(s) + ") missing";
    }
    return std::nullopt;
}

/// Face boundaries as dart cycles. After arriving at w through end h, the
/// walk leaves through the end following h in rot(w).
inline std::vector<std::vector<EdgeEnd>> trace_faces(const PlaneGraph& g) {
    std::map<EdgeEnd, std::pair<int, std::size_t>> where;
    for (const auto& [v, rot] : g.rotations())
        for (std::size_t i = 0; i < rot.size(); ++i) where[rot[i]] = {v, i};
    std::vector<std::vector<EdgeEnd>> faces;
    std::set<EdgeEnd> used;
    for (const auto& [id, e] : g.edges())
        for (int s : {0, 1}) {
            EdgeEnd start{id, s};
            if (used.count(start)) continue;
            std::vector<EdgeEnd> face;
            EdgeEnd d = start;
            do {
                used.insert(d);
                face.push_back(d);
                const auto [w, pos] = where.at({d.edge, 1 - d.side});
                const auto& rot = g.rotation(w);
                d = rot[(pos + 1) % rot.size()];
            } while (d != start);
            faces.push_back(std::move(face));
        }
    return faces;
}

/// Connected components as vertex lists, in increasing order of least vertex.
inline std::vector<std::vector<int>> components(const AbstractGraph& g) {
    std::map<int, std::vector<int>> adj;
    for (int v : g.vertices) adj[v];
    for (const auto& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::set<int> seen;
    std::vector<std::vector<int>> out;
    for (const auto& [root, nb] : adj) {
        if (seen.count(root)) continue;
        std::vector<int> comp{root}, stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (seen.insert(w).second) {
                    comp.push_back(w);
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const AbstractGraph& g) { return components(g).size() <= 1; }

/// Checks the rotation system and Euler's formula per component. Returns the
/// total face count (an isolated vertex counts one face).
inline long validate_embedding(const PlaneGraph& g) {
    if (auto p = rotation_problem(g)) throw EmbeddingError(EmbeddingError::Kind::Rotation, *p);
    const auto faces = trace_faces(g);
    std::map<int, int> comp_of;
    const auto comps = components(g.abstract());
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
    std::vector<long> V(comps.size()), E(comps.size()), F(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) V[c] = static_cast<long>(comps[c].size());
    for (const auto& [id, e] : g.edges()) ++E[comp_of[e.u]];
    for (const auto& f : faces) ++F[comp_of[g.at(f.front())]];
    long total = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (E[c] == 0) F[c] = 1;
        if (V[c] - E[c] + F[c] != 2)
            throw EmbeddingError(EmbeddingError::Kind::Genus,
                                 "rotation system is not planar: V=" + std::to_string(V[c]) + " E=" + std::to_string(E[c]) +
                                     " F=" + std::to_string(F[c]) + " (V-E+F must be 2)",
                                 V[c], E[c], F[c]);
        total += F[c];
    }
    return total;
}

inline bool is_plane(const PlaneGraph& g) {
    try {
        validate_embedding(g);
        return true;
    } catch (const EmbeddingError&) {
        return false;
    }
}

}  // namespace qiso

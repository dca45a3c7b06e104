#pragma once

#include "qiso/plane_graph.hpp"

#include <array>

namespace qiso {

enum class MoveKind { loop, pendent, series, parallel, delta_to_wye, wye_to_delta };

inline const char* to_string(MoveKind k) {
    switch (k) {
        case MoveKind::loop: return "loop";
        case MoveKind::pendent: return "pendent";
        case MoveKind::series: return "series";
        case MoveKind::parallel: return "parallel";
        case MoveKind::delta_to_wye: return "delta_to_wye";
        case MoveKind::wye_to_delta: return "wye_to_delta";
    }
    return "?";
}

inline MoveKind move_kind_from_string(const std::string& s) {
    for (auto k : {MoveKind::loop, MoveKind::pendent, MoveKind::series, MoveKind::parallel, MoveKind::delta_to_wye,
                   MoveKind::wye_to_delta})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown move kind '" + s + "'");
}

/// A local move and the ids it touches.
///
///   loop          edges {e}            vertices {v}
///   pendent       edges {e}            vertices {leaf, neighbour}; leaf and e removed
///   series        edges {e1, e2}       vertices {b, a, c}; b and e2 removed, e1 becomes a-c
///   parallel      edges {e1, e2}       vertices {u, v}; e2 removed
///   delta_to_wye  edges {e1, e2, e3}   vertices {x, y, z} with x = e1^e2, y = e2^e3, z = e1^e3;
///                 created vertex c, afterwards e1 = c-y, e2 = c-z, e3 = c-x
///   wye_to_delta  edges {e1, e2, e3}   vertices {c, x, y, z}, ei joins c to x, y, z;
///                 c removed, afterwards e1 = y-z, e2 = x-z, e3 = x-y
///
/// Each edge keeps its id and ends up opposite the vertex it used to avoid
/// (or used to reach), which is the weight placement the scaffold rules need.
struct Move {
    MoveKind kind = MoveKind::loop;
    std::vector<int> vertices;
    std::vector<int> edges;
    int created_vertex = -1;

    bool is_forced() const { return kind != MoveKind::delta_to_wye && kind != MoveKind::wye_to_delta; }
    friend bool operator==(const Move&, const Move&) = default;
};

class IllegalMove : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline int other_end(const GraphEdge& e, int v) { return e.u == v ? e.v : e.u; }

inline bool has_end(const GraphEdge& e, int v) { return e.u == v || e.v == v; }

inline int shared_vertex(const GraphEdge& a, const GraphEdge& b) {
    if (has_end(b, a.u)) return a.u;
    if (has_end(b, a.v)) return a.v;
    return -1;
}

inline void erase_end(std::vector<EdgeEnd>& rot, EdgeEnd h) { rot.erase(std::find(rot.begin(), rot.end(), h)); }

inline EdgeEnd end_at(const GraphEdge& e, int v) { return {e.id, e.u == v ? 0 : 1}; }

// Replaces the ends of edges a and b at v, adjacent in rot(v), with the
// given list, spliced in where the pair was.
inline bool replace_pair(std::vector<EdgeEnd>& rot, int a, int b, const std::vector<EdgeEnd>& with) {
    const std::size_t d = rot.size();
    for (std::size_t i = 0; i < d; ++i) {
        const EdgeEnd p = rot[i], q = rot[(i + 1) % d];
        if ((p.edge == a && q.edge == b) || (p.edge == b && q.edge == a)) {
            std::vector<EdgeEnd> out;
            for (std::size_t k = 2; k < d; ++k) out.push_back(rot[(i + k) % d]);
            out.insert(out.end(), with.begin(), with.end());
            rot = std::move(out);
            return true;
        }
    }
    return false;
}

inline bool is_facial_triangle(const PlaneGraph& g, const std::array<int, 3>& es) {
    std::array<int, 3> want = es;
    std::sort(want.begin(), want.end());
    for (const auto& f : trace_faces(g)) {
        if (f.size() != 3) continue;
        std::array<int, 3> got{f[0].edge, f[1].edge, f[2].edge};
        std::sort(got.begin(), got.end());
        if (got == want) return true;
    }
    return false;
}

}  // namespace detail

/// Empty when legal; otherwise the violated precondition.
inline std::optional<std::string> move_problem(const PlaneGraph& g, const Move& m) {
    auto need = [&](std::size_t ne, std::size_t nv) -> std::optional<std::string> {
        if (m.edges.size() != ne || m.vertices.size() != nv)
            return std::string(to_string(m.kind)) + " move needs " + std::to_string(ne) + " edges and " + std::to_string(nv) +
                   " vertices";
        for (int e : m.edges)
            if (!g.has_edge(e)) return "edge " + std::to_string(e) + " does not exist";
        for (int v : m.vertices)
            if (!g.has_vertex(v)) return "vertex " + std::to_string(v) + " does not exist";
        return std::nullopt;
    };
    switch (m.kind) {
        case MoveKind::loop: {
            if (auto p = need(1, 1)) return p;
            const auto& e = g.edge(m.edges[0]);
            if (!e.is_loop()) return "edge " + std::to_string(e.id) + " is not a loop";
            if (e.u != m.vertices[0]) return "loop is not at the named vertex";
            return std::nullopt;
        }
        case MoveKind::pendent: {
            if (auto p = need(1, 2)) return p;
            const int leaf = m.vertices[0];
            if (g.degree(leaf) != 1) return "vertex " + std::to_string(leaf) + " has degree " + std::to_string(g.degree(leaf)) + ", not 1";
            const auto& e = g.edge(m.edges[0]);
            if (g.rotation(leaf)[0].edge != e.id) return "edge is not the pendant edge";
            if (detail::other_end(e, leaf) != m.vertices[1]) return "neighbour mismatch";
            return std::nullopt;
        }
        case MoveKind::series: {
            if (auto p = need(2, 3)) return p;
            const int b = m.vertices[0];
            if (g.degree(b) != 2) return "vertex " + std::to_string(b) + " has degree " + std::to_string(g.degree(b)) + ", not 2";
            const auto& e1 = g.edge(m.edges[0]);
            const auto& e2 = g.edge(m.edges[1]);
            if (e1.id == e2.id || e1.is_loop() || e2.is_loop()) return "series vertex carries a loop";
            if (!detail::has_end(e1, b) || !detail::has_end(e2, b)) return "edges do not meet at the series vertex";
            if (detail::other_end(e1, b) != m.vertices[1] || detail::other_end(e2, b) != m.vertices[2]) return "neighbour mismatch";
            return std::nullopt;
        }
        case MoveKind::parallel: {
            if (auto p = need(2, 2)) return p;
            const auto& e1 = g.edge(m.edges[0]);
            const auto& e2 = g.edge(m.edges[1]);
            if (e1.id == e2.id || e1.is_loop() || e2.is_loop()) return "parallel move needs two distinct non-loop edges";
            if (ordered(e1.u, e1.v) != ordered(e2.u, e2.v)) return "edges are not parallel";
            if (ordered(e1.u, e1.v) != ordered(m.vertices[0], m.vertices[1])) return "endpoint mismatch";
            return std::nullopt;
        }
        case MoveKind::delta_to_wye: {
            if (auto p = need(3, 3)) return p;
            const auto& e1 = g.edge(m.edges[0]);
            const auto& e2 = g.edge(m.edges[1]);
            const auto& e3 = g.edge(m.edges[2]);
            if (e1.id == e2.id || e2.id == e3.id || e1.id == e3.id) return "triangle edges must be distinct";
            if (e1.is_loop() || e2.is_loop() || e3.is_loop()) return "triangle edge is a loop";
            const int x = detail::shared_vertex(e1, e2), y = detail::shared_vertex(e2, e3), z = detail::shared_vertex(e1, e3);
            if (x < 0 || y < 0 || z < 0 || x == y || y == z || x == z) return "edges do not form a triangle on three vertices";
            if (!detail::has_end(e1, z) || !detail::has_end(e2, y) || !detail::has_end(e3, y)) return "edges do not form a triangle";
            if (m.vertices != std::vector<int>{x, y, z}) return "triangle vertex mismatch";
            if (!detail::is_facial_triangle(g, {e1.id, e2.id, e3.id})) return "triangle does not bound a face";
            if (m.created_vertex >= 0 && g.has_vertex(m.created_vertex)) return "created vertex id already in use";
            return std::nullopt;
        }
        case MoveKind::wye_to_delta: {
            if (auto p = need(3, 4)) return p;
            const int c = m.vertices[0];
            if (g.degree(c) != 3) return "vertex " + std::to_string(c) + " has degree " + std::to_string(g.degree(c)) + ", not 3";
            std::set<int> at_c;
            for (const auto& h : g.rotation(c)) at_c.insert(h.edge);
            if (at_c.size() != 3) return "wye centre carries a loop";
            for (std::size_t i = 0; i < 3; ++i) {
                const auto& e = g.edge(m.edges[i]);
                if (!at_c.count(e.id)) return "edge " + std::to_string(e.id) + " is not a spoke";
                if (detail::other_end(e, c) != m.vertices[i + 1]) return "neighbour mismatch";
            }
            const int x = m.vertices[1], y = m.vertices[2], z = m.vertices[3];
            if (x == y || y == z || x == z) return "wye neighbours are not distinct";
            return std::nullopt;
        }
    }
    return "unknown move";
}

/// Applies a legal move, returning the new plane graph.
inline PlaneGraph apply_move(const PlaneGraph& g, const Move& m) {
    if (auto p = move_problem(g, m)) throw IllegalMove(std::string(to_string(m.kind)) + ": " + *p);
    PlaneGraph h = g;
    switch (m.kind) {
        case MoveKind::loop: {
            auto& rot = h.rotation_mut(m.vertices[0]);
            detail::erase_end(rot, {m.edges[0], 0});
            detail::erase_end(rot, {m.edges[0], 1});
            h.erase_edge(m.edges[0]);
            return h;
        }
        case MoveKind::pendent: {
            const auto& e = g.edge(m.edges[0]);
            detail::erase_end(h.rotation_mut(m.vertices[1]), detail::end_at(e, m.vertices[1]));
            h.erase_vertex(m.vertices[0]);
            h.erase_edge(e.id);
            return h;
        }
        case MoveKind::series: {
            const int b = m.vertices[0], a = m.vertices[1], c = m.vertices[2];
            const auto& e1 = g.edge(m.edges[0]);
            const auto& e2 = g.edge(m.edges[1]);
            // e1 keeps its end at a; its end at b moves to where e2 met c.
            const EdgeEnd e1_at_a = detail::end_at(e1, a);
            const EdgeEnd e2_at_c = e1.id == e2.id ? EdgeEnd{} : detail::end_at(e2, c);
            GraphEdge ne{e1.id, 0, 0};
            if (e1_at_a.side == 0) ne = {e1.id, a, c};
            else ne = {e1.id, c, a};
            const EdgeEnd moved{e1.id, 1 - e1_at_a.side};
            auto& rot = h.rotation_mut(c);
            *std::find(rot.begin(), rot.end(), e2_at_c) = moved;
            h.erase_vertex(b);
            h.erase_edge(e2.id);
            h.set_edge(ne);
            return h;
        }
        case MoveKind::parallel: {
            const auto& e2 = g.edge(m.edges[1]);
            detail::erase_end(h.rotation_mut(e2.u), {e2.id, 0});
            detail::erase_end(h.rotation_mut(e2.v), {e2.id, 1});
            h.erase_edge(e2.id);
            return h;
        }
        case MoveKind::delta_to_wye: {
            const int x = m.vertices[0], y = m.vertices[1], z = m.vertices[2];
            const int e1 = m.edges[0], e2 = m.edges[1], e3 = m.edges[2];
            const int c = m.created_vertex >= 0 ? m.created_vertex : g.fresh_vertex_id();
            PlaneGraph base = g;
            base.add_vertex(c);
            base.set_edge({e3, c, x});
            base.set_edge({e1, c, y});
            base.set_edge({e2, c, z});
            bool ok = detail::replace_pair(base.rotation_mut(x), e1, e2, {{e3, 1}}) &&
                      detail::replace_pair(base.rotation_mut(y), e2, e3, {{e1, 1}}) &&
                      detail::replace_pair(base.rotation_mut(z), e1, e3, {{e2, 1}});
            if (!ok) throw IllegalMove("delta_to_wye: triangle edges are not consecutive in a rotation");
            for (auto order : {std::vector<EdgeEnd>{{e3, 0}, {e1, 0}, {e2, 0}}, std::vector<EdgeEnd>{{e3, 0}, {e2, 0}, {e1, 0}}}) {
                PlaneGraph t = base;
                t.rotation_mut(c) = order;
                if (is_plane(t)) return t;
            }
            throw IllegalMove("delta_to_wye: no planar placement of the new vertex");
        }
        case MoveKind::wye_to_delta: {
            const int c = m.vertices[0], x = m.vertices[1], y = m.vertices[2], z = m.vertices[3];
            const int e1 = m.edges[0], e2 = m.edges[1], e3 = m.edges[2];
            PlaneGraph base = g;
            base.erase_vertex(c);
            base.set_edge({e1, y, z});
            base.set_edge({e2, x, z});
            base.set_edge({e3, x, y});
            const EdgeEnd sx = detail::end_at(g.edge(e1), x), sy = detail::end_at(g.edge(e2), y), sz = detail::end_at(g.edge(e3), z);
            const std::array<std::pair<EdgeEnd, EdgeEnd>, 3> ends{
                std::pair{EdgeEnd{e2, 0}, EdgeEnd{e3, 0}}, std::pair{EdgeEnd{e1, 0}, EdgeEnd{e3, 1}},
                std::pair{EdgeEnd{e1, 1}, EdgeEnd{e2, 1}}};
            const std::array<std::pair<int, EdgeEnd>, 3> spokes{std::pair{x, sx}, std::pair{y, sy}, std::pair{z, sz}};
            for (int mask = 0; mask < 8; ++mask) {
                PlaneGraph t = base;
                for (int i = 0; i < 3; ++i) {
                    auto& rot = t.rotation_mut(spokes[i].first);
                    auto it = std::find(rot.begin(), rot.end(), spokes[i].second);
                    auto [p, q] = ends[i];
                    if (mask >> i & 1) std::swap(p, q);
                    *it = q;
                    rot.insert(it, p);
                }
                if (is_plane(t) && detail::is_facial_triangle(t, {e1, e2, e3})) return t;
            }
            throw IllegalMove("wye_to_delta: no planar placement of the triangle");
        }
    }
    throw IllegalMove("unknown move");
}

namespace detail {

inline std::vector<Move> forced_moves(const PlaneGraph& g) {
    std::vector<Move> out;
    for (const auto& [id, e] : g.edges())
        if (e.is_loop()) out.push_back({MoveKind::loop, {e.u}, {id}});
    for (int v : g.vertices())
        if (g.degree(v) == 1) {
            const auto& e = g.edge(g.rotation(v)[0].edge);
            out.push_back({MoveKind::pendent, {v, other_end(e, v)}, {e.id}});
        }
    std::map<std::pair<int, int>, std::vector<int>> bundles;
    for (const auto& [id, e] : g.edges())
        if (!e.is_loop()) bundles[ordered(e.u, e.v)].push_back(id);
    for (const auto& [ends, ids] : bundles)
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j)
                out.push_back({MoveKind::parallel, {ends.first, ends.second}, {ids[i], ids[j]}});
    for (int b : g.vertices()) {
        if (g.degree(b) != 2) continue;
        const auto& rot = g.rotation(b);
        const auto& e1 = g.edge(std::min(rot[0].edge, rot[1].edge));
        const auto& e2 = g.edge(std::max(rot[0].edge, rot[1].edge));
        if (e1.id == e2.id || e1.is_loop() || e2.is_loop()) continue;
        out.push_back({MoveKind::series, {b, other_end(e1, b), other_end(e2, b)}, {e1.id, e2.id}});
    }
    return out;
}

inline std::vector<Move> delta_wye_moves(const PlaneGraph& g) {
    std::vector<Move> out;
    std::set<std::array<int, 3>> triangles;
    for (const auto& f : trace_faces(g)) {
        if (f.size() != 3) continue;
        std::array<int, 3> es{f[0].edge, f[1].edge, f[2].edge};
        std::sort(es.begin(), es.end());
        if (es[0] == es[1] || es[1] == es[2]) continue;
        const auto &a = g.edge(es[0]), &b = g.edge(es[1]), &c = g.edge(es[2]);
        if (a.is_loop() || b.is_loop() || c.is_loop()) continue;
        const int x = shared_vertex(a, b), y = shared_vertex(b, c), z = shared_vertex(a, c);
        if (x < 0 || y < 0 || z < 0 || x == y || y == z || x == z) continue;
        if (triangles.insert(es).second)
            out.push_back({MoveKind::delta_to_wye, {x, y, z}, {es[0], es[1], es[2]}, g.fresh_vertex_id()});
    }
    for (int c : g.vertices()) {
        if (g.degree(c) != 3) continue;
        std::vector<int> es;
        for (const auto& h : g.rotation(c)) es.push_back(h.edge);
        std::sort(es.begin(), es.end());
        if (es[0] == es[1] || es[1] == es[2]) continue;
        const int x = other_end(g.edge(es[0]), c), y = other_end(g.edge(es[1]), c), z = other_end(g.edge(es[2]), c);
        if (x == y || y == z || x == z) continue;
        out.push_back({MoveKind::wye_to_delta, {c, x, y, z}, es});
    }
    return out;
}

}  // namespace detail

/// All legal moves, forced kinds (loop, pendent, parallel, series) first,
/// each group ordered by lowest ids.
inline std::vector<Move> find_applicable_moves(const PlaneGraph& g) {
    auto out = detail::forced_moves(g);
    auto dw = detail::delta_wye_moves(g);
    out.insert(out.end(), dw.begin(), dw.end());
    return out;
}

}  // namespace qiso

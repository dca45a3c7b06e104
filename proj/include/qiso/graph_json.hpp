#pragma once

#include "qiso/plane_graph.hpp"

#include "json.hpp"

namespace qiso {

using Json = nlohmann::ordered_json;

inline Json graph_to_json(const AbstractGraph& g) {
    Json out;
    out["vertices"] = g.vertices;
    out["edges"] = Json::array();
    for (const auto& e : g.edges) out["edges"].push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}});
    return out;
}

inline Json graph_to_json(const PlaneGraph& g) {
    Json out = graph_to_json(g.abstract());
    Json rot = Json::object();
    for (const auto& [v, ends] : g.rotations()) {
        Json r = Json::array();
        for (const auto& h : ends) r.push_back({h.edge, h.side});
        rot[std::to_string(v)] = std::move(r);
    }
    out["rotation"] = std::move(rot);
    return out;
}

namespace detail {

inline int json_int(const Json& j) {
    if (j.is_string()) return std::stoi(j.get<std::string>());
    return j.get<int>();
}

}  // namespace detail

inline AbstractGraph abstract_graph_from_json(const Json& j) {
    AbstractGraph g;
    for (const auto& v : j.at("vertices")) g.vertices.push_back(detail::json_int(v));
    int next = 0;
    for (const auto& e : j.at("edges")) {
        if (e.is_array()) g.edges.push_back({next, detail::json_int(e.at(0)), detail::json_int(e.at(1))});
        else g.edges.push_back({e.contains("id") ? detail::json_int(e.at("id")) : next, detail::json_int(e.at("u")), detail::json_int(e.at("v"))});
        next = std::max(next, g.edges.back().id) + 1;
    }
    std::set<int> ids;
    for (const auto& e : g.edges)
        if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
    return g;
}

inline bool has_rotation(const Json& j) { return j.contains("rotation"); }

/// Reads an embedded graph; the rotation system is validated.
inline PlaneGraph plane_graph_from_json(const Json& j) {
    const auto a = abstract_graph_from_json(j);
    std::map<int, std::vector<EdgeEnd>> rot;
    for (const auto& [key, ends] : j.at("rotation").items()) {
        auto& r = rot[std::stoi(key)];
        for (const auto& h : ends) r.push_back({detail::json_int(h.at(0)), detail::json_int(h.at(1))});
    }
    PlaneGraph g(a.vertices, a.edges, std::move(rot));
    validate_embedding(g);
    return g;
}

}  // namespace qiso

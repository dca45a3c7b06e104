#pragma once

#include "qiso/fingerprint.hpp"
#include "qiso/graph_json.hpp"
#include "qiso/triple_regularity.hpp"

namespace qiso {

inline Json scheme_to_json(const AssociationScheme& s) {
    Json m = Json::array();
    for (std::size_t x = 0; x < s.size(); ++x) {
        Json row = Json::array();
        for (std::size_t y = 0; y < s.size(); ++y) row.push_back(s.relation(x, y));
        m.push_back(std::move(row));
    }
    return Json{{"size", s.size()}, {"classes", s.classes()}, {"relation_matrix", std::move(m)}};
}

/// Parses and validates; throws SchemeError or std::invalid_argument.
inline AssociationScheme scheme_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("relation_matrix") || !j.contains("classes"))
        throw std::invalid_argument("scheme JSON needs \"classes\" and \"relation_matrix\"");
    const auto matrix = j.at("relation_matrix").get<std::vector<std::vector<int>>>();
    if (j.contains("size") && j.at("size").get<std::size_t>() != matrix.size())
        throw std::invalid_argument("scheme JSON: \"size\" is " + j.at("size").dump() + " but the matrix has " +
                                    std::to_string(matrix.size()) + " rows");
    return validate_scheme(matrix, j.at("classes").get<int>());
}

/// Content hash of the canonical (compact) scheme JSON.
inline std::string scheme_fingerprint(const AssociationScheme& s) { return sha256_hex(scheme_to_json(s).dump()); }

inline Json intersection_to_json(const IntersectionTensor& p) {
    Json out = Json::object();
    for (int i = 0; i < p.rank(); ++i)
        for (int j = 0; j < p.rank(); ++j)
            for (int k = 0; k < p.rank(); ++k)
                if (p(i, j, k) != 0) out[triple_key(i, j, k)] = p(i, j, k);
    return out;
}

inline Json upsilon_to_json(const UpsilonTable& u) {
    Json out = Json::object();
    const int r = u.rank();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                Json row = Json::object();
                for (std::size_t t = 0; t < u.types().size(); ++t)
                    if (const long c = u.count(i, j, k, t); c != 0) {
                        const auto& ty = u.types()[t];
                        row[triple_key(ty.r, ty.s, ty.t)] = to_fraction_string(Rational(c));
                    }
                if (!row.empty()) out[triple_key(i, j, k)] = std::move(row);
            }
    return out;
}

inline Json rho_to_json(const RhoTable& rho) {
    Json out = Json::object();
    for (const auto& [delta, row] : rho.rows()) {
        Json r = Json::object();
        for (const auto& [wye, c] : row) r[triple_key(wye.r, wye.s, wye.t)] = to_fraction_string(c);
        out[triple_key(delta.r, delta.s, delta.t)] = std::move(r);
    }
    return out;
}

inline Json tables_to_json(const TripleRegularityTables& t) {
    return Json{{"classes", t.p.classes()},
                {"p", intersection_to_json(t.p)},
                {"upsilon", upsilon_to_json(t.upsilon)},
                {"rho", rho_to_json(t.rho)}};
}

namespace detail {

inline TriangleType parse_triple_key(const std::string& key) {
    TriangleType t;
    char a, b, c, d;
    std::istringstream in(key);
    if (!(in >> a >> t.r >> b >> t.s >> c >> t.t >> d) || a != '(' || b != ',' || c != ',' || d != ')')
        throw std::invalid_argument("bad index key '" + key + "'");
    return t;
}

}  // namespace detail

inline TripleRegularityTables tables_from_json(const Json& j) {
    const int d = j.at("classes").get<int>();
    IntersectionTensor p(d);
    for (const auto& [key, v] : j.at("p").items()) {
        const auto t = detail::parse_triple_key(key);
        p(t.r, t.s, t.t) = v.get<long>();
    }
    UpsilonTable ups{TriangleTypes(p)};
    for (const auto& [key, row] : j.at("upsilon").items()) {
        const auto w = detail::parse_triple_key(key);
        for (const auto& [tk, v] : row.items()) {
            const auto ty = detail::parse_triple_key(tk);
            const int idx = ups.types().index_of(ty.r, ty.s, ty.t);
            const Rational q = parse_rational(v.get<std::string>());
            if (idx < 0 || !is_integer(q)) throw std::invalid_argument("bad upsilon entry " + key + " " + tk);
            ups.count(w.r, w.s, w.t, static_cast<std::size_t>(idx)) = q.get_num().get_si();
        }
    }
    std::map<TriangleType, RhoTable::Row> rows;
    for (const auto& [key, row] : j.at("rho").items()) {
        RhoTable::Row r;
        for (const auto& [tk, v] : row.items()) r.emplace_back(detail::parse_triple_key(tk), parse_rational(v.get<std::string>()));
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.emplace(detail::parse_triple_key(key), std::move(r));
    }
    return {std::move(p), std::move(ups), RhoTable(d + 1, std::move(rows))};
}

}  // namespace qiso

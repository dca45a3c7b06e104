#pragma once

#include "qiso/planar_embedding.hpp"
#include "qiso/reduction.hpp"
#include "qiso/triple_regularity.hpp"

namespace qiso {

/// Edge id -> weight in the Bose-Mesner algebra.
using EdgeWeights = std::map<int, BMElement>;

/// Linear combination of weighted copies of one diagram. Terms with equal
/// weight assignments are merged; zero coefficients are dropped.
class TermSum {
public:
    using Key = std::map<int, std::vector<Rational>>;

    TermSum() = default;
    explicit TermSum(const EdgeWeights& w) {
        Key k;
        for (const auto& [e, x] : w) k[e] = x.coeffs;
        terms_[std::move(k)] = 1;
    }

    void add(Key k, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(std::move(k), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::size_t size() const { return terms_.size(); }
    const std::map<Key, Rational>& terms() const { return terms_; }

    /// Sum of coefficients; meaningful once every edge is gone.
    Rational scalar() const {
        Rational s = 0;
        for (const auto& [k, c] : terms_) {
            if (!k.empty()) throw std::logic_error("TermSum still carries weighted edges");
            s += c;
        }
        return s;
    }

private:
    std::map<Key, Rational> terms_;
};

class ScaffoldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScaffoldOptions {
    ReductionOptions reduction;
};

namespace detail {

inline std::vector<Rational> basis_coeffs(int rank, int i) {
    std::vector<Rational> v(static_cast<std::size_t>(rank));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

inline TermSum apply_to_terms(const TermSum& in, const Move& m, const AssociationScheme& s,
                              const TripleRegularityTables& t) {
    const int r = s.rank();
    const auto& p = t.p;
    TermSum out;
    for (const auto& [key, c] : in.terms()) {
        TermSum::Key k = key;
        switch (m.kind) {
            case MoveKind::loop: {
                const Rational f = bm_loop_scalar(BMElement{k.at(m.edges[0])});
                k.erase(m.edges[0]);
                out.add(std::move(k), c * f);
                break;
            }
            case MoveKind::pendent: {
                const Rational f = bm_pendant_scalar(BMElement{k.at(m.edges[0])}, p.valencies());
                k.erase(m.edges[0]);
                out.add(std::move(k), c * f);
                break;
            }
            case MoveKind::series: {
                k[m.edges[0]] = bm_product(p, BMElement{k.at(m.edges[0])}, BMElement{k.at(m.edges[1])}).coeffs;
                k.erase(m.edges[1]);
                out.add(std::move(k), c);
                break;
            }
            case MoveKind::parallel: {
                k[m.edges[0]] = bm_schur(BMElement{k.at(m.edges[0])}, BMElement{k.at(m.edges[1])}).coeffs;
                k.erase(m.edges[1]);
                out.add(std::move(k), c);
                break;
            }
            case MoveKind::delta_to_wye: {
                // Delta: e1 = x-z ~ A_i, e2 = x-y ~ A_j, e3 = y-z ~ A_k.
                // Wye:   e3 = c-x ~ A_r, e1 = c-y ~ A_s, e2 = c-z ~ A_t.
                const auto w1 = k.at(m.edges[0]), w2 = k.at(m.edges[1]), w3 = k.at(m.edges[2]);
                for (int i = 0; i < r; ++i) {
                    if (w1[i] == 0) continue;
                    for (int j = 0; j < r; ++j) {
                        if (w2[j] == 0) continue;
                        for (int l = 0; l < r; ++l) {
                            if (w3[l] == 0) continue;
                            const Rational base = c * w1[i] * w2[j] * w3[l];
                            for (const auto& [ty, rho] : t.rho.row(i, j, l)) {
                                k[m.edges[2]] = basis_coeffs(r, ty.r);
                                k[m.edges[0]] = basis_coeffs(r, ty.s);
                                k[m.edges[1]] = basis_coeffs(r, ty.t);
                                out.add(k, base * rho);
                            }
                        }
                    }
                }
                break;
            }
            case MoveKind::wye_to_delta: {
                // Wye:   e1 = c-x ~ A_i, e2 = c-y ~ A_j, e3 = c-z ~ A_k.
                // Delta: e2 = x-z ~ A_r, e3 = x-y ~ A_s, e1 = y-z ~ A_t.
                const auto w1 = k.at(m.edges[0]), w2 = k.at(m.edges[1]), w3 = k.at(m.edges[2]);
                const auto& types = t.upsilon.types();
                for (int i = 0; i < r; ++i) {
                    if (w1[i] == 0) continue;
                    for (int j = 0; j < r; ++j) {
                        if (w2[j] == 0) continue;
                        for (int l = 0; l < r; ++l) {
                            if (w3[l] == 0) continue;
                            const Rational base = c * w1[i] * w2[j] * w3[l];
                            for (std::size_t ti = 0; ti < types.size(); ++ti) {
                                const long u = t.upsilon.count(i, j, l, ti);
                                if (u == 0) continue;
                                const auto ty = types[ti];
                                k[m.edges[1]] = basis_coeffs(r, ty.r);
                                k[m.edges[2]] = basis_coeffs(r, ty.s);
                                k[m.edges[0]] = basis_coeffs(r, ty.t);
                                out.add(k, base * u);
                            }
                        }
                    }
                }
                break;
            }
        }
    }
    return out;
}

inline PlaneGraph component_subgraph(const PlaneGraph& g, const std::vector<int>& vs) {
    std::set<int> in(vs.begin(), vs.end());
    std::vector<GraphEdge> es;
    std::map<int, std::vector<EdgeEnd>> rot;
    for (const auto& [id, e] : g.edges())
        if (in.count(e.u)) es.push_back(e);
    for (int v : vs) rot[v] = g.rotation(v);
    return PlaneGraph(vs, es, std::move(rot));
}

}  // namespace detail

/// Runs a reduction trace over a weighted diagram; the returned sum has no
/// edges left and still needs the factor |X| for the final vertex.
inline TermSum evaluate_trace(const ReductionTrace& trace, const EdgeWeights& w, const AssociationScheme& s,
                              const TripleRegularityTables& t) {
    TermSum sum(w);
    for (const auto& m : trace.moves) sum = detail::apply_to_terms(sum, m, s, t);
    return sum;
}

/// Value of the closed scaffold of a weighted plane diagram, computed only
/// from the parameter tables. Each connected component is reduced to a
/// point separately; each component contributes a factor |X| at the end.
inline Rational eval_closed_scaffold(const AssociationScheme& s, const TripleRegularityTables& t, const PlaneGraph& f,
                                     const EdgeWeights& w, const ScaffoldOptions& opt = {}) {
    if (t.upsilon.rank() != s.rank() || t.rho.rank() != s.rank() || !(t.p == s.intersection()))
        throw ScaffoldError("parameter tables do not belong to this scheme");
    for (const auto& [id, e] : f.edges()) {
        auto it = w.find(id);
        if (it == w.end()) throw ScaffoldError("edge " + std::to_string(id) + " has no weight");
        if (it->second.rank() != s.rank())
            throw DimensionError("weight on edge " + std::to_string(id) + " has " + std::to_string(it->second.rank()) +
                                 " coefficients, scheme rank is " + std::to_string(s.rank()));
    }
    validate_embedding(f);
    Rational value = 1;
    for (const auto& comp : components(f.abstract())) {
        const PlaneGraph part = detail::component_subgraph(f, comp);
        EdgeWeights pw;
        for (const auto& [id, e] : part.edges()) pw[id] = w.at(id);
        const auto trace = reduce_to_point(part, opt.reduction);
        value *= evaluate_trace(trace, pw, s, t).scalar() * static_cast<long>(s.size());
        if (value == 0) break;
    }
    return value;
}

/// Number of homomorphisms from F into the graph whose adjacency is the sum
/// of the selected relations, computed from the scheme's tables alone.
inline Rational hom_count_algebraic(const AssociationScheme& s, const TripleRegularityTables& t,
                                    const std::vector<int>& selector, const AbstractGraph& f,
                                    const ScaffoldOptions& opt = {}) {
    for (int i : selector)
        if (i < 0 || i >= s.rank()) throw std::invalid_argument("selector index " + std::to_string(i) + " out of range");
    const PlaneGraph g = embed_planar(f);
    const BMElement a = BMElement::indicator(s.rank(), selector);
    EdgeWeights w;
    for (const auto& [id, e] : g.edges()) w[id] = a;
    const Rational v = eval_closed_scaffold(s, t, g, w, opt);
    if (!is_integer(v) || v < 0) throw std::logic_error("homomorphism count came out as " + to_fraction_string(v));
    return v;
}

}  // namespace qiso

#pragma once

#include "qiso/graph_corpus.hpp"
#include "qiso/hom_oracle.hpp"
#include "qiso/scaffold.hpp"
#include "qiso/scheme_json.hpp"

#include <mutex>

namespace qiso {

class MatchingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// pi[i] is the relation of scheme B matched to relation i of scheme A.
struct BasisMatching {
    std::vector<int> pi;
    friend auto operator<=>(const BasisMatching&, const BasisMatching&) = default;
};

namespace detail {

inline bool upsilon_equal_under(const UpsilonTable& a, const UpsilonTable& b, const std::vector<int>& pi) {
    const int r = a.rank();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                for (std::size_t t = 0; t < a.types().size(); ++t) {
                    const auto& ty = a.types()[t];
                    const int tb = b.types().index_of(pi[ty.r], pi[ty.s], pi[ty.t]);
                    if (tb < 0) return false;
                    if (a.count(i, j, k, t) != b.count(pi[i], pi[j], pi[k], static_cast<std::size_t>(tb))) return false;
                }
    return true;
}

}  // namespace detail

/// Every relation ordering of B under which A and B have the same
/// intersection numbers and, when both tables are given, the same triple
/// intersection numbers. Returned in lexicographic order.
inline std::vector<BasisMatching> match_relation_orderings(const AssociationScheme& a, const AssociationScheme& b,
                                                           const UpsilonTable* ua = nullptr,
                                                           const UpsilonTable* ub = nullptr) {
    if (a.classes() != b.classes())
        throw MatchingError("schemes have " + std::to_string(a.classes()) + " and " + std::to_string(b.classes()) +
                            " classes");
    std::vector<BasisMatching> out;
    if (a.size() != b.size()) return out;  // valencies sum to |X|, so nothing can match
    const int r = a.rank();
    const auto& pa = a.intersection();
    const auto& pb = b.intersection();
    std::vector<int> pi(static_cast<std::size_t>(r), -1);
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    pi[0] = 0;
    used[0] = true;

    auto consistent = [&](int m) {
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j)
                for (int k = 0; k <= m; ++k)
                    if ((i == m || j == m || k == m) && pa(i, j, k) != pb(pi[i], pi[j], pi[k])) return false;
        return true;
    };
    auto search = [&](auto&& self, int m) -> void {
        if (m == r) {
            if (ua && ub && !detail::upsilon_equal_under(*ua, *ub, pi)) return;
            out.push_back({pi});
            return;
        }
        for (int c = 1; c < r; ++c) {
            if (used[c] || pa.valency(m) != pb.valency(c)) continue;
            pi[m] = c;
            used[c] = true;
            if (consistent(m)) self(self, m + 1);
            used[c] = false;
        }
        pi[m] = -1;
    };
    if (consistent(0)) search(search, 1);
    return out;
}

/// One corpus graph's counts on both sides; oracle values when computed.
struct CrossCheck {
    std::string name;
    AbstractGraph graph;
    Rational hom_a, hom_b;
    std::optional<Integer> oracle_a, oracle_b;
    std::string oracle_note;  // why the oracle was skipped, if it was

    bool ok() const {
        return hom_a == hom_b && (!oracle_a || Rational(*oracle_a) == hom_a) && (!oracle_b || Rational(*oracle_b) == hom_b);
    }
};

struct NamedGraph {
    std::string name;
    AbstractGraph graph;
};

/// Connected graphs with at most 6 edges (K_1 included), then K_{2,3}, K_4,
/// the cube, the wheel W_5 and C_4 beside the cube minus a vertex.
inline std::vector<NamedGraph> default_cross_check_corpus() {
    std::vector<NamedGraph> out;
    out.push_back({"K1", AbstractGraph::from_pairs(1, {})});
    std::map<std::size_t, int> seen;
    for (auto& g : connected_graphs(6, {false, false})) {
        const std::size_t e = g.edges.size();
        out.push_back({"connected-e" + std::to_string(e) + "-" + std::to_string(seen[e]++), std::move(g)});
    }
    out.push_back({"K2,3", named::complete_bipartite(2, 3)});
    out.push_back({"K4", named::complete(4)});
    out.push_back({"cube", named::cube()});
    out.push_back({"W5", named::wheel(5)});
    out.push_back({"C4+cube-minus-vertex", named::c4_and_cube_minus_vertex()});
    return out;
}

struct CertifyOptions {
    bool cross_check = true;
    std::vector<NamedGraph> corpus = default_cross_check_corpus();
    std::size_t oracle_spot_checks = 3;  // leading corpus graphs checked by the oracle
    double cost_cap = 1e9;
    unsigned jobs = 1;
    double krein_tolerance = 1e-6;
    ScaffoldOptions scaffold;
};

struct SchemeSummary {
    std::string fingerprint;
    std::size_t size = 0;
    int classes = 0;
    bool triply_regular = false;
    bool dually_triply_regular = false;
    int Np = 0, Nq = 0;
    std::string failure;
};

struct Certificate {
    static constexpr const char* criterion =
        "equal intersection numbers, equal triple intersection numbers and an identical canonical Delta-to-Wye table "
        "under one relation ordering; equal homomorphism counts from every planar graph follow";

    SchemeSummary a, b;
    std::vector<int> selector_a, selector_b;
    std::size_t matching_count = 0;
    std::optional<BasisMatching> matching;  // lexicographically least
    bool products_preserved = false;
    bool rho_shared = false;
    std::vector<CrossCheck> cross_checks;
    bool pass = false;
    std::string failed_stage;  // empty on PASS
    std::string witness;

    std::string verdict() const { return pass ? "PASS" : "no certificate found"; }
};

namespace detail {

inline SchemeSummary summarize(const AssociationScheme& s, const ExactlyTRReport& rep) {
    return {scheme_fingerprint(s), s.size(), s.classes(), rep.triply_regular, rep.dually_triply_regular,
            rep.Np, rep.Nq, rep.failure};
}

/// bm_product and bm_schur of every basis pair commute with the relabelling.
inline bool structure_preserved(const IntersectionTensor& pa, const IntersectionTensor& pb, const std::vector<int>& pi) {
    const int r = pa.rank();
    auto map = [&](const BMElement& u) {
        BMElement v = BMElement::zero(r);
        for (int i = 0; i < r; ++i) v[pi[i]] = u[i];
        return v;
    };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const auto ei = BMElement::basis(r, i), ej = BMElement::basis(r, j);
            if (!(map(bm_product(pa, ei, ej)) == bm_product(pb, map(ei), map(ej)))) return false;
            if (!(map(bm_schur(ei, ej)) == bm_schur(map(ei), map(ej)))) return false;
        }
    return true;
}

}  // namespace detail

/// Checks the sufficient condition for the graphs with relation sets
/// `selector_a` in A and its image in B to be quantum isomorphic. FAIL
/// means no certificate was found, not that the graphs are distinguishable.
inline Certificate certify_quantum_isomorphism(const AssociationScheme& a, const std::vector<int>& selector_a,
                                               const AssociationScheme& b, const CertifyOptions& opt = {}) {
    for (int i : selector_a)
        if (i < 1 || i > a.classes())
            throw std::invalid_argument("selector index " + std::to_string(i) + " outside 1.." + std::to_string(a.classes()));
    Certificate c;
    c.selector_a = selector_a;
    std::sort(c.selector_a.begin(), c.selector_a.end());
    c.selector_a.erase(std::unique(c.selector_a.begin(), c.selector_a.end()), c.selector_a.end());
    auto fail = [&](std::string stage, std::string witness) {
        c.failed_stage = std::move(stage);
        c.witness = std::move(witness);
        return c;
    };

    const auto ra = exactly_tr_report(a, opt.jobs, opt.krein_tolerance);
    const auto rb = exactly_tr_report(b, opt.jobs, opt.krein_tolerance);
    c.a = detail::summarize(a, ra);
    c.b = detail::summarize(b, rb);
    if (!ra.exactly_triply_regular()) return fail("exactly-triply-regular", "scheme A: " + ra.failure);
    if (!rb.exactly_triply_regular()) return fail("exactly-triply-regular", "scheme B: " + rb.failure);
    const auto& ta = *ra.tables;
    const auto& tb = *rb.tables;

    std::vector<BasisMatching> all;
    try {
        all = match_relation_orderings(a, b, &ta.upsilon, &tb.upsilon);
    } catch (const MatchingError& e) {
        return fail("matching", e.what());
    }
    c.matching_count = all.size();
    if (all.empty())
        return fail("matching", a.size() != b.size() ? "schemes have " + std::to_string(a.size()) + " and " +
                                                           std::to_string(b.size()) + " points"
                                                     : "no relation ordering equates the intersection and triple "
                                                       "intersection numbers");
    c.matching = all.front();
    const auto& pi = c.matching->pi;
    for (int i : c.selector_a) c.selector_b.push_back(pi[i]);
    std::sort(c.selector_b.begin(), c.selector_b.end());

    c.products_preserved = detail::structure_preserved(ta.p, tb.p, pi);
    if (!c.products_preserved) return fail("structure-constants", "relabelled products differ");

    // Rename B's relations back onto A's labels and rebuild its canonical table.
    std::vector<int> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = static_cast<int>(i);
    const RhoTable rho_b = rho_table(upsilon_table(b.relabeled(inv), opt.jobs));
    c.rho_shared = rho_b == ta.rho;
    if (!c.rho_shared) return fail("canonical-rho", "Delta-to-Wye tables differ after relabelling");

    if (opt.cross_check) {
        c.cross_checks.resize(opt.corpus.size());
        const ConcreteGraph ga = ConcreteGraph::from_scheme(a, c.selector_a);
        const ConcreteGraph gb = ConcreteGraph::from_scheme(b, c.selector_b);
        std::mutex err_mu;
        std::string err;
        detail::parallel_chunks(opt.corpus.size(), opt.jobs, [&](std::size_t lo, std::size_t hi, unsigned) {
            for (std::size_t g = lo; g < hi; ++g) {
                auto& x = c.cross_checks[g];
                x.name = opt.corpus[g].name;
                x.graph = opt.corpus[g].graph;
                try {
                    x.hom_a = hom_count_algebraic(a, ta, c.selector_a, x.graph, opt.scaffold);
                    x.hom_b = hom_count_algebraic(b, tb, c.selector_b, x.graph, opt.scaffold);
                    if (g < opt.oracle_spot_checks) {
                        try {
                            x.oracle_a = hom_count_oracle(ga, x.graph, opt.cost_cap);
                            x.oracle_b = hom_count_oracle(gb, x.graph, opt.cost_cap);
                        } catch (const CostCapExceeded& e) {
                            x.oracle_note = e.what();
                        }
                    }
                } catch (const std::exception& e) {
                    std::lock_guard lock(err_mu);
                    if (err.empty()) err = x.name + ": " + e.what();
                }
            }
        });
        if (!err.empty()) return fail("cross-check", err);
        for (const auto& x : c.cross_checks)
            if (!x.ok())
                return fail("cross-check", x.name + ": " + to_fraction_string(x.hom_a) + " vs " + to_fraction_string(x.hom_b) +
                                               (x.oracle_a ? ", oracle " + x.oracle_a->get_str() + " vs " + x.oracle_b->get_str() : ""));
    }
    c.pass = true;
    return c;
}

inline Json certificate_to_json(const Certificate& c) {
    auto side = [](const SchemeSummary& s) {
        return Json{{"fingerprint", s.fingerprint},           {"size", s.size},
                    {"classes", s.classes},                   {"triply_regular", s.triply_regular},
                    {"dually_triply_regular", s.dually_triply_regular}, {"Np", s.Np},
                    {"Nq", s.Nq},                             {"failure", s.failure}};
    };
    Json checks = Json::array();
    for (const auto& x : c.cross_checks) {
        Json j{{"name", x.name}, {"graph", graph_to_json(x.graph)}, {"hom_a", to_fraction_string(x.hom_a)},
               {"hom_b", to_fraction_string(x.hom_b)}};
        if (x.oracle_a) j["oracle_a"] = x.oracle_a->get_str();
        if (x.oracle_b) j["oracle_b"] = x.oracle_b->get_str();
        if (!x.oracle_note.empty()) j["oracle_note"] = x.oracle_note;
        j["ok"] = x.ok();
        checks.push_back(std::move(j));
    }
    Json out{{"verdict", c.verdict()},
             {"criterion", Certificate::criterion},
             {"scheme_a", side(c.a)},
             {"scheme_b", side(c.b)},
             {"selector_a", c.selector_a},
             {"selector_b", c.selector_b},
             {"matching_count", c.matching_count},
             {"matching", c.matching ? Json(c.matching->pi) : Json(nullptr)},
             {"products_preserved", c.products_preserved},
             {"rho_shared", c.rho_shared},
             {"cross_checks", std::move(checks)}};
    if (!c.pass) {
        out["failed_stage"] = c.failed_stage;
        out["witness"] = c.witness;
    }
    return out;
}

inline Certificate certificate_from_json(const Json& j) {
    Certificate c;
    auto side = [](const Json& s) {
        return SchemeSummary{s.at("fingerprint").get<std::string>(), s.at("size").get<std::size_t>(),
                             s.at("classes").get<int>(),             s.at("triply_regular").get<bool>(),
                             s.at("dually_triply_regular").get<bool>(), s.at("Np").get<int>(),
                             s.at("Nq").get<int>(),                  s.at("failure").get<std::string>()};
    };
    c.a = side(j.at("scheme_a"));
    c.b = side(j.at("scheme_b"));
    c.selector_a = j.at("selector_a").get<std::vector<int>>();
    c.selector_b = j.at("selector_b").get<std::vector<int>>();
    c.matching_count = j.at("matching_count").get<std::size_t>();
    if (!j.at("matching").is_null()) c.matching = BasisMatching{j.at("matching").get<std::vector<int>>()};
    c.products_preserved = j.at("products_preserved").get<bool>();
    c.rho_shared = j.at("rho_shared").get<bool>();
    for (const auto& x : j.at("cross_checks")) {
        CrossCheck k;
        k.name = x.at("name").get<std::string>();
        k.graph = abstract_graph_from_json(x.at("graph"));
        k.hom_a = parse_rational(x.at("hom_a").get<std::string>());
        k.hom_b = parse_rational(x.at("hom_b").get<std::string>());
        if (x.contains("oracle_a")) k.oracle_a = Integer(x.at("oracle_a").get<std::string>());
        if (x.contains("oracle_b")) k.oracle_b = Integer(x.at("oracle_b").get<std::string>());
        if (x.contains("oracle_note")) k.oracle_note = x.at("oracle_note").get<std::string>();
        c.cross_checks.push_back(std::move(k));
    }
    c.pass = j.at("verdict").get<std::string>() == "PASS";
    if (!c.pass) {
        c.failed_stage = j.value("failed_stage", "");
        c.witness = j.value("witness", "");
    }
    return c;
}

/// Re-runs every check of a certificate from its inputs; true when the
/// inputs carry the recorded fingerprints and the outcome is identical.
inline bool replay_certificate(const Certificate& c, const AssociationScheme& a, const AssociationScheme& b,
                               CertifyOptions opt = {}) {
    if (scheme_fingerprint(a) != c.a.fingerprint || scheme_fingerprint(b) != c.b.fingerprint) return false;
    opt.corpus.clear();
    for (const auto& x : c.cross_checks) opt.corpus.push_back({x.name, x.graph});
    opt.cross_check = true;
    std::size_t oracled = 0;
    while (oracled < c.cross_checks.size() && (c.cross_checks[oracled].oracle_a || !c.cross_checks[oracled].oracle_note.empty()))
        ++oracled;
    opt.oracle_spot_checks = oracled;
    const Certificate again = certify_quantum_isomorphism(a, c.selector_a, b, opt);
    return certificate_to_json(again).dump() == certificate_to_json(c).dump();
}

}  // namespace qiso

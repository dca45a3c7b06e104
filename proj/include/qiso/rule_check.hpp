#pragma once

#include "qiso/triple_regularity.hpp"

namespace qiso {

/// Outcome of checking each local scaffold rule against dense matrices.
struct RuleCheck {
    std::string rule;
    bool ok = true;
    std::string witness;  // first failing instance
};

namespace detail {

inline std::vector<long> dense_of(const AssociationScheme& s, const BMElement& u) {
    const std::size_t n = s.size();
    std::vector<long> m(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Rational& c = u[s.relation(x, y)];
            if (!is_integer(c)) throw std::invalid_argument("dense_of: integer coefficients only");
            m[x * n + y] = c.get_num().get_si();
        }
    return m;
}

}  // namespace detail

/// Verifies pendant (sr), loop (sr'), series (sr1), parallel (sr1') and
/// both Delta<->Wye resubstitutions entrywise on the scheme's own matrices,
/// against the values the scaffold engine uses.
inline std::vector<RuleCheck> check_scaffold_rules(const AssociationScheme& s, const TripleRegularityTables& t) {
    const std::size_t n = s.size();
    const int r = s.rank();
    const auto& p = t.p;
    std::vector<RuleCheck> out;
    auto fail = [&](RuleCheck& c, std::string w) {
        if (c.ok) c.witness = std::move(w);
        c.ok = false;
    };

    RuleCheck pend{"sr"}, loop{"sr'"}, series{"sr1"}, par{"sr1'"};
    for (int i = 0; i < r; ++i) {
        const BMElement ai = BMElement::basis(r, i);
        const Rational rs = bm_pendant_scalar(ai, p.valencies()), dg = bm_loop_scalar(ai);
        for (std::size_t x = 0; x < n; ++x) {
            long sum = 0;
            for (std::size_t y = 0; y < n; ++y) sum += s.relation(x, y) == i;
            if (Rational(sum) != rs) fail(pend, "row " + std::to_string(x) + " of A_" + std::to_string(i));
            if (Rational(s.relation(x, x) == i ? 1 : 0) != dg) fail(loop, "diagonal " + std::to_string(x) + " of A_" + std::to_string(i));
        }
        for (int j = 0; j < r; ++j) {
            const BMElement aj = BMElement::basis(r, j);
            const auto prod = detail::dense_of(s, bm_product(p, ai, aj));
            const auto schur = detail::dense_of(s, bm_schur(ai, aj));
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    long mn = 0;
                    for (std::size_t z = 0; z < n; ++z) mn += s.relation(x, z) == i && s.relation(z, y) == j;
                    const std::string at = "A_" + std::to_string(i) + ", A_" + std::to_string(j) + " at (" +
                                           std::to_string(x) + "," + std::to_string(y) + ")";
                    if (mn != prod[x * n + y]) fail(series, at);
                    const long hd = s.relation(x, y) == i && s.relation(x, y) == j;
                    if (hd != schur[x * n + y]) fail(par, at);
                }
        }
    }
    out.push_back(std::move(pend));
    out.push_back(std::move(loop));
    out.push_back(std::move(series));
    out.push_back(std::move(par));

    RuleCheck dy{"delta-wye"};
    if (!verify_rho_pointwise(s, t.rho)) fail(dy, "rho table does not reproduce some Delta pointwise");
    out.push_back(std::move(dy));

    // sum_w (A_i)_{wx}(A_j)_{wy}(A_k)_{wz} = sum_{rst} upsilon (A_r)_{xz}(A_s)_{xy}(A_t)_{yz}
    RuleCheck yd{"wye-delta"};
    std::vector<long> hist(static_cast<std::size_t>(r * r * r));
    for (std::size_t x = 0; x < n && yd.ok; ++x)
        for (std::size_t y = 0; y < n && yd.ok; ++y)
            for (std::size_t z = 0; z < n && yd.ok; ++z) {
                std::fill(hist.begin(), hist.end(), 0);
                for (std::size_t w = 0; w < n; ++w)
                    ++hist[(static_cast<std::size_t>(s.relation(w, x)) * r + s.relation(w, y)) * r + s.relation(w, z)];
                const int tr = s.relation(x, z), ts = s.relation(x, y), tt = s.relation(y, z);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j)
                        for (int k = 0; k < r; ++k) {
                            const Rational rhs = t.upsilon.value(i, j, k, tr, ts, tt);
                            if (rhs != hist[(static_cast<std::size_t>(i) * r + j) * r + k])
                                fail(yd, "Wye" + triple_key(i, j, k) + " at (" + std::to_string(x) + "," +
                                             std::to_string(y) + "," + std::to_string(z) + ")");
                        }
            }
    out.push_back(std::move(yd));
    return out;
}

}  // namespace qiso

#pragma once

#include "qiso/exact_math.hpp"
#include "qiso/scheme.hpp"
#include "qiso/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

namespace qiso {

/// Relation labels of a vertex triple (x,y,z): x-z in R_r, x-y in R_s, y-z in R_t.
struct TriangleType {
    int r = 0, s = 0, t = 0;
    friend auto operator<=>(const TriangleType&, const TriangleType&) = default;
};

inline std::string triple_key(int a, int b, int c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

/// Feasible triangle types in lexicographic order with a dense index lookup.
class TriangleTypes {
public:
    TriangleTypes() = default;
    explicit TriangleTypes(const IntersectionTensor& p) : rank_(p.rank()) {
        index_.assign(static_cast<std::size_t>(rank_ * rank_ * rank_), -1);
        for (int r = 0; r < rank_; ++r)
            for (int s = 0; s < rank_; ++s)
                for (int t = 0; t < rank_; ++t)
                    if (p(r, t, s) > 0) {
                        index_[code(r, s, t)] = static_cast<int>(types_.size());
                        types_.push_back({r, s, t});
                    }
    }

    int rank() const { return rank_; }
    std::size_t size() const { return types_.size(); }
    const TriangleType& operator[](std::size_t i) const { return types_[i]; }
    const std::vector<TriangleType>& all() const { return types_; }

    /// Index of type (r,s,t), or -1 when infeasible.
    int index_of(int r, int s, int t) const { return index_[code(r, s, t)]; }
    std::size_t code(int a, int b, int c) const {
        return (static_cast<std::size_t>(a) * rank_ + b) * rank_ + c;
    }

private:
    int rank_ = 0;
    std::vector<TriangleType> types_;
    std::vector<int> index_;
};

struct CensusEntry {
    TriangleType type;
    std::size_t count = 0;
    std::array<Vertex, 3> representative{};
};

/// Exact census of vertex triples by triangle type.
inline std::vector<CensusEntry> triangle_census(const AssociationScheme& s) {
    const TriangleTypes types(s.intersection());
    std::vector<CensusEntry> out(types.size());
    std::vector<bool> has_rep(types.size(), false);
    for (std::size_t i = 0; i < types.size(); ++i) out[i].type = types[i];
    const std::size_t n = s.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const int idx = types.index_of(s.relation(x, z), s.relation(x, y), s.relation(y, z));
                auto& e = out[static_cast<std::size_t>(idx)];
                ++e.count;
                if (!has_rep[idx]) {
                    has_rep[idx] = true;
                    e.representative = {Vertex(x), Vertex(y), Vertex(z)};
                }
            }
    return out;
}

/// Wye-to-Delta coefficients: value(ijk, type) is the number of u with
/// x~i u, y~j u, z~k u for any triple (x,y,z) of the given triangle type.
class UpsilonTable {
public:
    UpsilonTable() = default;
    UpsilonTable(TriangleTypes types) : types_(std::move(types)) {
        const auto r = static_cast<std::size_t>(types_.rank());
        values_.assign(r * r * r * types_.size(), 0);
    }

    const TriangleTypes& types() const { return types_; }
    int rank() const { return types_.rank(); }

    long count(int i, int j, int k, std::size_t type_index) const {
        return values_[types_.code(i, j, k) * types_.size() + type_index];
    }
    long& count(int i, int j, int k, std::size_t type_index) {
        return values_[types_.code(i, j, k) * types_.size() + type_index];
    }
    /// Coefficient of Delta(A_r,A_s,A_t) in Wye(A_i,A_j,A_k); zero for infeasible types.
    Rational value(int i, int j, int k, int r, int s, int t) const {
        const int idx = types_.index_of(r, s, t);
        return idx < 0 ? Rational(0) : Rational(count(i, j, k, static_cast<std::size_t>(idx)));
    }

    friend bool operator==(const UpsilonTable& a, const UpsilonTable& b) {
        return a.types_.all() == b.types_.all() && a.values_ == b.values_;
    }

private:
    TriangleTypes types_;
    std::vector<long> values_;
};

class NotTriplyRegular : public std::runtime_error {
public:
    struct Witness {
        std::array<Vertex, 3> first{}, second{};
        TriangleType type;
        int i = 0, j = 0, k = 0;
        long first_count = 0, second_count = 0;
    };
    explicit NotTriplyRegular(Witness w) : std::runtime_error(describe(w)), witness_(w) {}
    const Witness& witness() const { return witness_; }

private:
    static std::string describe(const Witness& w) {
        std::ostringstream os;
        os << "not triply regular: weights " << triple_key(w.i, w.j, w.k) << " on triangle type "
           << triple_key(w.type.r, w.type.s, w.type.t) << " give " << w.first_count << " common neighbours at "
           << triple_key(int(w.first[0]), int(w.first[1]), int(w.first[2])) << " but " << w.second_count << " at "
           << triple_key(int(w.second[0]), int(w.second[1]), int(w.second[2]));
        return os.str();
    }
    Witness witness_;
};

namespace detail {

template <class Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (jobs == 1) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
        const std::size_t lo = n * w / jobs, hi = n * (w + 1) / jobs;
        pool.emplace_back([&, lo, hi, w] { fn(lo, hi, w); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Computes the Wye-to-Delta table, checking constancy on every ordered
/// vertex triple. Throws NotTriplyRegular with two disagreeing triples.
inline UpsilonTable upsilon_table(const AssociationScheme& s, unsigned jobs = 1) {
    const TriangleTypes types(s.intersection());
    const std::size_t n = s.size();
    const int r = s.rank();
    const std::size_t cube = static_cast<std::size_t>(r * r * r);
    const std::size_t ntypes = types.size();

    // Reference histogram per type, taken from the first triple in lexicographic order.
    std::vector<std::vector<long>> reference(ntypes);
    std::vector<std::array<Vertex, 3>> ref_triple(ntypes);
    {
        const auto census = triangle_census(s);
        std::vector<long> hist(cube);
        for (std::size_t t = 0; t < ntypes; ++t) {
            const auto [x, y, z] = census[t].representative;
            std::fill(hist.begin(), hist.end(), 0);
            for (std::size_t u = 0; u < n; ++u)
                ++hist[types.code(s.relation(x, u), s.relation(y, u), s.relation(z, u))];
            reference[t] = hist;
            ref_triple[t] = census[t].representative;
        }
    }

    std::vector<std::optional<NotTriplyRegular::Witness>> failures(std::max(1u, jobs));
    detail::parallel_chunks(n, jobs, [&](std::size_t lo, std::size_t hi, unsigned worker) {
        std::vector<std::uint32_t> base(n);
        std::vector<long> hist(cube);
        for (std::size_t x = lo; x < hi; ++x) {
            const std::uint8_t* rx = s.row(x);
            for (std::size_t y = 0; y < n; ++y) {
                const std::uint8_t* ry = s.row(y);
                for (std::size_t u = 0; u < n; ++u)
                    base[u] = static_cast<std::uint32_t>((rx[u] * r + ry[u]) * r);
                const int sxy = rx[y];
                for (std::size_t z = 0; z < n; ++z) {
                    const std::uint8_t* rz = s.row(z);
                    std::fill(hist.begin(), hist.end(), 0);
                    for (std::size_t u = 0; u < n; ++u) ++hist[base[u] + rz[u]];
                    const auto t = static_cast<std::size_t>(types.index_of(rx[z], sxy, ry[z]));
                    if (std::memcmp(hist.data(), reference[t].data(), cube * sizeof(long)) != 0) {
                        NotTriplyRegular::Witness w;
                        w.first = ref_triple[t];
                        w.second = {Vertex(x), Vertex(y), Vertex(z)};
                        w.type = types[t];
                        for (std::size_t c = 0; c < cube; ++c)
                            if (hist[c] != reference[t][c]) {
                                w.i = int(c) / (r * r);
                                w.j = (int(c) / r) % r;
                                w.k = int(c) % r;
                                w.first_count = reference[t][c];
                                w.second_count = hist[c];
                                break;
                            }
                        failures[worker] = w;
                        return;
                    }
                }
            }
        }
    });
    for (const auto& f : failures)
        if (f) throw NotTriplyRegular(*f);

    UpsilonTable table(types);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                for (std::size_t t = 0; t < ntypes; ++t) table.count(i, j, k, t) = reference[t][types.code(i, j, k)];
    return table;
}

/// Delta-to-Wye coefficients: for each feasible Delta (i,j,k) a sparse
/// combination sum_{rst} rho * Wye(A_r,A_s,A_t) reproducing it pointwise.
class RhoTable {
public:
    using Row = std::vector<std::pair<TriangleType, Rational>>;

    RhoTable() = default;
    RhoTable(int rank, std::map<TriangleType, Row> rows) : rank_(rank), rows_(std::move(rows)) {}

    int rank() const { return rank_; }
    /// Empty when the Delta vanishes identically (infeasible (i,j,k)).
    const Row& row(int i, int j, int k) const {
        static const Row empty;
        auto it = rows_.find({i, j, k});
        return it == rows_.end() ? empty : it->second;
    }
    const std::map<TriangleType, Row>& rows() const { return rows_; }

    friend bool operator==(const RhoTable&, const RhoTable&) = default;

private:
    int rank_ = 0;
    std::map<TriangleType, Row> rows_;
};

class NotDuallyTriplyRegular : public std::runtime_error {
public:
    explicit NotDuallyTriplyRegular(TriangleType delta)
        : std::runtime_error("not dually triply regular: Delta" + triple_key(delta.r, delta.s, delta.t) +
                             " is outside the span of the Wye scaffolds"),
          delta_(delta) {}
    TriangleType delta() const { return delta_; }

private:
    TriangleType delta_;
};

/// Columns are the Wye vectors in (r,s,t) lexicographic order; rows are
/// feasible triangle types.
inline RatMatrix wye_matrix(const UpsilonTable& ups) {
    const auto& types = ups.types();
    const int r = ups.rank();
    const std::size_t cube = static_cast<std::size_t>(r * r * r);
    RatMatrix m(types.size(), cube);
    for (std::size_t t = 0; t < types.size(); ++t)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c) m(t, types.code(a, b, c)) = ups.count(a, b, c, t);
    return m;
}

/// Solves the Delta-in-Wye-span systems with the canonical solver. The
/// result is a function of the upsilon table alone.
inline RhoTable rho_table(const UpsilonTable& ups) {
    const auto& types = ups.types();
    const int r = ups.rank();
    const RatMatrix a = wye_matrix(ups);
    RatMatrix b(types.size(), types.size());
    for (std::size_t t = 0; t < types.size(); ++t) b(t, t) = 1;
    const auto sols = solve_linear_exact_multi(a, b);

    std::map<TriangleType, RhoTable::Row> rows;
    for (std::size_t t = 0; t < types.size(); ++t) {
        if (!sols[t].consistent) throw NotDuallyTriplyRegular(types[t]);
        RhoTable::Row row;
        for (int x = 0; x < r; ++x)
            for (int y = 0; y < r; ++y)
                for (int z = 0; z < r; ++z) {
                    const Rational& v = sols[t].x[types.code(x, y, z)];
                    if (v != 0) row.emplace_back(TriangleType{x, y, z}, v);
                }
        rows.emplace(types[t], std::move(row));
    }
    return RhoTable(r, std::move(rows));
}

inline RhoTable rho_table(const AssociationScheme&, const UpsilonTable& ups) { return rho_table(ups); }

/// Checks (A_i)_{xz}(A_j)_{xy}(A_k)_{yz} = sum rho * #{w : w~r x, w~s y, w~t z}
/// on every vertex triple and every feasible (i,j,k).
inline bool verify_rho_pointwise(const AssociationScheme& s, const RhoTable& rho) {
    const std::size_t n = s.size();
    const int r = s.rank();
    std::vector<long> hist(static_cast<std::size_t>(r * r * r));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                std::fill(hist.begin(), hist.end(), 0);
                for (std::size_t w = 0; w < n; ++w)
                    ++hist[(static_cast<std::size_t>(s.relation(w, x)) * r + s.relation(w, y)) * r + s.relation(w, z)];
                const TriangleType actual{s.relation(x, z), s.relation(x, y), s.relation(y, z)};
                for (const auto& [delta, row] : rho.rows()) {
                    Rational rhs = 0;
                    for (const auto& [wye, c] : row)
                        rhs += c * hist[(static_cast<std::size_t>(wye.r) * r + wye.s) * r + wye.t];
                    const Rational lhs = delta == actual ? 1 : 0;
                    if (lhs != rhs) return false;
                }
            }
    return true;
}

struct TripleRegularityTables {
    IntersectionTensor p;
    UpsilonTable upsilon;
    RhoTable rho;
};

struct ExactlyTRReport {
    bool triply_regular = false;
    bool dually_triply_regular = false;
    int Np = 0;
    int Nq = 0;  // floating-point corroboration only
    bool lemma_shortcut = false;  // Np == Nq and triply regular
    std::string failure;
    std::optional<TripleRegularityTables> tables;

    bool exactly_triply_regular() const { return triply_regular && dually_triply_regular; }
};

inline ExactlyTRReport exactly_tr_report(const AssociationScheme& s, unsigned jobs = 1, double krein_tolerance = 1e-6) {
    ExactlyTRReport rep;
    rep.Np = s.intersection().support_size();
    rep.Nq = numeric_spectrum(s, krein_tolerance).Nq;
    UpsilonTable ups;
    try {
        ups = upsilon_table(s, jobs);
        rep.triply_regular = true;
    } catch (const NotTriplyRegular& e) {
        rep.failure = e.what();
        return rep;
    }
    rep.lemma_shortcut = rep.Np == rep.Nq;
    try {
        RhoTable rho = rho_table(ups);
        rep.dually_triply_regular = true;
        rep.tables = TripleRegularityTables{s.intersection(), std::move(ups), std::move(rho)};
    } catch (const NotDuallyTriplyRegular& e) {
        rep.failure = e.what();
    }
    return rep;
}

/// Throws unless the scheme is exactly triply regular; returns its tables.
inline TripleRegularityTables compute_tables(const AssociationScheme& s, unsigned jobs = 1) {
    UpsilonTable ups = upsilon_table(s, jobs);
    RhoTable rho = rho_table(ups);
    return {s.intersection(), std::move(ups), std::move(rho)};
}

}  // namespace qiso

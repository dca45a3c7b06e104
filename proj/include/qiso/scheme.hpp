#pragma once

#include "qiso/exact_math.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qiso {

using Vertex = std::uint32_t;

/// Structure constants p_ij^k of a symmetric scheme, stored densely.
class IntersectionTensor {
public:
    IntersectionTensor() = default;
    explicit IntersectionTensor(int classes)
        : d_(classes), p_(static_cast<std::size_t>((classes + 1) * (classes + 1) * (classes + 1)), 0) {}

    int classes() const { return d_; }
    int rank() const { return d_ + 1; }

    long operator()(int i, int j, int k) const { return p_[index(i, j, k)]; }
    long& operator()(int i, int j, int k) { return p_[index(i, j, k)]; }

    long valency(int i) const { return (*this)(i, i, 0); }
    std::vector<long> valencies() const {
        std::vector<long> k(rank());
        for (int i = 0; i < rank(); ++i) k[i] = valency(i);
        return k;
    }

    /// Number of (i,j,k) with p_ij^k > 0.
    int support_size() const {
        int n = 0;
        for (long v : p_) n += v > 0;
        return n;
    }

    friend bool operator==(const IntersectionTensor&, const IntersectionTensor&) = default;

private:
    std::size_t index(int i, int j, int k) const {
        const auto r = static_cast<std::size_t>(d_ + 1);
        return (static_cast<std::size_t>(i) * r + static_cast<std::size_t>(j)) * r + static_cast<std::size_t>(k);
    }
    int d_ = 0;
    std::vector<long> p_;
};

class SchemeError : public std::runtime_error {
public:
    enum class Kind { Shape, Diagonal, Asymmetry, EmptyRelation, IntersectionNotConstant };

    SchemeError(Kind kind, std::string msg, std::vector<std::pair<Vertex, Vertex>> witnesses = {})
        : std::runtime_error(std::move(msg)), kind_(kind), witnesses_(std::move(witnesses)) {}

    Kind kind() const { return kind_; }
    const std::vector<std::pair<Vertex, Vertex>>& witnesses() const { return witnesses_; }

private:
    Kind kind_;
    std::vector<std::pair<Vertex, Vertex>> witnesses_;
};

/// A validated symmetric association scheme. Relations are kept as one byte
/// per ordered vertex pair; instances only come out of validate_scheme.
class AssociationScheme {
public:
    std::size_t size() const { return n_; }
    int classes() const { return d_; }
    int rank() const { return d_ + 1; }

    int relation(std::size_t x, std::size_t y) const { return rel_[x * n_ + y]; }
    const std::uint8_t* row(std::size_t x) const { return rel_.data() + x * n_; }
    const std::vector<std::uint8_t>& relation_table() const { return rel_; }

    const IntersectionTensor& intersection() const { return p_; }
    long valency(int i) const { return p_.valency(i); }

    /// Copy with relation i renamed to perm[i]; perm must fix 0.
    AssociationScheme relabeled(const std::vector<int>& perm) const;

    friend bool operator==(const AssociationScheme& a, const AssociationScheme& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.rel_ == b.rel_;
    }

private:
    friend AssociationScheme validate_scheme(std::size_t, int, std::vector<std::uint8_t>);
    std::size_t n_ = 0;
    int d_ = 0;
    std::vector<std::uint8_t> rel_;
    IntersectionTensor p_;
};

/// Checks the scheme axioms and computes the intersection tensor. The first
/// witness of a violated axiom is reported.
inline AssociationScheme validate_scheme(std::size_t n, int classes, std::vector<std::uint8_t> table) {
    using K = SchemeError::Kind;
    if (n == 0) throw SchemeError(K::Shape, "scheme has no vertices");
    if (classes < 0 || classes > 254) throw SchemeError(K::Shape, "class count out of range");
    if (table.size() != n * n) throw SchemeError(K::Shape, "relation table is not |X| x |X|");
    const int r = classes + 1;
    auto at = [&](std::size_t x, std::size_t y) -> int { return table[x * n + y]; };

    std::vector<std::size_t> occurrences(r, 0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const int v = at(x, y);
            if (v >= r) {
                std::ostringstream os;
                os << "relation index " << v << " at (" << x << "," << y << ") exceeds class count " << classes;
                throw SchemeError(K::Shape, os.str(), {{Vertex(x), Vertex(y)}});
            }
            if ((x == y) != (v == 0)) {
                std::ostringstream os;
                os << "relation 0 must be exactly the diagonal; violated at (" << x << "," << y << ")";
                throw SchemeError(K::Diagonal, os.str(), {{Vertex(x), Vertex(y)}});
            }
            if (v != at(y, x)) {
                std::ostringstream os;
                os << "relation table is not symmetric at (" << x << "," << y << ")";
                throw SchemeError(K::Asymmetry, os.str(), {{Vertex(x), Vertex(y)}, {Vertex(y), Vertex(x)}});
            }
            ++occurrences[v];
        }
    }
    for (int i = 0; i < r; ++i) {
        if (occurrences[i] == 0)
            throw SchemeError(K::EmptyRelation, "relation " + std::to_string(i) + " is empty");
    }

    IntersectionTensor p(classes);
    std::vector<bool> seen(r, false);
    std::vector<std::pair<Vertex, Vertex>> first(r);
    std::vector<long> counts(static_cast<std::size_t>(r * r));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t z = 0; z < n; ++z) ++counts[at(x, z) * r + at(z, y)];
            const int k = at(x, y);
            if (!seen[k]) {
                seen[k] = true;
                first[k] = {Vertex(x), Vertex(y)};
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) p(i, j, k) = counts[i * r + j];
                continue;
            }
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) {
                    if (p(i, j, k) != counts[i * r + j]) {
                        std::ostringstream os;
                        os << "p_{" << i << "," << j << "}^" << k << " is not constant: " << p(i, j, k) << " at ("
                           << first[k].first << "," << first[k].second << ") but " << counts[i * r + j] << " at ("
                           << x << "," << y << ")";
                        throw SchemeError(K::IntersectionNotConstant, os.str(), {first[k], {Vertex(x), Vertex(y)}});
                    }
                }
            }
        }
    }

    AssociationScheme s;
    s.n_ = n;
    s.d_ = classes;
    s.rel_ = std::move(table);
    s.p_ = std::move(p);
    return s;
}

inline AssociationScheme validate_scheme(const std::vector<std::vector<int>>& matrix, int classes) {
    const std::size_t n = matrix.size();
    std::vector<std::uint8_t> flat;
    flat.reserve(n * n);
    for (const auto& row : matrix) {
        if (row.size() != n) throw SchemeError(SchemeError::Kind::Shape, "relation matrix is not square");
        for (int v : row) {
            if (v < 0 || v > 255) throw SchemeError(SchemeError::Kind::Shape, "relation index out of range");
            flat.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return validate_scheme(n, classes, std::move(flat));
}

inline AssociationScheme AssociationScheme::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != rank() || perm[0] != 0)
        throw std::invalid_argument("relabeled: permutation must have d+1 entries and fix 0");
    std::vector<std::uint8_t> t(rel_.size());
    for (std::size_t i = 0; i < rel_.size(); ++i) t[i] = static_cast<std::uint8_t>(perm[rel_[i]]);
    return validate_scheme(n_, d_, std::move(t));
}

inline const IntersectionTensor& intersection_numbers(const AssociationScheme& s) { return s.intersection(); }

/// Element of the Bose-Mesner algebra in the adjacency basis A_0..A_d.
struct BMElement {
    std::vector<Rational> coeffs;

    BMElement() = default;
    explicit BMElement(std::vector<Rational> c) : coeffs(std::move(c)) {}

    static BMElement zero(int rank) { return BMElement(std::vector<Rational>(rank)); }
    static BMElement basis(int rank, int i) {
        BMElement e = zero(rank);
        e.coeffs.at(i) = 1;
        return e;
    }
    /// Sum of A_i over the selected relation indices.
    static BMElement indicator(int rank, const std::vector<int>& selected) {
        BMElement e = zero(rank);
        for (int i : selected) e.coeffs.at(i) = 1;
        return e;
    }
    static BMElement all_ones(int rank) {
        BMElement e;
        e.coeffs.assign(rank, Rational(1));
        return e;
    }

    int rank() const { return static_cast<int>(coeffs.size()); }
    const Rational& operator[](int i) const { return coeffs[i]; }
    Rational& operator[](int i) { return coeffs[i]; }

    friend bool operator==(const BMElement&, const BMElement&) = default;
};

inline BMElement bm_product(const IntersectionTensor& p, const BMElement& u, const BMElement& v) {
    const int r = p.rank();
    if (u.rank() != r || v.rank() != r) throw DimensionError("bm_product: element rank differs from scheme rank");
    BMElement out = BMElement::zero(r);
    for (int i = 0; i < r; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < r; ++j) {
            if (v[j] == 0) continue;
            const Rational uv = u[i] * v[j];
            for (int k = 0; k < r; ++k) {
                const long c = p(i, j, k);
                if (c != 0) out[k] += uv * c;
            }
        }
    }
    return out;
}

inline BMElement bm_schur(const BMElement& u, const BMElement& v) {
    if (u.rank() != v.rank()) throw DimensionError("bm_schur: ranks differ");
    BMElement out = BMElement::zero(u.rank());
    for (int i = 0; i < u.rank(); ++i) out[i] = u[i] * v[i];
    return out;
}

/// Constant diagonal of sum u_i A_i.
inline Rational bm_loop_scalar(const BMElement& u) { return u.coeffs.at(0); }

/// Constant row sum of sum u_i A_i.
inline Rational bm_pendant_scalar(const BMElement& u, const std::vector<long>& valencies) {
    if (static_cast<std::size_t>(u.rank()) != valencies.size()) throw DimensionError("bm_pendant_scalar: rank mismatch");
    Rational acc = 0;
    for (int i = 0; i < u.rank(); ++i) acc += u[i] * valencies[i];
    return acc;
}

}  // namespace qiso

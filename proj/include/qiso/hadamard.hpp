#pragma once

#include "qiso/galois_field.hpp"
#include "qiso/scheme.hpp"

#include <cstdint>
#include <deque>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qiso {

class HadamardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A verified +-1 matrix with H * H^T = n I.
class HadamardMatrix {
public:
    /// Verifies orthogonality; reports the first failing row pair.
    HadamardMatrix(int n, std::vector<std::int8_t> entries, std::string provenance)
        : n_(n), h_(std::move(entries)), provenance_(std::move(provenance)) {
        if (n_ < 1 || h_.size() != static_cast<std::size_t>(n_) * n_)
            throw HadamardError("Hadamard matrix: entry count does not match order");
        for (auto v : h_)
            if (v != 1 && v != -1) throw HadamardError("Hadamard matrix: entries must be +1 or -1");
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b) {
                long dot = 0;
                for (int j = 0; j < n_; ++j) dot += (*this)(a, j) * (*this)(b, j);
                if (dot != 0)
                    throw HadamardError("not a Hadamard matrix: rows " + std::to_string(a) + " and " +
                                        std::to_string(b) + " have inner product " + std::to_string(dot));
            }
    }

    int order() const { return n_; }
    int operator()(int i, int j) const { return h_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::string& provenance() const { return provenance_; }

    /// n lines of n characters from {+,-}.
    std::string to_text() const {
        std::string out;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) out += (*this)(i, j) > 0 ? '+' : '-';
            out += '\n';
        }
        return out;
    }

    HadamardMatrix transposed() const {
        std::vector<std::int8_t> t(h_.size());
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t[static_cast<std::size_t>(j) * n_ + i] = h_[static_cast<std::size_t>(i) * n_ + j];
        return HadamardMatrix(n_, std::move(t), "transpose(" + provenance_ + ")");
    }

    friend bool operator==(const HadamardMatrix& a, const HadamardMatrix& b) { return a.n_ == b.n_ && a.h_ == b.h_; }

private:
    int n_;
    std::vector<std::int8_t> h_;
    std::string provenance_;
};

inline HadamardMatrix sylvester(int k) {
    if (k < 0 || k > 12) throw HadamardError("sylvester: k must be in [0, 12]");
    std::vector<std::int8_t> h{1};
    int n = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<std::int8_t> next(static_cast<std::size_t>(4) * n * n);
        const int m = 2 * n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto v = h[static_cast<std::size_t>(i) * n + j];
                next[static_cast<std::size_t>(i) * m + j] = v;
                next[static_cast<std::size_t>(i) * m + j + n] = v;
                next[static_cast<std::size_t>(i + n) * m + j] = v;
                next[static_cast<std::size_t>(i + n) * m + j + n] = static_cast<std::int8_t>(-v);
            }
        h = std::move(next);
        n = m;
    }
    return HadamardMatrix(n, std::move(h), "sylvester(" + std::to_string(k) + ")");
}

/// Paley construction I of order q+1 for a prime power q = 3 mod 4.
inline HadamardMatrix paley1(int q) {
    if (!prime_power(q) || q % 4 != 3) throw HadamardError("paley1: q must be a prime power congruent to 3 mod 4");
    const GaloisField f(q);
    const int n = q + 1;
    // S = [[0, 1^T], [-1, Q]] with Q_ab = chi(a - b); H = I + S.
    std::vector<std::int8_t> h(static_cast<std::size_t>(n) * n);
    auto at = [&](int i, int j) -> std::int8_t& { return h[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s;
            if (i == 0 && j == 0) s = 0;
            else if (i == 0) s = 1;
            else if (j == 0) s = -1;
            else s = f.chi(f.sub(i - 1, j - 1));
            at(i, j) = static_cast<std::int8_t>(s + (i == j ? 1 : 0));
        }
    return HadamardMatrix(n, std::move(h), "paley1(" + std::to_string(q) + ")");
}

inline HadamardMatrix kron(const HadamardMatrix& a, const HadamardMatrix& b) {
    const int n = a.order() * b.order();
    std::vector<std::int8_t> h(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j)
            for (int k = 0; k < b.order(); ++k)
                for (int l = 0; l < b.order(); ++l)
                    h[static_cast<std::size_t>(i * b.order() + k) * n + j * b.order() + l] =
                        static_cast<std::int8_t>(a(i, j) * b(k, l));
    return HadamardMatrix(n, std::move(h), "kron(" + a.provenance() + "," + b.provenance() + ")");
}

inline HadamardMatrix read_hadamard_text(std::istream& in, const std::string& name = "file") {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    const int n = static_cast<int>(lines.size());
    std::vector<std::int8_t> h;
    for (const auto& l : lines) {
        if (static_cast<int>(l.size()) != n) throw HadamardError("Hadamard text: expected " + std::to_string(n) + " columns per row");
        for (char c : l) {
            if (c == '+') h.push_back(1);
            else if (c == '-') h.push_back(-1);
            else throw HadamardError(std::string("Hadamard text: unexpected character '") + c + "'");
        }
    }
    return HadamardMatrix(n, std::move(h), name);
}

inline HadamardMatrix parse_hadamard_text(const std::string& text, const std::string& name = "text") {
    std::istringstream in(text);
    return read_hadamard_text(in, name);
}

/// A Hadamard matrix of order n built from Sylvester, Paley I and Kronecker
/// products, covering 1, 2 and every multiple of 4 up to 48 except 36.
inline HadamardMatrix hadamard_of_order(int n) {
    if (n < 1) throw HadamardError("no Hadamard matrix of order " + std::to_string(n));
    if ((n & (n - 1)) == 0) {
        int k = 0;
        while ((1 << k) < n) ++k;
        return sylvester(k);
    }
    if (n % 4 != 0) throw HadamardError("no Hadamard matrix of order " + std::to_string(n));
    if (prime_power(n - 1) && (n - 1) % 4 == 3) return paley1(n - 1);
    for (int two = 2; two < n; two *= 2) {
        if (n % two != 0) break;
        const int rest = n / two;
        try {
            int k = 0;
            while ((1 << k) < two) ++k;
            if (rest == 1 || rest == 2 || rest % 4 == 0) return kron(sylvester(k), hadamard_of_order(rest));
        } catch (const HadamardError&) {
        }
    }
    throw HadamardError("no construction available for Hadamard order " + std::to_string(n));
}

/// Hadamard graph with its distance scheme. Vertex order r1+, r1-, ..., rn+,
/// rn-, c1+, c1-, ..., cn+, cn-.
struct HadamardGraphBundle {
    int n = 0;
    std::vector<std::uint8_t> adjacency;  // 4n x 4n, 0/1
    AssociationScheme scheme;
    std::string provenance;

    std::size_t vertex_count() const { return static_cast<std::size_t>(4 * n); }
    bool adjacent(std::size_t a, std::size_t b) const { return adjacency[a * vertex_count() + b] != 0; }
};

inline std::size_t row_vertex(int n, int i, bool minus) { (void)n; return static_cast<std::size_t>(2 * i + (minus ? 1 : 0)); }
inline std::size_t col_vertex(int n, int j, bool minus) { return static_cast<std::size_t>(2 * n + 2 * j + (minus ? 1 : 0)); }

inline std::vector<std::uint8_t> hadamard_adjacency(const HadamardMatrix& h) {
    const int n = h.order();
    const std::size_t nv = static_cast<std::size_t>(4 * n);
    std::vector<std::uint8_t> adj(nv * nv, 0);
    auto link = [&](std::size_t a, std::size_t b) { adj[a * nv + b] = adj[b * nv + a] = 1; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const bool same = h(i, j) == 1;
            link(row_vertex(n, i, false), col_vertex(n, j, !same));
            link(row_vertex(n, i, true), col_vertex(n, j, same));
        }
    return adj;
}

/// Intersection numbers of the distance scheme of a Hadamard graph of
/// order 4n, p(i,j,k) = (L_i)_{k,j}. Requires n even or n = 2.
inline IntersectionTensor hadamard_intersection_tensor(int n) {
    if (n < 2 || n % 2 != 0) throw HadamardError("tabulated intersection numbers need even n >= 2");
    const long a = n, h = n / 2, m = n - 1;
    const long L[5][5][5] = {
        {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}},
        {{0, a, 0, 0, 0}, {1, 0, m, 0, 0}, {0, h, 0, h, 0}, {0, 0, m, 0, 1}, {0, 0, 0, a, 0}},
        {{0, 0, 2 * a - 2, 0, 0}, {0, m, 0, m, 0}, {1, 0, 2 * a - 4, 0, 1}, {0, m, 0, m, 0}, {0, 0, 2 * a - 2, 0, 0}},
        {{0, 0, 0, a, 0}, {0, 0, m, 0, 1}, {0, h, 0, h, 0}, {1, 0, m, 0, 0}, {0, a, 0, 0, 0}},
        {{0, 0, 0, 0, 1}, {0, 0, 0, 1, 0}, {0, 0, 1, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 0, 0, 0}},
    };
    IntersectionTensor p(4);
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k)
            for (int j = 0; j < 5; ++j) p(i, j, k) = L[i][k][j];
    return p;
}

namespace detail {

inline std::vector<int> bfs_distances(const std::vector<std::uint8_t>& adj, std::size_t nv, std::size_t src) {
    std::vector<int> dist(nv, -1);
    std::deque<std::size_t> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < nv; ++v)
            if (adj[u * nv + v] && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

}  // namespace detail

/// Builds the Hadamard graph and its 4-class distance scheme, checking the
/// intersection numbers against the tabulated values for this n.
inline HadamardGraphBundle build_hadamard_graph(const HadamardMatrix& h) {
    const int n = h.order();
    if (n < 2) throw HadamardError("Hadamard graph distance scheme needs n >= 2");
    const std::size_t nv = static_cast<std::size_t>(4 * n);
    HadamardGraphBundle b;
    b.n = n;
    b.adjacency = hadamard_adjacency(h);
    b.provenance = h.provenance();
    std::vector<std::uint8_t> table(nv * nv);
    int diameter = 0;
    for (std::size_t x = 0; x < nv; ++x) {
        const auto dist = detail::bfs_distances(b.adjacency, nv, x);
        for (std::size_t y = 0; y < nv; ++y) {
            if (dist[y] < 0) throw HadamardError("Hadamard graph is disconnected");
            diameter = std::max(diameter, dist[y]);
            table[x * nv + y] = static_cast<std::uint8_t>(dist[y]);
        }
    }
    if (diameter != 4)
        throw HadamardError("distance partition has " + std::to_string(diameter + 1) + " classes, expected 5");
    b.scheme = validate_scheme(nv, 4, std::move(table));
    if (b.scheme.intersection() != hadamard_intersection_tensor(n))
        throw HadamardError("distance scheme intersection numbers differ from the Hadamard graph tables");
    return b;
}

/// Scheme of the Hadamard graph with relations assigned by vertex roles:
/// 1 adjacent, 2 same side different index, 3 opposite side non-adjacent,
/// 4 same index opposite sign. Empty relations are dropped and the rest
/// renumbered, so n = 1 gives the 3-class scheme of 2K_2. For n >= 2 this
/// coincides with the distance scheme.
inline AssociationScheme hadamard_role_scheme(const HadamardMatrix& h) {
    const int n = h.order();
    const std::size_t nv = static_cast<std::size_t>(4 * n);
    const auto adj = hadamard_adjacency(h);
    std::vector<std::uint8_t> table(nv * nv);
    std::vector<bool> used(5, false);
    for (std::size_t x = 0; x < nv; ++x)
        for (std::size_t y = 0; y < nv; ++y) {
            int rel;
            const bool same_side = (x < 2u * n) == (y < 2u * n);
            if (x == y) rel = 0;
            else if (adj[x * nv + y]) rel = 1;
            else if (same_side && x / 2 == y / 2) rel = 4;
            else if (same_side) rel = 2;
            else rel = 3;
            table[x * nv + y] = static_cast<std::uint8_t>(rel);
            used[rel] = true;
        }
    std::vector<int> renumber(5, -1);
    int next = 0;
    for (int i = 0; i < 5; ++i)
        if (used[i]) renumber[i] = next++;
    for (auto& v : table) v = static_cast<std::uint8_t>(renumber[v]);
    return validate_scheme(nv, next - 1, std::move(table));
}

}  // namespace qiso

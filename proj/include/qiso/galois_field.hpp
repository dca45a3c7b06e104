#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qiso {

/// Returns (p, k) with q = p^k for a prime p, or nullopt.
inline std::optional<std::pair<int, int>> prime_power(int q) {
    if (q < 2) return std::nullopt;
    int p = 0;
    for (int f = 2; f * f <= q; ++f)
        if (q % f == 0) {
            p = f;
            break;
        }
    if (p == 0) return std::pair{q, 1};
    int k = 0;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    if (q != 1) return std::nullopt;
    return std::pair{p, k};
}

/// GF(p^k) with elements encoded as base-p digit vectors packed into ints,
/// arithmetic through precomputed tables. Small orders only.
class GaloisField {
public:
    explicit GaloisField(int q) : q_(q) {
        auto pk = prime_power(q);
        if (!pk) throw std::invalid_argument("GF(q) needs a prime power, got " + std::to_string(q));
        p_ = pk->first;
        k_ = pk->second;
        modulus_ = find_irreducible();
        add_.assign(static_cast<std::size_t>(q_ * q_), 0);
        mul_.assign(static_cast<std::size_t>(q_ * q_), 0);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                add_[a * q_ + b] = encode(poly_add(decode(a), decode(b)));
                mul_[a * q_ + b] = encode(poly_mulmod(decode(a), decode(b)));
            }
        square_.assign(q_, false);
        for (int a = 1; a < q_; ++a) square_[mul(a, a)] = true;
    }

    int order() const { return q_; }
    int characteristic() const { return p_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const {
        for (int b = 0; b < q_; ++b)
            if (add(a, b) == 0) return b;
        return 0;
    }
    int sub(int a, int b) const { return add(a, neg(b)); }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    int chi(int a) const { return a == 0 ? 0 : (square_[a] ? 1 : -1); }

private:
    using Poly = std::vector<int>;  // low degree first, length k

    Poly decode(int a) const {
        Poly v(k_);
        for (int i = 0; i < k_; ++i) {
            v[i] = a % p_;
            a /= p_;
        }
        return v;
    }
    int encode(const Poly& v) const {
        int a = 0;
        for (int i = k_; i-- > 0;) a = a * p_ + v[i];
        return a;
    }
    Poly poly_add(const Poly& a, const Poly& b) const {
        Poly c(k_);
        for (int i = 0; i < k_; ++i) c[i] = (a[i] + b[i]) % p_;
        return c;
    }
    // Product reduced modulo the monic modulus x^k + sum m_i x^i.
    Poly poly_mulmod(const Poly& a, const Poly& b) const {
        std::vector<int> c(2 * k_, 0);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
        for (int d = 2 * k_ - 1; d >= k_; --d) {
            const int lead = c[d];
            if (lead == 0) continue;
            c[d] = 0;
            for (int i = 0; i < k_; ++i) c[d - k_ + i] = ((c[d - k_ + i] - lead * modulus_[i]) % p_ + p_) % p_;
        }
        return Poly(c.begin(), c.begin() + k_);
    }
    // Lowest-encoded monic irreducible of degree k, by trial division.
    Poly find_irreducible() const {
        if (k_ == 1) return Poly{0};
        const int total = ipow(p_, k_);
        for (int code = 0; code < total; ++code) {
            Poly f(k_);
            int c = code;
            for (int i = 0; i < k_; ++i) {
                f[i] = c % p_;
                c /= p_;
            }
            if (is_irreducible(f)) return f;
        }
        throw std::logic_error("no irreducible polynomial found");
    }
    bool is_irreducible(const Poly& tail) const {
        // Full monic polynomial coefficients, degree k.
        std::vector<int> f(tail.begin(), tail.end());
        f.push_back(1);
        for (int deg = 1; deg <= k_ / 2; ++deg) {
            const int count = ipow(p_, deg);
            for (int code = 0; code < count; ++code) {
                std::vector<int> g(deg + 1);
                int c = code;
                for (int i = 0; i < deg; ++i) {
                    g[i] = c % p_;
                    c /= p_;
                }
                g[deg] = 1;
                if (divides(g, f)) return false;
            }
        }
        return true;
    }
    bool divides(const std::vector<int>& g, std::vector<int> f) const {
        const int dg = static_cast<int>(g.size()) - 1;
        for (int d = static_cast<int>(f.size()) - 1; d >= dg; --d) {
            const int lead = f[d];
            if (lead == 0) continue;
            for (int i = 0; i <= dg; ++i) f[d - dg + i] = ((f[d - dg + i] - lead * g[i]) % p_ + p_) % p_;
        }
        for (int i = 0; i < dg; ++i)
            if (f[i] != 0) return false;
        return true;
    }
    static int ipow(int b, int e) {
        int r = 1;
        while (e-- > 0) r *= b;
        return r;
    }

    int q_ = 0, p_ = 0, k_ = 0;
    Poly modulus_;
    std::vector<int> add_, mul_;
    std::vector<bool> square_;
};

}  // namespace qiso

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qiso {

/// Exact rational scalar. Arithmetic results are canonical; the two-argument
/// constructor is not (see frac).
using Rational = mpq_class;
using Integer = mpz_class;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// "num/den" rendering used by every serialized output.
// mpq_class(n, d) does not reduce; always build fractions through this.
inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "a/b" or a bare integer "a".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator: '" + s + "'");
    }
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("RatMatrix: entry count does not match shape");
        }
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RatMatrix column(const std::vector<Rational>& v) { return RatMatrix(v.size(), 1, v); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Rational>& entries() const { return data_; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("RatMatrix product: inner dimensions differ");
        RatMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    std::vector<Rational> x;  // empty when inconsistent
};

namespace detail {

// Fraction-free forward elimination of an integer matrix in place. Pivots are
// taken column by column from the lowest-index remaining row with a nonzero
// entry. Returns the pivot column of each pivot row.
inline std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<Integer>>& m, std::size_t pivot_cols) {
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    Integer rem;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(m[p], m[r]);
        const Integer& piv = m[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            auto& row = m[i];
            const Integer lead = row[c];
            for (std::size_t j = c; j < row.size(); ++j) {
                Integer v = piv * row[j] - lead * m[r][j];
                mpz_tdiv_qr(row[j].get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Solves A·X = B column by column. Each right-hand column gets its own
/// report; the particular solution sets every free variable to zero, so the
/// result depends only on (A, b).
inline std::vector<LinearSolution> solve_linear_exact_multi(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("solve_linear_exact: A and b have different row counts");
    const std::size_t rows = a.rows();
    const std::size_t n = a.cols();
    const std::size_t nrhs = b.cols();

    // Clear denominators row by row so elimination runs over the integers.
    std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(n + nrhs));
    for (std::size_t i = 0; i < rows; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < nrhs; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
        for (std::size_t j = 0; j < nrhs; ++j) m[i][n + j] = b(i, j).get_num() * (l / b(i, j).get_den());
    }

    const auto pivots = detail::bareiss_echelon(m, n);
    const std::size_t rank = pivots.size();

    std::vector<LinearSolution> out(nrhs);
    for (std::size_t col = 0; col < nrhs; ++col) {
        LinearSolution& sol = out[col];
        sol.rank = rank;
        sol.consistent = true;
        for (std::size_t i = rank; i < rows; ++i) {
            if (m[i][n + col] != 0) {
                sol.consistent = false;
                break;
            }
        }
        if (!sol.consistent) continue;
        sol.x.assign(n, Rational(0));
        for (std::size_t k = rank; k-- > 0;) {
            const std::size_t pc = pivots[k];
            Rational acc(m[k][n + col]);
            for (std::size_t j = pc + 1; j < n; ++j) {
                if (m[k][j] != 0 && sol.x[j] != 0) acc -= Rational(m[k][j]) * sol.x[j];
            }
            sol.x[pc] = acc / Rational(m[k][pc]);
        }
    }
    return out;
}

inline LinearSolution solve_linear_exact(const RatMatrix& a, const RatMatrix& b) {
    if (b.cols() != 1) throw DimensionError("solve_linear_exact: b must be a single column");
    return solve_linear_exact_multi(a, b).front();
}

/// Dense univariate polynomial, coefficient index = degree.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }

    /// Human-readable form in the variable `var`, highest degree first.
    std::string to_string(const std::string& var = "n") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const Rational& q = c_[k];
            if (q == 0) continue;
            Rational mag = abs(q);
            if (out.empty()) {
                if (q < 0) out += "-";
            } else {
                out += q < 0 ? " - " : " + ";
            }
            const bool unit = mag == 1 && k > 0;
            if (!unit) out += mag.get_str();
            if (k > 0) {
                if (!unit) out += "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Newton divided-difference interpolation through every sample.
inline UniPoly poly_interpolate(const std::vector<std::pair<Rational, Rational>>& samples) {
    const std::size_t m = samples.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (samples[i].first == samples[j].first)
                throw std::invalid_argument("poly_interpolate: duplicate abscissa " + samples[i].first.get_str());

    std::vector<Rational> dd(m);
    for (std::size_t i = 0; i < m; ++i) dd[i] = samples[i].second;
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = m - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (samples[i].first - samples[i - level].first);

    UniPoly result;
    for (std::size_t i = m; i-- > 0;) {
        // result = result * (x - x_i) + dd[i]
        result = result * UniPoly({-samples[i].first, Rational(1)}) + UniPoly({dd[i]});
    }
    return result;
}

}  // namespace qiso

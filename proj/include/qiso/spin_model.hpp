#pragma once

#include "qiso/hadamard.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <array>
#include <iomanip>
#include <optional>
#include <sstream>

namespace qiso {

using HPFloat = boost::multiprecision::mpfr_float;

/// Minimal complex arithmetic over HPFloat (no MPC dependency).
struct HPComplex {
    HPFloat re{0}, im{0};

    HPComplex() = default;
    HPComplex(HPFloat r, HPFloat i = 0) : re(std::move(r)), im(std::move(i)) {}

    friend HPComplex operator+(const HPComplex& a, const HPComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend HPComplex operator-(const HPComplex& a, const HPComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend HPComplex operator-(const HPComplex& a) { return {-a.re, -a.im}; }
    friend HPComplex operator*(const HPComplex& a, const HPComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend HPComplex operator/(const HPComplex& a, const HPComplex& b) {
        const HPFloat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    HPComplex& operator+=(const HPComplex& b) { return *this = *this + b; }

    HPFloat abs() const { return boost::multiprecision::sqrt(re * re + im * im); }

    /// Principal square root (branch cut on the negative real axis).
    HPComplex sqrt() const {
        const HPFloat r = abs();
        HPFloat a = boost::multiprecision::sqrt((r + re) / 2);
        HPFloat b = boost::multiprecision::sqrt((r - re) / 2);
        if (im < 0) b = -b;
        return {a, b};
    }
};

/// Sets the default MPFR precision (decimal digits) for a scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits) : saved_(HPFloat::default_precision()) { HPFloat::default_precision(digits); }
    ~PrecisionScope() { HPFloat::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

struct SpinModelReport {
    int n = 0;
    unsigned digits = 0;
    HPComplex s;
    std::array<HPComplex, 5> t;
    HPFloat root_residual;      // |s^2 + 2(2n-1)s + 1|
    HPFloat hadamard_residual;  // max |W+ o W- - J|
    HPFloat product_residual;   // max |W+ W- - 4n I|
    HPFloat tolerance;

    bool hadamard_ok() const { return hadamard_residual <= tolerance; }
    bool product_ok() const { return product_residual <= tolerance; }
    bool ok() const { return hadamard_ok() && product_ok(); }
};

/// Builds W+ = sum t_j A_j and W- = sum t_j^{-1} A_j from
///   s^2 + 2(2n-1)s + 1 = 0,  t0^2 = 2 sqrt(n) / ((4n-1)s + 1),  t1 = 1,
///   t2 = s t0,  t3 = -t1,  t4 = t0,
/// with s = -(2n-1) + 2 sqrt(n(n-1)) and the principal root for t0, and
/// measures both spin-model identities. Tolerance 10^(-digits/2) unless given.
inline SpinModelReport spin_model_diagnostic(const HadamardGraphBundle& b, unsigned digits = 50,
                                             std::optional<HPFloat> tolerance = std::nullopt) {
    PrecisionScope scope(digits);
    SpinModelReport rep;
    rep.n = b.n;
    rep.digits = digits;
    const HPFloat n = b.n;
    const HPFloat s = -(2 * n - 1) + 2 * boost::multiprecision::sqrt(n * (n - 1));
    rep.s = HPComplex(s);
    rep.root_residual = boost::multiprecision::abs(s * s + 2 * (2 * n - 1) * s + 1);
    const HPComplex t0 = HPComplex(2 * boost::multiprecision::sqrt(n) / ((4 * n - 1) * s + 1)).sqrt();
    const HPComplex t1(1);
    rep.t = {t0, t1, HPComplex(s) * t0, -t1, t0};
    rep.tolerance = tolerance ? *tolerance : HPFloat(boost::multiprecision::pow(HPFloat(10), -static_cast<int>(digits) / 2));

    const auto& sc = b.scheme;
    const std::size_t N = sc.size();
    std::array<HPComplex, 5> inv;
    for (int j = 0; j < 5; ++j) inv[j] = HPComplex(1) / rep.t[j];
    rep.hadamard_residual = 0;
    rep.product_residual = 0;
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            const int r = sc.relation(x, y);
            rep.hadamard_residual = boost::multiprecision::max(rep.hadamard_residual, (rep.t[r] * inv[r] - HPComplex(1)).abs());
            HPComplex acc;
            for (std::size_t z = 0; z < N; ++z) acc += rep.t[sc.relation(x, z)] * inv[sc.relation(z, y)];
            if (x == y) acc = acc - HPComplex(HPFloat(4 * b.n));
            rep.product_residual = boost::multiprecision::max(rep.product_residual, acc.abs());
        }
    return rep;
}

inline std::string format_hp(const HPFloat& v, int digits = 6) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace qiso

#pragma once

#include "qiso/hadamard.hpp"
#include "qiso/scaffold.hpp"

namespace qiso {

/// The Hadamard scheme of order n; n = 1 uses the role scheme of 2K_2.
inline AssociationScheme hadamard_scheme_of_order(int n) {
    const auto h = hadamard_of_order(n);
    return n == 1 ? hadamard_role_scheme(h) : build_hadamard_graph(h).scheme;
}

/// Orders with a catalogued Hadamard matrix, in increasing order.
inline std::vector<int> catalogued_orders() { return {1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 40, 44, 48}; }

class PolynomialMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct HomPolynomial {
    UniPoly poly;
    std::vector<std::pair<int, Rational>> samples;
    int holdout = 0;
    Rational holdout_value;
};

struct HomPolynomialOptions {
    std::vector<int> selector{1};
    unsigned jobs = 1;
    ScaffoldOptions scaffold;
};

/// Interpolates hom(F, Hadamard graph of order n) as a polynomial in n from
/// the given orders and checks it at `holdout`.
inline HomPolynomial hom_polynomial(const AbstractGraph& f, const std::vector<int>& orders, int holdout,
                                    const HomPolynomialOptions& opt = {}) {
    if (orders.size() < f.vertices.size() + 1)
        throw std::invalid_argument("need at least " + std::to_string(f.vertices.size() + 1) + " orders for a graph on " +
                                    std::to_string(f.vertices.size()) + " vertices, got " + std::to_string(orders.size()));
    if (std::find(orders.begin(), orders.end(), holdout) != orders.end())
        throw std::invalid_argument("held-out order " + std::to_string(holdout) + " is also an interpolation order");
    HomPolynomial out;
    auto count_at = [&](int n) {
        const auto s = hadamard_scheme_of_order(n);
        const auto t = compute_tables(s, opt.jobs);
        return hom_count_algebraic(s, t, opt.selector, f, opt.scaffold);
    };
    std::vector<std::pair<Rational, Rational>> pts;
    for (int n : orders) {
        const Rational v = count_at(n);
        out.samples.emplace_back(n, v);
        pts.emplace_back(n, v);
    }
    out.poly = poly_interpolate(pts);
    out.holdout = holdout;
    out.holdout_value = count_at(holdout);
    if (out.poly(Rational(holdout)) != out.holdout_value)
        throw PolynomialMismatch("interpolated polynomial " + out.poly.to_string("n") + " predicts " +
                                 to_fraction_string(out.poly(Rational(holdout))) + " at n=" + std::to_string(holdout) +
                                 " but the count is " + to_fraction_string(out.holdout_value));
    return out;
}

}  // namespace qiso

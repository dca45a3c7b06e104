#pragma once

#include "qiso/exact_math.hpp"
#include "qiso/plane_graph.hpp"
#include "qiso/scheme.hpp"

#include <cmath>
#include <cstdint>

namespace qiso {

/// Simple target graph on vertices 0..n-1, adjacency as a dense byte matrix.
struct ConcreteGraph {
    std::size_t n = 0;
    std::vector<std::uint8_t> adj;

    bool adjacent(std::size_t x, std::size_t y) const { return adj[x * n + y] != 0; }

    /// Union of the selected relations of a scheme.
    static ConcreteGraph from_scheme(const AssociationScheme& s, const std::vector<int>& selector) {
        std::vector<bool> sel(static_cast<std::size_t>(s.rank()), false);
        for (int i : selector) sel.at(static_cast<std::size_t>(i)) = true;
        ConcreteGraph g{s.size(), std::vector<std::uint8_t>(s.size() * s.size())};
        for (std::size_t x = 0; x < g.n; ++x)
            for (std::size_t y = 0; y < g.n; ++y) g.adj[x * g.n + y] = sel[static_cast<std::size_t>(s.relation(x, y))];
        return g;
    }
};

class CostCapExceeded : public std::runtime_error {
public:
    CostCapExceeded(double cost, double cap)
        : std::runtime_error("elimination cost " + std::to_string(cost) + " exceeds cap " + std::to_string(cap)), cost_(cost) {}
    double cost() const { return cost_; }

private:
    double cost_;
};

struct OraclePlan {
    std::vector<int> order;  // elimination order over F's vertices
    int width = 0;           // largest eliminated clique minus one
};

/// Greedy min-degree elimination order of F's primal graph.
inline OraclePlan elimination_plan(const AbstractGraph& f) {
    std::map<int, std::set<int>> nb;
    for (int v : f.vertices) nb[v];
    for (const auto& e : f.edges)
        if (e.u != e.v) {
            nb[e.u].insert(e.v);
            nb[e.v].insert(e.u);
        }
    OraclePlan plan;
    while (!nb.empty()) {
        auto best = nb.begin();
        for (auto it = nb.begin(); it != nb.end(); ++it)
            if (it->second.size() < best->second.size()) best = it;
        const int v = best->first;
        const std::set<int> around = best->second;
        plan.order.push_back(v);
        plan.width = std::max(plan.width, static_cast<int>(around.size()));
        nb.erase(best);
        for (int a : around) {
            nb[a].erase(v);
            for (int b : around)
                if (a != b) nb[a].insert(b);
        }
    }
    return plan;
}

namespace detail {

using u128 = unsigned __int128;

inline u128 mul_checked(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("homomorphism count overflows 128 bits");
    return r;
}

inline u128 add_checked(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("homomorphism count overflows 128 bits");
    return r;
}

inline Integer to_integer(u128 v) {
    std::string digits;
    do {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    } while (v != 0);
    return Integer(digits);
}

struct Factor {
    std::vector<int> scope;  // positions in the variable list, increasing
    std::vector<u128> table;  // mixed radix n, first scope entry most significant
};

}  // namespace detail

/// Exact hom(F, G) by sum-product variable elimination. The cost
/// |X|^(width+1) is checked against `cost_cap` before any work.
inline Integer hom_count_oracle(const ConcreteGraph& g, const AbstractGraph& f, double cost_cap = 1e9) {
    using detail::u128;
    const auto plan = elimination_plan(f);
    const double cost = std::pow(static_cast<double>(g.n), plan.width + 1);
    if (cost > cost_cap) throw CostCapExceeded(cost, cost_cap);
    std::map<int, int> var;
    for (int v : f.vertices) var.emplace(v, static_cast<int>(var.size()));
    const std::size_t n = g.n;

    std::vector<detail::Factor> factors;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : f.edges) {
        const int a = var.at(e.u), b = var.at(e.v);
        if (!seen.insert(ordered(a, b)).second) continue;  // parallel copies change nothing
        detail::Factor fac;
        if (a == b) {
            fac.scope = {a};
            for (std::size_t x = 0; x < n; ++x) fac.table.push_back(g.adjacent(x, x));
        } else {
            fac.scope = {std::min(a, b), std::max(a, b)};
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) fac.table.push_back(g.adjacent(x, y));
        }
        factors.push_back(std::move(fac));
    }

    u128 scalar = 1;
    for (int v : plan.order) {
        const int x = var.at(v);
        std::vector<detail::Factor> touching, rest;
        for (auto& fac : factors)
            (std::find(fac.scope.begin(), fac.scope.end(), x) != fac.scope.end() ? touching : rest).push_back(std::move(fac));
        std::set<int> uni;
        for (const auto& fac : touching) uni.insert(fac.scope.begin(), fac.scope.end());
        uni.insert(x);
        const std::vector<int> full(uni.begin(), uni.end());
        std::vector<int> kept;
        for (int y : full)
            if (y != x) kept.push_back(y);
        std::size_t out_size = 1;
        for (std::size_t i = 0; i < kept.size(); ++i) out_size *= n;
        detail::Factor out{kept, std::vector<u128>(out_size, 0)};
        // Strides of each touching factor's variables inside `full`.
        std::vector<std::vector<std::size_t>> where(touching.size());
        for (std::size_t t = 0; t < touching.size(); ++t)
            for (int y : touching[t].scope)
                where[t].push_back(static_cast<std::size_t>(std::find(full.begin(), full.end(), y) - full.begin()));
        const std::size_t xpos = static_cast<std::size_t>(std::find(full.begin(), full.end(), x) - full.begin());
        std::vector<std::size_t> digit(full.size(), 0);
        std::size_t total = out_size * n;
        for (std::size_t step = 0; step < total; ++step) {
            u128 prod = 1;
            for (std::size_t t = 0; t < touching.size() && prod != 0; ++t) {
                std::size_t idx = 0;
                for (std::size_t p : where[t]) idx = idx * n + digit[p];
                prod = detail::mul_checked(prod, touching[t].table[idx]);
            }
            if (prod != 0) {
                std::size_t oidx = 0;
                for (std::size_t p = 0; p < full.size(); ++p)
                    if (p != xpos) oidx = oidx * n + digit[p];
                out.table[oidx] = detail::add_checked(out.table[oidx], prod);
            }
            for (std::size_t p = full.size(); p-- > 0;) {
                if (++digit[p] < n) break;
                digit[p] = 0;
            }
        }
        factors = std::move(rest);
        if (kept.empty()) scalar = detail::mul_checked(scalar, out.table[0]);
        else factors.push_back(std::move(out));
    }
    return detail::to_integer(scalar);
}

/// Plain enumeration of all |X|^|V(F)| maps; for cross-checking only.
inline Integer hom_count_brute_force(const ConcreteGraph& g, const AbstractGraph& f) {
    std::map<int, std::size_t> var;
    for (int v : f.vertices) var.emplace(v, var.size());
    std::vector<std::size_t> phi(var.size(), 0);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (const auto& e : f.edges)
            if (!g.adjacent(phi[var.at(e.u)], phi[var.at(e.v)])) {
                ok = false;
                break;
            }
        count += ok;
        std::size_t p = 0;
        while (p < phi.size() && ++phi[p] == g.n) phi[p++] = 0;
        if (p == phi.size()) break;
    }
    return Integer(std::to_string(count));
}

}  // namespace qiso

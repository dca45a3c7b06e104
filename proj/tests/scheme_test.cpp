#include "qiso/hadamard.hpp"
#include "qiso/scheme.hpp"
#include "qiso/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qiso;

namespace {

AssociationScheme complete_scheme(std::size_t m) {
    std::vector<std::uint8_t> t(m * m, 1);
    for (std::size_t i = 0; i < m; ++i) t[i * m + i] = 0;
    return validate_scheme(m, 1, std::move(t));
}

AssociationScheme cycle_distance_scheme(std::size_t m) {
    std::vector<std::uint8_t> t(m * m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
            const std::size_t d = (x + m - y) % m;
            t[x * m + y] = static_cast<std::uint8_t>(std::min(d, m - d));
        }
    return validate_scheme(m, static_cast<int>(m / 2), std::move(t));
}

// Dense product of two 0/1 relation matrices of the scheme.
std::vector<long> dense_product(const AssociationScheme& s, const std::vector<long>& a, const std::vector<long>& b) {
    const std::size_t n = s.size();
    std::vector<long> c(n * n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
            if (a[x * n + z])
                for (std::size_t y = 0; y < n; ++y) c[x * n + y] += a[x * n + z] * b[z * n + y];
    return c;
}

std::vector<long> dense_of(const AssociationScheme& s, const BMElement& u) {
    const std::size_t n = s.size();
    std::vector<long> m(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) m[x * n + y] = u[s.relation(x, y)].get_num().get_si();
    return m;
}

// Reads basis coordinates off a dense matrix, requiring it to be constant on each relation.
BMElement read_off(const AssociationScheme& s, const std::vector<long>& m) {
    const std::size_t n = s.size();
    BMElement out = BMElement::zero(s.rank());
    std::vector<bool> seen(s.rank(), false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const int r = s.relation(x, y);
            if (!seen[r]) {
                seen[r] = true;
                out[r] = m[x * n + y];
            } else if (out[r] != m[x * n + y]) {
                ADD_FAILURE() << "dense product not in the Bose-Mesner algebra";
            }
        }
    return out;
}

}  // namespace

TEST(ValidateScheme, CompleteGraphOnThree) {
    const auto s = complete_scheme(3);
    EXPECT_EQ(s.classes(), 1);
    EXPECT_EQ(s.intersection()(1, 1, 1), 1);
    EXPECT_EQ(s.valency(1), 2);
}

TEST(ValidateScheme, AsymmetryRejected) {
    std::vector<std::vector<int>> m{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
    try {
        validate_scheme(m, 2);
        FAIL() << "expected asymmetry error";
    } catch (const SchemeError& e) {
        EXPECT_EQ(e.kind(), SchemeError::Kind::Asymmetry);
        ASSERT_FALSE(e.witnesses().empty());
    }
}

TEST(ValidateScheme, DiagonalAndEmptyRelation) {
    EXPECT_THROW(validate_scheme({{0, 0}, {0, 0}}, 1), SchemeError);
    try {
        validate_scheme({{0, 1}, {1, 0}}, 2);
        FAIL();
    } catch (const SchemeError& e) {
        EXPECT_EQ(e.kind(), SchemeError::Kind::EmptyRelation);
    }
}

TEST(ValidateScheme, NonConstantIntersectionReportsWitnesses) {
    // Path on 4 vertices with distance classes is not a scheme.
    std::vector<std::vector<int>> m{{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}};
    try {
        validate_scheme(m, 3);
        FAIL();
    } catch (const SchemeError& e) {
        EXPECT_EQ(e.kind(), SchemeError::Kind::IntersectionNotConstant);
        EXPECT_EQ(e.witnesses().size(), 2u);
    }
}

TEST(ValidateScheme, HadamardOrderTwoIsTheEightCycle) {
    const auto bundle = build_hadamard_graph(sylvester(1));
    const auto direct = cycle_distance_scheme(8);
    EXPECT_EQ(bundle.scheme.classes(), 4);
    // Same parameters as the distance scheme of C_8 computed directly.
    EXPECT_EQ(bundle.scheme.intersection(), direct.intersection());
    for (std::size_t v = 0; v < 8; ++v) {
        int deg = 0;
        for (std::size_t w = 0; w < 8; ++w) deg += bundle.adjacent(v, w);
        EXPECT_EQ(deg, 2);
    }
}

TEST(IntersectionNumbers, HadamardEntries) {
    for (int k : {1, 2, 3}) {
        const auto b = build_hadamard_graph(sylvester(k));
        const auto& p = b.scheme.intersection();
        const long n = b.n;
        EXPECT_EQ(p(1, 1, 2), n / 2);
        EXPECT_EQ(p(1, 1, 0), n);
        EXPECT_EQ(p(1, 2, 1), n - 1);
    }
}

TEST(IntersectionNumbers, AxiomsOnBundledSchemes) {
    std::vector<AssociationScheme> schemes{complete_scheme(5), cycle_distance_scheme(6), cycle_distance_scheme(7),
                                           build_hadamard_graph(sylvester(2)).scheme,
                                           build_hadamard_graph(paley1(11)).scheme};
    for (const auto& s : schemes) {
        const auto& p = s.intersection();
        const int r = s.rank();
        const auto k = p.valencies();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                long sum = 0;
                for (int kk = 0; kk < r; ++kk) {
                    EXPECT_EQ(p(i, j, kk), p(j, i, kk));
                    sum += p(i, j, kk) * k[kk];
                }
                EXPECT_EQ(sum, k[i] * k[j]);
                EXPECT_EQ(p(i, 0, j), i == j ? 1 : 0);
                long row = 0;
                for (int jj = 0; jj < r; ++jj) row += p(i, jj, j);
                EXPECT_EQ(row, k[i]);
            }
    }
}

TEST(BMProduct, HadamardSquareOfAdjacency) {
    for (int kk : {1, 2, 3}) {
        const auto b = build_hadamard_graph(sylvester(kk));
        const long n = b.n;
        const auto a1 = BMElement::basis(5, 1);
        const auto sq = bm_product(b.scheme.intersection(), a1, a1);
        EXPECT_EQ(sq, BMElement({Rational(n), 0, frac(n, 2), 0, 0}));
    }
}

TEST(BMProduct, IdentityAndAssociativity) {
    const auto b = build_hadamard_graph(sylvester(1));
    const auto& p = b.scheme.intersection();
    const auto a0 = BMElement::basis(5, 0), a1 = BMElement::basis(5, 1);
    const BMElement u({2, -1, frac(1, 3), 0, 5});
    EXPECT_EQ(bm_product(p, u, a0), u);
    EXPECT_EQ(bm_product(p, bm_product(p, a1, a1), a1), bm_product(p, a1, bm_product(p, a1, a1)));
}

TEST(BMProduct, AgreesWithDenseMultiplication) {
    std::vector<AssociationScheme> schemes{complete_scheme(4), cycle_distance_scheme(8),
                                           build_hadamard_graph(sylvester(2)).scheme,
                                           build_hadamard_graph(sylvester(4)).scheme};
    for (const auto& s : schemes) {
        const int r = s.rank();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                const auto ai = BMElement::basis(r, i), aj = BMElement::basis(r, j);
                const auto dense = dense_product(s, dense_of(s, ai), dense_of(s, aj));
                EXPECT_EQ(read_off(s, dense), bm_product(s.intersection(), ai, aj));
                EXPECT_EQ(bm_product(s.intersection(), ai, aj), bm_product(s.intersection(), aj, ai));
            }
    }
}

TEST(BMSchur, BasisIdentities) {
    const auto a1 = BMElement::basis(5, 1), a2 = BMElement::basis(5, 2);
    EXPECT_EQ(bm_schur(a1, a1), a1);
    EXPECT_EQ(bm_schur(a1, a2), BMElement::zero(5));
    EXPECT_EQ(bm_schur(BMElement({2, 3, 0, 0, 0}), BMElement({0, 1, 1, 0, 0})), BMElement({0, 3, 0, 0, 0}));
}

TEST(BMScalars, LoopAndPendant) {
    const auto b = build_hadamard_graph(sylvester(2));
    const auto k = b.scheme.intersection().valencies();
    EXPECT_EQ(bm_loop_scalar(BMElement::basis(5, 0)), 1);
    EXPECT_EQ(bm_loop_scalar(BMElement::basis(5, 1)), 0);
    EXPECT_EQ(bm_pendant_scalar(BMElement::basis(5, 1), k), 4);
    EXPECT_EQ(bm_pendant_scalar(BMElement::all_ones(5), k), 16);
}

TEST(NumericSpectrum, HadamardOrderFour) {
    const auto b = build_hadamard_graph(sylvester(2));
    const auto sp = numeric_spectrum(b.scheme, 1e-6);
    const double expected[5] = {1, 2, 0, -2, -1};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(sp.P(1, i), expected[i], 1e-8);
    EXPECT_EQ(sp.Nq, 35);
    EXPECT_TRUE(sp.formally_self_dual);
    EXPECT_LT(sp.pq_residual, 1e-8);
    EXPECT_TRUE(sp.separated);
}

TEST(NumericSpectrum, KreinSupportMatchesIntersectionSupport) {
    // Formally self-dual: Nq = Np, which is 35 except at n = 2 where
    // q_22^2 = p_22^2 = 2n - 4 = 0.
    for (int k : {1, 2, 3}) {
        const auto b = build_hadamard_graph(sylvester(k));
        const auto sp = numeric_spectrum(b.scheme, 1e-6);
        EXPECT_EQ(sp.Nq, b.n == 2 ? 34 : 35) << "n=" << b.n;
        EXPECT_EQ(sp.Nq, b.scheme.intersection().support_size());
        EXPECT_GT(sp.min_krein, -1e-6);
        EXPECT_LT((sp.P * sp.P - 4.0 * b.n * Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-6);
    }
}

TEST(NumericSpectrum, OneClassScheme) {
    for (std::size_t m : {3u, 5u, 8u}) {
        const auto sp = numeric_spectrum(complete_scheme(m));
        EXPECT_NEAR(sp.P(0, 0), 1, 1e-9);
        EXPECT_NEAR(sp.P(0, 1), double(m) - 1, 1e-9);
        EXPECT_NEAR(sp.P(1, 0), 1, 1e-9);
        EXPECT_NEAR(sp.P(1, 1), -1, 1e-9);
    }
}

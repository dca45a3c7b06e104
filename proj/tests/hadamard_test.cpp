#include "qiso/hadamard.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>

using namespace qiso;

namespace {

// Distribution of |sum_j h_aj h_bj h_cj h_dj| over row 4-sets: invariant
// under row/column permutation and negation.
std::map<int, int> four_profile(const HadamardMatrix& h) {
    std::map<int, int> out;
    const int n = h.order();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    int s = 0;
                    for (int j = 0; j < n; ++j) s += h(a, j) * h(b, j) * h(c, j) * h(d, j);
                    ++out[std::abs(s)];
                }
    return out;
}

}  // namespace

TEST(GenerateHadamard, SylvesterOne) {
    const auto h = sylvester(1);
    EXPECT_EQ(h.to_text(), "++\n+-\n");
}

TEST(GenerateHadamard, PaleyThreeAndEleven) {
    EXPECT_EQ(paley1(3).order(), 4);
    EXPECT_EQ(paley1(11).order(), 12);
    EXPECT_EQ(paley1(27).order(), 28);  // GF(27)
    EXPECT_THROW(paley1(5), HadamardError);
    EXPECT_THROW(paley1(15), HadamardError);
}

TEST(GenerateHadamard, KroneckerOrder24) {
    const auto h = kron(sylvester(1), paley1(11));
    EXPECT_EQ(h.order(), 24);
}

TEST(GenerateHadamard, CatalogueCoversInterpolationOrders) {
    for (int n : {1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 40, 44, 48}) EXPECT_EQ(hadamard_of_order(n).order(), n);
    EXPECT_THROW(hadamard_of_order(6), HadamardError);
}

TEST(GenerateHadamard, TextRoundTripAndRejection) {
    const auto h = paley1(7);
    EXPECT_EQ(parse_hadamard_text(h.to_text()), h);
    try {
        parse_hadamard_text("++\n++\n");
        FAIL();
    } catch (const HadamardError& e) {
        EXPECT_NE(std::string(e.what()).find("rows 0 and 1"), std::string::npos);
    }
    EXPECT_THROW(parse_hadamard_text("+x\n+-\n"), HadamardError);
}

TEST(HadamardGraph, OrderTwoIsEightCycleWithArray) {
    const auto b = build_hadamard_graph(sylvester(1));
    EXPECT_EQ(b.vertex_count(), 8u);
    const auto& p = b.scheme.intersection();
    // Intersection array {b0,b1,b2,b3; c1,c2,c3,c4} = {2,1,1,1; 1,1,1,2}.
    const long bs[4] = {p(1, 1, 0), p(1, 2, 1), p(1, 3, 2), p(1, 4, 3)};
    const long cs[4] = {p(1, 0, 1), p(1, 1, 2), p(1, 2, 3), p(1, 3, 4)};
    EXPECT_EQ(std::vector<long>(bs, bs + 4), (std::vector<long>{2, 1, 1, 1}));
    EXPECT_EQ(std::vector<long>(cs, cs + 4), (std::vector<long>{1, 1, 1, 2}));
}

TEST(HadamardGraph, OrderFourParameters) {
    const auto b = build_hadamard_graph(sylvester(2));
    EXPECT_EQ(b.vertex_count(), 16u);
    EXPECT_EQ(b.scheme.intersection()(1, 1, 2), 2);
}

TEST(HadamardGraph, RowNegationKeepsParameters) {
    const auto h = sylvester(2);
    std::vector<std::int8_t> e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e.push_back(static_cast<std::int8_t>((i == 1 ? -1 : 1) * h(i, j)));
    const HadamardMatrix neg(4, e, "negated row 1");
    const auto a = build_hadamard_graph(h);
    const auto b = build_hadamard_graph(neg);
    EXPECT_EQ(a.scheme.intersection(), b.scheme.intersection());
    EXPECT_EQ(b.provenance, "negated row 1");
}

TEST(HadamardGraph, TablesHoldAcrossConstructions) {
    for (int n : {2, 4, 8, 12, 16, 20, 24}) {
        const auto b = build_hadamard_graph(hadamard_of_order(n));
        EXPECT_EQ(b.scheme.intersection(), hadamard_intersection_tensor(n)) << n;
    }
}

TEST(HadamardGraph, OrderOneNeedsRoleScheme) {
    EXPECT_THROW(build_hadamard_graph(sylvester(0)), HadamardError);
    const auto s = hadamard_role_scheme(sylvester(0));
    EXPECT_EQ(s.classes(), 3);
    EXPECT_EQ(s.valency(1), 1);
}

TEST(HadamardGraph, RoleSchemeEqualsDistanceScheme) {
    for (int n : {2, 4, 12}) {
        const auto h = hadamard_of_order(n);
        EXPECT_TRUE(hadamard_role_scheme(h) == build_hadamard_graph(h).scheme);
    }
}

TEST(HadamardGraph, BundledOrderSixteenIsInequivalentToSylvester) {
    std::ifstream in(std::string(QISO_DATA_DIR) + "/hadamard16_z8xz2.txt");
    ASSERT_TRUE(in.good());
    const auto h = read_hadamard_text(in);
    EXPECT_EQ(h.order(), 16);
    EXPECT_NE(four_profile(h), four_profile(sylvester(4)));
    EXPECT_NE(four_profile(h.transposed()), four_profile(sylvester(4)));
    EXPECT_EQ(build_hadamard_graph(h).scheme.intersection(), hadamard_intersection_tensor(16));
}

#include "qiso/certifier.hpp"
#include "qiso/hadamard.hpp"
#include "test_schemes.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace qiso;

namespace {

AssociationScheme bundled_order16() {
    std::ifstream in(std::string(QISO_DATA_DIR) + "/hadamard16_z8xz2.txt");
    return build_hadamard_graph(read_hadamard_text(in, "bundled")).scheme;
}

CertifyOptions small_corpus() {
    CertifyOptions o;
    o.corpus.resize(10);
    return o;
}

}  // namespace

TEST(Matching, SchemeAgainstItselfContainsIdentity) {
    for (const auto& s : {build_hadamard_graph(sylvester(2)).scheme, qiso::testing::cycle_distance_scheme(7)}) {
        const auto m = match_relation_orderings(s, s);
        ASSERT_FALSE(m.empty());
        std::vector<int> id(static_cast<std::size_t>(s.rank()));
        std::iota(id.begin(), id.end(), 0);
        EXPECT_EQ(m.front().pi, id);
    }
}

TEST(Matching, RelabelledSchemeIsFound) {
    const auto s = build_hadamard_graph(sylvester(3)).scheme;
    const std::vector<int> perm{0, 3, 4, 1, 2};
    const auto t = s.relabeled(perm);
    const auto m = match_relation_orderings(s, t);
    EXPECT_NE(std::find(m.begin(), m.end(), BasisMatching{perm}), m.end());
    for (const auto& b : m) EXPECT_TRUE(qiso::detail::structure_preserved(s.intersection(), t.intersection(), b.pi));
}

TEST(Matching, TripleNumbersPruneFurther) {
    // The 7-cycle's distance relations are all valency 2; only the
    // multiplier automorphisms of Z_7 survive.
    const auto s = qiso::testing::cycle_distance_scheme(7);
    const auto u = upsilon_table(s);
    const auto p_only = match_relation_orderings(s, s);
    const auto with_u = match_relation_orderings(s, s, &u, &u);
    EXPECT_LE(with_u.size(), p_only.size());
    EXPECT_FALSE(with_u.empty());
    EXPECT_TRUE(std::is_sorted(p_only.begin(), p_only.end()));
}

TEST(Matching, HadamardOrdersDoNotMatch) {
    EXPECT_TRUE(match_relation_orderings(build_hadamard_graph(sylvester(2)).scheme, build_hadamard_graph(sylvester(3)).scheme).empty());
    EXPECT_THROW(match_relation_orderings(build_hadamard_graph(sylvester(2)).scheme, qiso::testing::complete_scheme(16)), MatchingError);
}

TEST(Matching, InequivalentOrderSixteenMatricesMatch) {
    const auto a = build_hadamard_graph(sylvester(4)).scheme;
    const auto b = bundled_order16();
    EXPECT_FALSE(a == b);
    const auto ua = upsilon_table(a), ub = upsilon_table(b);
    EXPECT_FALSE(match_relation_orderings(a, b, &ua, &ub).empty());
}

TEST(Certify, SchemeAgainstItselfPasses) {
    const auto s = build_hadamard_graph(sylvester(2)).scheme;
    for (const std::vector<int>& sel : {std::vector<int>{1}, std::vector<int>{2}, std::vector<int>{1, 3}, std::vector<int>{1, 2, 3, 4}}) {
        const auto c = certify_quantum_isomorphism(s, sel, s, small_corpus());
        EXPECT_TRUE(c.pass) << c.failed_stage << ": " << c.witness;
        EXPECT_EQ(c.selector_b, c.selector_a);
    }
}

TEST(Certify, OrderSixteenHadamardGraphsPass) {
    const auto a = build_hadamard_graph(sylvester(4)).scheme;
    const auto b = bundled_order16();
    const auto c = certify_quantum_isomorphism(a, {1}, b);
    ASSERT_TRUE(c.pass) << c.failed_stage << ": " << c.witness;
    EXPECT_EQ(c.verdict(), "PASS");
    EXPECT_TRUE(c.rho_shared);
    EXPECT_TRUE(c.products_preserved);
    EXPECT_EQ(c.cross_checks.size(), default_cross_check_corpus().size());
    for (std::size_t i = 0; i < c.cross_checks.size(); ++i) {
        const auto& x = c.cross_checks[i];
        EXPECT_EQ(x.hom_a, x.hom_b) << x.name;
        EXPECT_EQ(x.oracle_a.has_value(), i < 3) << x.name;
    }
    EXPECT_NE(c.a.fingerprint, c.b.fingerprint);
}

TEST(Certify, DifferentClassCountFailsAtMatching) {
    const auto c = certify_quantum_isomorphism(build_hadamard_graph(sylvester(2)).scheme, {1}, qiso::testing::complete_scheme(16),
                                               small_corpus());
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.failed_stage, "matching");
    EXPECT_EQ(c.verdict(), "no certificate found");
    const auto text = certificate_to_json(c).dump();
    EXPECT_EQ(text.find("not quantum isomorphic"), std::string::npos);
}

TEST(Certify, NotTriplyRegularFailsWithWitness) {
    const auto c = certify_quantum_isomorphism(qiso::testing::rook_scheme(), {1}, qiso::testing::shrikhande_scheme(), small_corpus());
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.failed_stage, "exactly-triply-regular");
    EXPECT_NE(c.witness.find("scheme B"), std::string::npos);
    EXPECT_TRUE(c.a.triply_regular);
    EXPECT_FALSE(c.b.triply_regular);
}

TEST(Certify, RejectsSelectorOutsideClasses) {
    const auto s = build_hadamard_graph(sylvester(1)).scheme;
    EXPECT_THROW(certify_quantum_isomorphism(s, {0}, s), std::invalid_argument);
    EXPECT_THROW(certify_quantum_isomorphism(s, {5}, s), std::invalid_argument);
}

TEST(Certify, JsonRoundTripAndReplay) {
    const auto a = build_hadamard_graph(sylvester(3)).scheme;
    const auto b = a.relabeled({0, 3, 2, 1, 4});
    const auto c = certify_quantum_isomorphism(a, {1}, b, small_corpus());
    ASSERT_TRUE(c.pass);
    EXPECT_EQ(c.selector_b, std::vector<int>{c.matching->pi[1]});
    const Json j = certificate_to_json(c);
    EXPECT_EQ(certificate_to_json(certificate_from_json(j)).dump(), j.dump());
    EXPECT_TRUE(replay_certificate(certificate_from_json(j), a, b));
    // A different input no longer carries the fingerprint.
    EXPECT_FALSE(replay_certificate(c, a, a));
}

TEST(Certify, DeterministicAcrossJobCounts) {
    const auto a = build_hadamard_graph(sylvester(3)).scheme;
    auto o = small_corpus();
    const auto one = certificate_to_json(certify_quantum_isomorphism(a, {1}, a, o)).dump();
    o.jobs = 3;
    EXPECT_EQ(certificate_to_json(certify_quantum_isomorphism(a, {1}, a, o)).dump(), one);
}

TEST(Certify, DefaultCorpusShape) {
    const auto corpus = default_cross_check_corpus();
    // K_1, 52 connected simple graphs with 1..6 edges, five named graphs.
    EXPECT_EQ(corpus.size(), 58u);
    EXPECT_EQ(corpus.front().name, "K1");
    EXPECT_EQ(corpus.back().name, "C4+cube-minus-vertex");
    for (std::size_t i = 1; i + 5 < corpus.size(); ++i) EXPECT_LE(corpus[i].graph.edges.size(), 6u);
}

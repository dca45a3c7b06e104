#include "qiso/graph_corpus.hpp"
#include "qiso/planar_embedding.hpp"
#include "qiso/reduction.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qiso;

namespace {

PlaneGraph embed(const AbstractGraph& g) { return embed_planar(g); }

// Rotation taken from edge order alone; planar only by luck.
PlaneGraph naive_rotation(const AbstractGraph& a) {
    std::map<int, std::vector<EdgeEnd>> rot;
    for (const auto& e : a.edges) {
        rot[e.u].push_back({e.id, 0});
        rot[e.v].push_back({e.id, 1});
    }
    return PlaneGraph(a.vertices, a.edges, rot);
}

AbstractGraph relabel(const AbstractGraph& g, std::uint64_t seed) {
    std::vector<int> perm(g.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<int, int> to;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) to[g.vertices[i]] = 100 + perm[i];
    AbstractGraph h;
    for (int v : g.vertices) h.vertices.push_back(to[v]);
    auto edges = g.edges;
    std::shuffle(edges.begin(), edges.end(), rng);
    int id = 50;
    for (const auto& e : edges) h.edges.push_back({id++, to[e.v], to[e.u]});
    return h;
}

}  // namespace

TEST(ValidateEmbedding, FourCliqueHasFourFaces) {
    // Planar rotation of K_4 by hand: 0 at the centre of triangle 1-2-3.
    const auto a = AbstractGraph::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}});
    std::map<int, std::vector<EdgeEnd>> rot{{0, {{0, 0}, {1, 0}, {2, 0}}},
                                            {1, {{0, 1}, {5, 1}, {3, 0}}},
                                            {2, {{1, 1}, {3, 1}, {4, 0}}},
                                            {3, {{2, 1}, {4, 1}, {5, 0}}}};
    EXPECT_EQ(validate_embedding(PlaneGraph(a.vertices, a.edges, rot)), 4);
    EXPECT_EQ(validate_embedding(embed(named::complete(4))), 4);
}

TEST(ValidateEmbedding, FiveCliqueHasNoPlanarRotation) {
    try {
        validate_embedding(naive_rotation(named::complete(5)));
        FAIL();
    } catch (const EmbeddingError& e) {
        EXPECT_EQ(e.kind(), EmbeddingError::Kind::Genus);
        EXPECT_EQ(e.V(), 5);
        EXPECT_EQ(e.E(), 10);
        EXPECT_NE(e.V() - e.E() + e.F(), 2);
    }
    EXPECT_THROW(embed_planar(named::complete(5)), EmbeddingError);
}

TEST(ValidateEmbedding, SingleLoopHasTwoFaces) {
    const PlaneGraph g({0}, {{0, 0, 0}}, {{0, {{0, 0}, {0, 1}}}});
    EXPECT_EQ(validate_embedding(g), 2);
}

TEST(ValidateEmbedding, RejectsInconsistentRotation) {
    const PlaneGraph missing({0, 1}, {{0, 0, 1}}, {{0, {{0, 0}}}, {1, {}}});
    try {
        validate_embedding(missing);
        FAIL();
    } catch (const EmbeddingError& e) {
        EXPECT_EQ(e.kind(), EmbeddingError::Kind::Rotation);
    }
    const PlaneGraph wrong_vertex({0, 1}, {{0, 0, 1}}, {{0, {{0, 1}}}, {1, {{0, 0}}}});
    EXPECT_THROW(validate_embedding(wrong_vertex), EmbeddingError);
}

TEST(EmbedPlanar, FaceCountsFollowEuler) {
    EXPECT_EQ(validate_embedding(embed(named::complete_bipartite(2, 3))), 3);
    EXPECT_EQ(validate_embedding(embed(named::cube())), 6);
    EXPECT_EQ(validate_embedding(embed(named::octahedron())), 8);
    EXPECT_EQ(validate_embedding(embed(named::grid(4, 4))), 10);
    EXPECT_EQ(validate_embedding(embed(named::wheel(5))), 6);
    // Two blocks sharing a cut vertex, plus a bridge.
    EXPECT_EQ(validate_embedding(embed(AbstractGraph::from_pairs(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}, {4, 5}}))), 3);
}

TEST(EmbedPlanar, ThreeByThreeBipartiteIsRejected) {
    try {
        embed_planar(named::complete_bipartite(3, 3));
        FAIL();
    } catch (const EmbeddingError& e) {
        EXPECT_EQ(e.kind(), EmbeddingError::Kind::NotPlanar);
    }
}

TEST(EmbedPlanar, LoopsAndParallelEdges) {
    const auto a = AbstractGraph::from_pairs(3, {{0, 1}, {0, 1}, {1, 1}, {1, 2}, {1, 2}, {1, 2}, {2, 0}, {0, 0}});
    const auto g = embed(a);
    // V - E + F = 2 with V = 3, E = 8.
    EXPECT_EQ(validate_embedding(g), 7);
}

TEST(EmbedPlanar, WholeSmallCorpus) {
    for (const auto& a : connected_graphs(6)) EXPECT_NO_THROW(embed_planar(a));
}

TEST(Moves, TriangleBecomesStar) {
    const auto g = embed(named::cycle(3));
    const auto moves = find_applicable_moves(g);
    const auto it = std::find_if(moves.begin(), moves.end(), [](const Move& m) { return m.kind == MoveKind::delta_to_wye; });
    ASSERT_NE(it, moves.end());
    const auto h = apply_move(g, *it);
    EXPECT_EQ(h.vertex_count(), 4u);
    EXPECT_EQ(h.edge_count(), 3u);
    EXPECT_EQ(h.degree(it->created_vertex), 3u);
    for (int v : {0, 1, 2}) EXPECT_EQ(h.degree(v), 1u);
    EXPECT_EQ(validate_embedding(h), 1);
    // Edge placement: e1 = c-y, e2 = c-z, e3 = c-x.
    const int x = it->vertices[0], y = it->vertices[1], z = it->vertices[2], c = it->created_vertex;
    EXPECT_EQ(ordered(h.edge(it->edges[0]).u, h.edge(it->edges[0]).v), ordered(c, y));
    EXPECT_EQ(ordered(h.edge(it->edges[1]).u, h.edge(it->edges[1]).v), ordered(c, z));
    EXPECT_EQ(ordered(h.edge(it->edges[2]).u, h.edge(it->edges[2]).v), ordered(c, x));
}

TEST(Moves, StarBecomesFacialTriangle) {
    const auto g = embed(named::complete(4));
    const Move m{MoveKind::wye_to_delta, {0, 1, 2, 3}, {0, 1, 2}};
    const auto h = apply_move(g, m);
    EXPECT_EQ(h.vertex_count(), 3u);
    EXPECT_EQ(h.edge_count(), 6u);
    EXPECT_TRUE(detail::is_facial_triangle(h, {0, 1, 2}));
    EXPECT_EQ(ordered(h.edge(0).u, h.edge(0).v), ordered(2, 3));
    EXPECT_EQ(ordered(h.edge(1).u, h.edge(1).v), ordered(1, 3));
    EXPECT_EQ(ordered(h.edge(2).u, h.edge(2).v), ordered(1, 2));
}

TEST(Moves, ParallelAndSeries) {
    const auto two = embed(AbstractGraph::from_pairs(2, {{0, 1}, {0, 1}}));
    const auto one = apply_move(two, {MoveKind::parallel, {0, 1}, {0, 1}});
    EXPECT_EQ(one.edge_count(), 1u);
    EXPECT_TRUE(one.has_edge(0));

    const auto path = embed(named::path(3));
    const auto s = apply_move(path, {MoveKind::series, {1, 0, 2}, {0, 1}});
    EXPECT_EQ(s.vertex_count(), 2u);
    EXPECT_EQ(ordered(s.edge(0).u, s.edge(0).v), std::pair(0, 2));

    // Series through a vertex joined twice to the same neighbour gives a loop.
    const auto digon = embed(AbstractGraph::from_pairs(2, {{0, 1}, {1, 0}}));
    const auto loop = apply_move(digon, {MoveKind::series, {1, 0, 0}, {0, 1}});
    EXPECT_TRUE(loop.edge(0).is_loop());
    EXPECT_EQ(validate_embedding(loop), 2);
}

TEST(Moves, IllegalMovesNamePrecondition) {
    const auto k4 = embed(named::complete(4));
    try {
        apply_move(k4, {MoveKind::series, {0, 1, 2}, {0, 1}});
        FAIL();
    } catch (const IllegalMove& e) {
        EXPECT_NE(std::string(e.what()).find("not 2"), std::string::npos);
    }
    EXPECT_THROW(apply_move(k4, {MoveKind::loop, {0}, {0}}), IllegalMove);
    EXPECT_THROW(apply_move(k4, {MoveKind::pendent, {0, 1}, {0}}), IllegalMove);
    EXPECT_THROW(apply_move(k4, {MoveKind::parallel, {0, 1}, {0, 1}}), IllegalMove);
    // Series is refused at a vertex carrying a loop.
    const auto lp = embed(AbstractGraph::from_pairs(1, {{0, 0}}));
    EXPECT_THROW(apply_move(lp, {MoveKind::series, {0, 0, 0}, {0, 0}}), IllegalMove);
}

TEST(Moves, CountChangesAndPlanarityOnRandomWalks) {
    std::mt19937_64 rng(7);
    for (const auto& a : {named::cube(), named::octahedron(), named::wheel(5), named::grid(3, 4), named::complete(4)}) {
        PlaneGraph g = embed(a);
        for (int step = 0; step < 40 && !g.is_single_vertex(); ++step) {
            const auto moves = find_applicable_moves(g);
            ASSERT_FALSE(moves.empty());
            const auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
            const auto h = apply_move(g, m);
            EXPECT_NO_THROW(validate_embedding(h));
            EXPECT_TRUE(is_connected(h.abstract()));
            const long dV = static_cast<long>(h.vertex_count()) - static_cast<long>(g.vertex_count());
            const long dE = static_cast<long>(h.edge_count()) - static_cast<long>(g.edge_count());
            switch (m.kind) {
                case MoveKind::loop:
                case MoveKind::parallel: EXPECT_EQ(std::pair(dV, dE), std::pair(0L, -1L)); break;
                case MoveKind::pendent:
                case MoveKind::series: EXPECT_EQ(std::pair(dV, dE), std::pair(-1L, -1L)); break;
                case MoveKind::delta_to_wye: EXPECT_EQ(std::pair(dV, dE), std::pair(1L, 0L)); break;
                case MoveKind::wye_to_delta: EXPECT_EQ(std::pair(dV, dE), std::pair(-1L, 0L)); break;
            }
            g = h;
        }
    }
}

TEST(Reduction, PointNeedsNoMoves) {
    const auto t = reduce_to_point(embed(AbstractGraph::from_pairs(1, {})));
    EXPECT_TRUE(t.moves.empty());
    EXPECT_TRUE(t.final_graph.is_single_vertex());
}

TEST(Reduction, NamedGraphsReplay) {
    for (const auto& a : {named::complete(4), named::cube(), named::octahedron(), named::wheel(5), named::grid(4, 4),
                          named::complete_bipartite(2, 3), named::cube_minus_vertex(), named::c4_glued_cube_minus_vertex()}) {
        const auto g = embed(a);
        const auto t = reduce_to_point(g);
        const auto check = verify_trace(g, t);
        EXPECT_TRUE(check.ok) << check.message;
        EXPECT_TRUE(t.final_graph.is_single_vertex());
    }
}

TEST(Reduction, RandomStrategyAlsoReplays) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = embed(named::octahedron());
        ReductionOptions opt;
        opt.strategy = ReductionStrategy::random;
        opt.seed = seed;
        EXPECT_TRUE(verify_trace(g, reduce_to_point(g, opt)).ok);
    }
}

TEST(Reduction, DisconnectedInputRejected) {
    EXPECT_THROW(reduce_to_point(embed(named::c4_and_cube_minus_vertex())), EmbeddingError);
}

TEST(Reduction, TinyBudgetReturnsPartialTrace) {
    const auto g = embed(named::octahedron());
    ReductionOptions opt;
    opt.budget = 3;
    try {
        reduce_to_point(g, opt);
        FAIL();
    } catch (const BudgetExhausted& e) {
        EXPECT_LE(e.partial().moves.size(), 3u);
    }
}

TEST(VerifyTrace, ReportsFirstIllegalStep) {
    const auto g = embed(named::complete(4));
    auto t = reduce_to_point(g);
    auto bad = t;
    bad.moves.insert(bad.moves.begin(), Move{MoveKind::series, {0, 1, 2}, {0, 1}});
    const auto r = verify_trace(g, bad);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.failed_step, 0);

    auto truncated = t;
    truncated.moves.pop_back();
    const auto r2 = verify_trace(g, truncated);
    EXPECT_FALSE(r2.ok);
    EXPECT_EQ(r2.failed_step, -1);
    EXPECT_NE(r2.message.find("not a single vertex"), std::string::npos);
}

TEST(VerifyTrace, JsonRoundTrip) {
    const auto g = embed(named::cube());
    const auto t = reduce_to_point(g);
    const auto back = trace_from_json(Json::parse(trace_to_json(t).dump()));
    EXPECT_EQ(back.moves, t.moves);
    EXPECT_TRUE(verify_trace(g, back).ok);
    EXPECT_EQ(plane_graph_from_json(graph_to_json(g)), g);
}

TEST(Corpus, CountsMatchBruteForceEnumeration) {
    // Independent enumeration over all edge multisets and vertex permutations.
    const std::vector<std::size_t> multigraphs{2, 4, 11, 30, 95};
    const auto all = connected_graphs(5);
    for (int e = 1; e <= 5; ++e)
        EXPECT_EQ(static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [&](const AbstractGraph& g) { return g.edges.size() == static_cast<std::size_t>(e); })),
                  multigraphs[e - 1])
            << e;
    const std::vector<std::size_t> simple{1, 1, 3, 5, 12, 30};
    const auto s = connected_graphs(6, {false, false});
    for (int e = 1; e <= 6; ++e)
        EXPECT_EQ(static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](const AbstractGraph& g) { return g.edges.size() == static_cast<std::size_t>(e); })),
                  simple[e - 1])
            << e;
}

TEST(Corpus, CanonicalCodeIgnoresLabels) {
    for (const auto& a : {named::cube(), named::wheel(5), named::c4_glued_cube_minus_vertex(),
                          AbstractGraph::from_pairs(3, {{0, 1}, {0, 1}, {1, 1}, {1, 2}})}) {
        const auto code = canonical_code(a);
        for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_EQ(canonical_code(relabel(a, seed)), code);
    }
    EXPECT_NE(canonical_code(named::cube()), canonical_code(named::grid(2, 4)));
}

TEST(Corpus, MapCodeIgnoresIds) {
    const auto a = embed(named::cube());
    const auto b = embed(relabel(named::cube(), 3));
    EXPECT_EQ(map_code(a), map_code(b));
}

TEST(Corpus, EverySmallGraphReducesToAPoint) {
    for (const auto& a : connected_graphs(6)) {
        const auto g = embed_planar(a);
        const auto r = verify_trace(g, reduce_to_point(g));
        EXPECT_TRUE(r.ok) << r.message << " on " << graph_to_json(a).dump();
    }
}

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace mfsi;
using namespace mfsi::testing;

TEST(Graph, RejectsLoopsDuplicatesAndRange)
{
    Graph g(3);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(1, 0), InvalidInput);
    EXPECT_THROW(g.add_edge(2, 2), InvalidInput);
    EXPECT_THROW(g.add_edge(0, 3), InvalidInput);
    EXPECT_THROW(Graph(-1), InvalidInput);
    EXPECT_EQ(g.size(), 1);
}

TEST(Graph, DegreeSumIsTwiceEdgeCount)
{
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        Graph g = random_graph(rng.uniform(0, 20), 0.3, rng);
        std::int64_t sum = 0;
        for (Vertex v = 0; v < g.order(); ++v)
            sum += g.degree(v);
        EXPECT_EQ(sum, 2 * g.size());
        EXPECT_EQ(static_cast<std::int64_t>(g.edges().size()), g.size());
    }
}

TEST(Family, Path)
{
    Graph p = make_family(Family::path(5));
    EXPECT_EQ(p.order(), 5);
    EXPECT_EQ(p.size(), 4);
}

TEST(Family, DoubleStar)
{
    Graph d = make_family(Family::double_star(2, 3));
    EXPECT_EQ(d.order(), 7);
    EXPECT_EQ(d.size(), 6);
    VertexSet big;
    for (Vertex v = 0; v < d.order(); ++v)
        if (d.degree(v) >= 2)
            big.push_back(v);
    ASSERT_EQ(big.size(), 2u);
    EXPECT_TRUE(d.has_edge(big[0], big[1]));
}

TEST(Family, DisjointUnion)
{
    Graph u = make_family(Family::disjoint_union({Family::clique(3), Family::star(2)}));
    EXPECT_EQ(u.order(), 6);
    EXPECT_EQ(u.size(), 5);
    EXPECT_EQ(components(u).size(), 2u);
}

TEST(Family, ComplementAndErrors)
{
    Graph c = make_family(Family::complement(Family::clique(4)));
    EXPECT_EQ(c.order(), 4);
    EXPECT_EQ(c.size(), 0);
    EXPECT_THROW(make_family(Family::path(0)), InvalidInput);
    EXPECT_THROW(make_family(Family::clique(-2)), InvalidInput);
    EXPECT_THROW(make_family(Family::star(0)), InvalidInput);
}

TEST(Components, Examples)
{
    EXPECT_TRUE(components(Graph(0)).empty());
    auto two = components(copies(2, clique(3)));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].size(), 3u);
    EXPECT_EQ(two[1].size(), 3u);
    auto s = components(star(4));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].size(), 5u);
}

TEST(Components, SortedAndPartition)
{
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        Graph g = random_graph(rng.uniform(1, 25), 0.08, rng);
        auto comps = components(g);
        std::vector<int> seen(static_cast<std::size_t>(g.order()), 0);
        Vertex last_min = -1;
        for (const auto & c : comps) {
            EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
            EXPECT_GT(c.front(), last_min);
            last_min = c.front();
            for (Vertex v : c)
                ++seen[static_cast<std::size_t>(v)];
            for (Vertex v : c)
                for (Vertex w : g.neighbors(v))
                    EXPECT_TRUE(std::binary_search(c.begin(), c.end(), w));
        }
        for (int x : seen)
            EXPECT_EQ(x, 1);
    }
}

TEST(Classify, Examples)
{
    using Tag = ComponentKind::Tag;
    Graph k3 = clique(3);
    EXPECT_EQ(classify_component(k3, {0, 1, 2}).tag, Tag::Triangle);
    Graph s = star(4);
    auto kind = classify_component(s, {0, 1, 2, 3, 4});
    EXPECT_EQ(kind.tag, Tag::Star);
    EXPECT_EQ(kind.leaves, 4);
    EXPECT_EQ(classify_component(path_graph(4), {0, 1, 2, 3}).tag, Tag::Other);
    auto k2 = classify_component(path_graph(2), {0, 1});
    EXPECT_EQ(k2.tag, Tag::Star);
    EXPECT_EQ(k2.leaves, 1);
    EXPECT_EQ(classify_component(Graph(1), {0}).tag, Tag::Singleton);
}

TEST(Classify, AgreesWithIsomorphismOnSmallConnectedGraphs)
{
    using Tag = ComponentKind::Tag;
    auto check = [](const Graph & g) {
        VertexSet all(static_cast<std::size_t>(g.order()));
        std::iota(all.begin(), all.end(), 0);
        auto kind = classify_component(g, all);
        const int n = g.order();
        Tag expect = Tag::Other;
        if (n == 1)
            expect = Tag::Singleton;
        else if (isomorphic(g, clique(3)))
            expect = Tag::Triangle;
        else if (isomorphic(g, star(n - 1)))
            expect = Tag::Star;
        EXPECT_EQ(kind.tag, expect) << to_text(g);
        if (expect == Tag::Star)
            EXPECT_EQ(kind.leaves, n - 1);
    };
    for (const auto & g : small_graphs(6))
        if (components(g).size() == 1)
            check(g);
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        int n = rng.uniform(7, 8);
        Graph g = rng.coin(0.3) ? star(n - 1) : random_graph(n, 0.3, rng);
        if (components(g).size() == 1)
            check(g);
    }
}

TEST(Classify, InducedInsideLargerGraph)
{
    // component of G - T: degrees must be counted inside the component only
    Graph g = star(3);
    g.add_vertex();
    g.add_edge(3, 4);
    auto comps = components(g, membership(g.order(), {0}));
    for (const auto & c : comps)
        EXPECT_NE(classify_component(g, c).tag, ComponentKind::Tag::Other);
}

TEST(Paths, Examples)
{
    EXPECT_TRUE(contains_path_subgraph(clique(3), 3));
    EXPECT_FALSE(contains_path_subgraph(star(10), 4));
    EXPECT_TRUE(contains_path_subgraph(double_star(1, 1), 4));
    EXPECT_THROW(contains_path_subgraph(clique(3), 0), InvalidInput);
    EXPECT_THROW(contains_path_subgraph(clique(3), 9), InvalidInput);
}

TEST(Paths, AgreesWithExhaustiveSearch)
{
    Rng rng(4);
    for (int t = 0; t < 300; ++t) {
        Graph g = random_graph(rng.uniform(1, 8), rng.uniform(5, 50) / 100.0, rng);
        for (int k = 1; k <= 6; ++k)
            EXPECT_EQ(contains_path_subgraph(g, k), brute_has_path(g, k)) << to_text(g) << " k=" << k;
    }
}

TEST(DisjointP5, Examples)
{
    EXPECT_TRUE(contains_disjoint_p5(path_graph(10), 2));
    EXPECT_FALSE(contains_disjoint_p5(path_graph(9), 2));
    EXPECT_FALSE(contains_disjoint_p5(star(100), 1));
    EXPECT_TRUE(contains_disjoint_p5(Graph(0), 0));
}

TEST(DisjointP5, AgreesWithOracle)
{
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        Graph g = random_graph(rng.uniform(5, 11), rng.uniform(10, 35) / 100.0, rng);
        for (int p = 1; p <= 2; ++p)
            EXPECT_EQ(contains_disjoint_p5(g, p), solve_backtracking(g, copies(p, path_graph(5))).has_value())
                << to_text(g);
    }
}

TEST(Verify, Examples)
{
    EXPECT_TRUE(verify_embedding(Graph(1), Graph(1), {0}));
    EXPECT_FALSE(verify_embedding(path_graph(2), Graph(2), {0, 1}));
    EXPECT_TRUE(verify_embedding(path_graph(3), clique(3), {0, 1, 2}));
    EXPECT_FALSE(verify_embedding(Graph(2), Graph(2), {0, 0}));
    EXPECT_FALSE(verify_embedding(Graph(1), Graph(1), {1}));
    EXPECT_FALSE(verify_embedding(Graph(2), Graph(2), {0}));
}

TEST(Verify, AgreesWithDefinition)
{
    Rng rng(6);
    for (int t = 0; t < 2000; ++t) {
        Graph g = random_graph(rng.uniform(1, 6), 0.5, rng);
        Graph q = random_graph(rng.uniform(1, 4), 0.4, rng);
        Embedding e(static_cast<std::size_t>(q.order()));
        for (auto & v : e)
            v = rng.uniform(-1, g.order());
        EXPECT_EQ(verify_embedding(q, g, e), naive_verify(q, g, e));
    }
}

TEST(GraphIo, RoundTripAndSortedWriter)
{
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        Graph g = random_graph(rng.uniform(0, 12), 0.3, rng);
        EXPECT_EQ(from_text(to_text(g)), g);
    }
    Graph g = from_text("c comment\np si 3 2\ne 3 2\ne 1 2\n");
    EXPECT_EQ(to_text(g), "p si 3 2\ne 1 2\ne 2 3\n");
}

TEST(GraphIo, RejectsMalformed)
{
    EXPECT_THROW(from_text("e 1 2\n"), InvalidInput);
    EXPECT_THROW(from_text("p si 2 1\ne 1 1\n"), InvalidInput);
    EXPECT_THROW(from_text("p si 2 2\ne 1 2\ne 2 1\n"), InvalidInput);
    EXPECT_THROW(from_text("p si 2 1\ne 1 3\n"), InvalidInput);
    EXPECT_THROW(from_text("p si 2 2\ne 1 2\n"), InvalidInput);
    EXPECT_THROW(from_text(""), InvalidInput);
}

TEST(GraphIo, EmbeddingRoundTrip)
{
    Embedding e{4, 0, 2};
    std::stringstream s;
    write_embedding(s, e);
    EXPECT_EQ(s.str(), "v 1 5\nv 2 1\nv 3 3\n");
    EXPECT_EQ(read_embedding(s), e);
}

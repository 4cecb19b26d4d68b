#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace mfsi;
using namespace mfsi::testing;

TEST(FindVi, Examples)
{
    auto s = find_vi_set(star(9), 2);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->deletion_set, VertexSet{0});
    EXPECT_TRUE(validate(star(9), *s));
    EXPECT_FALSE(find_vi_set(path_graph(5), 2));
    auto k1 = find_vi_set(Graph(1), 1);
    ASSERT_TRUE(k1);
    EXPECT_TRUE(k1->deletion_set.empty());
}

TEST(FindVi, AgreesWithSubsetSearch)
{
    for (const auto & g : small_graphs(5))
        for (int k = 1; k <= 4; ++k) {
            auto cert = find_vi_set(g, k);
            EXPECT_EQ(cert.has_value(), brute_has_vi_set(g, k)) << to_text(g) << " k=" << k;
            if (cert)
                EXPECT_TRUE(brute_is_vi_set(g, cert->deletion_set, k));
        }
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        Graph g = random_graph(rng.uniform(6, 8), rng.uniform(5, 40) / 100.0, rng);
        for (int k = 1; k <= 4; ++k) {
            auto cert = find_vi_set(g, k);
            EXPECT_EQ(cert.has_value(), brute_has_vi_set(g, k)) << to_text(g) << " k=" << k;
            if (cert) {
                EXPECT_TRUE(brute_is_vi_set(g, cert->deletion_set, k));
                EXPECT_TRUE(validate(g, *cert));
            }
        }
    }
}

TEST(MinimalVi, Examples)
{
    EXPECT_EQ(enumerate_minimal_vi_sets(path_graph(3), 2), std::vector<VertexSet>{{1}});
    EXPECT_EQ(enumerate_minimal_vi_sets(Graph(2), 1), std::vector<VertexSet>{{}});
    // K4 has vertex integrity 4: no vi(3) set at all
    EXPECT_TRUE(enumerate_minimal_vi_sets(clique(4), 3).empty());
    EXPECT_TRUE(brute_minimal_vi_sets(clique(4), 3).empty());
}

TEST(MinimalVi, EqualsExhaustiveFamily)
{
    auto check = [](const Graph & g, int k) {
        auto got = enumerate_minimal_vi_sets(g, k);
        std::set<VertexSet> as_set(got.begin(), got.end());
        EXPECT_EQ(as_set.size(), got.size()) << "duplicates";
        EXPECT_EQ(as_set, brute_minimal_vi_sets(g, k)) << to_text(g) << " k=" << k;
    };
    for (const auto & g : small_graphs(5))
        for (int k = 1; k <= 3; ++k)
            check(g, k);
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        Graph g = random_graph(rng.uniform(6, 7), rng.uniform(5, 40) / 100.0, rng);
        for (int k = 1; k <= 3; ++k)
            check(g, k);
    }
}

TEST(P4Hitting, Examples)
{
    auto s = find_p4_hitting_set(star(5), 0);
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->empty());
    auto p = find_p4_hitting_set(path_graph(4), 1);
    ASSERT_TRUE(p);
    ASSERT_EQ(p->size(), 1u);
    std::vector<char> removed = membership(4, *p);
    EXPECT_FALSE(find_path(path_graph(4), 4, removed));
    EXPECT_FALSE(find_p4_hitting_set(copies(2, path_graph(4)), 1));
}

TEST(P4Hitting, AgreesWithBruteForce)
{
    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        Graph g = random_graph(rng.uniform(1, 8), rng.uniform(5, 40) / 100.0, rng);
        const int best = brute_p4_hitting(g);
        for (int k = 0; k <= 3; ++k) {
            auto s = find_p4_hitting_set(g, k);
            EXPECT_EQ(s.has_value(), best <= k) << to_text(g) << " k=" << k;
            if (s) {
                EXPECT_LE(static_cast<int>(s->size()), k);
                VertexSet rest;
                auto in = membership(g.order(), *s);
                for (Vertex v = 0; v < g.order(); ++v)
                    if (!in[static_cast<std::size_t>(v)])
                        rest.push_back(v);
                EXPECT_FALSE(brute_has_path(induced_subgraph(g, rest), 4));
            }
        }
    }
}

TEST(Kp3Bound, Examples)
{
    EXPECT_FALSE(kp3_free_vi_bound(path_graph(3), 1));
    Graph g = disjoint_union({path_graph(3), path_graph(2)});
    auto c = kp3_free_vi_bound(g, 2);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->k, 5);
    EXPECT_EQ(c->deletion_set, (VertexSet{0, 1, 2}));
    EXPECT_TRUE(validate(g, *c));
    auto m = kp3_free_vi_bound(copies(3, path_graph(2)), 1);
    ASSERT_TRUE(m);
    EXPECT_TRUE(m->deletion_set.empty());
    EXPECT_EQ(m->k, 2);
}

TEST(Kp3Bound, CertificatesValidate)
{
    Rng rng(14);
    for (int t = 0; t < 300; ++t) {
        Graph g = random_graph(rng.uniform(1, 10), rng.uniform(5, 30) / 100.0, rng);
        for (int k = 1; k <= 3; ++k)
            if (auto c = kp3_free_vi_bound(g, k)) {
                EXPECT_EQ(c->k, 3 * k - 1);
                EXPECT_TRUE(brute_is_vi_set(g, c->deletion_set, c->k));
            }
            else
                EXPECT_TRUE(naive_contains(g, copies(k, path_graph(3)))) << to_text(g);
    }
}

TEST(Twins, Examples)
{
    auto k4 = twin_partition(clique(4));
    ASSERT_EQ(k4.size(), 1);
    EXPECT_EQ(k4.classes[0].size(), 4u);
    EXPECT_EQ(k4.kinds[0], TwinPartition::Kind::Complete);
    EXPECT_EQ(twin_partition(path_graph(4)).size(), 4);
    auto c4 = twin_partition(cycle_graph(4));
    ASSERT_EQ(c4.size(), 2);
    for (int c = 0; c < 2; ++c) {
        EXPECT_EQ(c4.classes[static_cast<std::size_t>(c)].size(), 2u);
        EXPECT_EQ(c4.kinds[static_cast<std::size_t>(c)], TwinPartition::Kind::Independent);
    }
    EXPECT_TRUE(c4.adjacent[0][1]);
}

TEST(Twins, ClassesAreMaximalModules)
{
    Rng rng(15);
    auto twins = [](const Graph & g, Vertex u, Vertex v) {
        for (Vertex w = 0; w < g.order(); ++w)
            if (w != u && w != v && g.has_edge(u, w) != g.has_edge(v, w))
                return false;
        return true;
    };
    for (int t = 0; t < 200; ++t) {
        Graph g = rng.coin(0.5) ? random_graph(rng.uniform(1, 9), 0.5, rng)
                                : detail::build_classes(detail::random_class_layout(rng.uniform(1, 12), 4, rng));
        auto p = twin_partition(g);
        std::vector<int> seen(static_cast<std::size_t>(g.order()), 0);
        for (int c = 0; c < p.size(); ++c) {
            const auto & cls = p.classes[static_cast<std::size_t>(c)];
            for (Vertex v : cls) {
                ++seen[static_cast<std::size_t>(v)];
                EXPECT_EQ(p.class_of[static_cast<std::size_t>(v)], c);
            }
            for (Vertex a : cls)
                for (Vertex b : cls)
                    if (a < b) {
                        EXPECT_TRUE(twins(g, a, b));
                        EXPECT_EQ(g.has_edge(a, b), p.kinds[static_cast<std::size_t>(c)] == TwinPartition::Kind::Complete);
                    }
            for (int d = 0; d < p.size(); ++d) {
                if (d == c)
                    continue;
                for (Vertex a : cls)
                    for (Vertex b : p.classes[static_cast<std::size_t>(d)])
                        EXPECT_EQ(g.has_edge(a, b), static_cast<bool>(p.adjacent[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)]));
            }
        }
        for (int x : seen)
            EXPECT_EQ(x, 1);
        // coarsest: any two vertices in different classes are not twins
        for (Vertex a = 0; a < g.order(); ++a)
            for (Vertex b = a + 1; b < g.order(); ++b)
                if (p.class_of[static_cast<std::size_t>(a)] != p.class_of[static_cast<std::size_t>(b)])
                    EXPECT_FALSE(twins(g, a, b)) << to_text(g) << a << " " << b;
    }
}

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace mfsi;
using namespace mfsi::testing;

namespace {

// every union of K1, K2, K3, P3 and larger stars on exactly n vertices
void p4_free_unions(int n, int min_part, std::vector<Graph> & parts, std::vector<Graph> & out)
{
    if (n == 0) {
        out.push_back(disjoint_union(parts));
        return;
    }
    for (int size = min_part; size <= n; ++size) {
        std::vector<Graph> shapes;
        if (size == 1)
            shapes.push_back(Graph(1));
        else
            shapes.push_back(star(size - 1));
        if (size == 3)
            shapes.push_back(clique(3));
        for (const auto & s : shapes) {
            parts.push_back(s);
            p4_free_unions(n - size, size, parts, out);
            parts.pop_back();
        }
    }
}

std::vector<Graph> p4_free_family(int max_n)
{
    std::vector<Graph> out, parts;
    for (int n = 1; n <= max_n; ++n)
        p4_free_unions(n, 1, parts, out);
    return out;
}

void expect_matches_oracle(const Graph & g, const Graph & q)
{
    auto got = solve_p4free(g, q);
    EXPECT_EQ(got.has_value(), solve_backtracking(g, q).has_value()) << "host\n" << to_text(g) << "pattern\n" << to_text(q);
    if (got)
        EXPECT_TRUE(verify_embedding(q, g, *got));
}

} // namespace

TEST(P4Free, Examples)
{
    auto k1 = solve_p4free(Graph(1), Graph(1));
    ASSERT_TRUE(k1);
    EXPECT_EQ(*k1, Embedding{0});

    Graph host = disjoint_union({clique(3), star(3)});
    Graph pat = copies(2, star(2));
    auto e = solve_p4free(host, pat);
    ASSERT_TRUE(e);
    EXPECT_TRUE(verify_embedding(pat, host, *e));
    EXPECT_TRUE(solve_backtracking(host, pat));

    EXPECT_FALSE(solve_p4free(copies(2, clique(3)), star(3)));
    EXPECT_FALSE(solve_backtracking(copies(2, clique(3)), star(3)));
}

TEST(P4Free, ThreePartitionPathPieces)
{
    // m P_B with pieces of order <= 3: values [1,1,1] and [2,2,3,2,2,3]
    Graph h1 = path_graph(3), q1 = copies(3, Graph(1));
    ASSERT_THROW(solve_p4free(copies(2, path_graph(7)), q1), ClassViolation);
    EXPECT_TRUE(solve_p4free(h1, q1));
    EXPECT_TRUE(solve_backtracking(h1, q1));
    Graph q2 = disjoint_union({path_graph(2), path_graph(3), path_graph(2)});
    Graph h2 = disjoint_union({path_graph(3), path_graph(3), clique(3)});
    expect_matches_oracle(h2, q2);
}

TEST(P4Free, RejectsP4)
{
    EXPECT_THROW(solve_p4free(path_graph(4), Graph(1)), ClassViolation);
    EXPECT_THROW(solve_p4free(Graph(5), path_graph(4)), ClassViolation);
    EXPECT_THROW(solve_p4free(cycle_graph(4), Graph(1)), ClassViolation);
}

TEST(P4Free, PatternLargerThanHost)
{
    EXPECT_FALSE(solve_p4free(Graph(2), Graph(3)));
    EXPECT_TRUE(solve_p4free(Graph(2), Graph(0)));
}

TEST(P4Free, ExhaustiveFamilyAgreesWithOracle)
{
    auto family = p4_free_family(7);
    ASSERT_GT(family.size(), 50u);
    for (const auto & g : family)
        for (const auto & q : family)
            if (q.order() <= g.order())
                expect_matches_oracle(g, q);
}

TEST(P4Free, RandomPairsAgreeWithOracle)
{
    Rng rng(41);
    for (int t = 0; t < 10000; ++t) {
        int n = rng.uniform(1, 60);
        Graph g = detail::shuffled(detail::random_p4_free(n, rng), rng);
        Graph q = rng.coin(0.5) ? detail::shuffled(detail::random_subgraph(g, rng), rng)
                                : detail::shuffled(detail::random_p4_free(rng.uniform(1, n), rng), rng);
        if (!is_p4_free(q))
            continue;
        expect_matches_oracle(g, q);
        if (HasFailure())
            return;
    }
}

TEST(P4Free, MonotoneUnderAddingIsolatedVertex)
{
    Rng rng(42);
    for (int t = 0; t < 500; ++t) {
        Graph g = random_p4_free(rng.uniform(1, 8), 5, rng);
        Graph q = random_p4_free(rng.uniform(1, 8), 5, rng);
        if (solve_p4free(g, q))
            EXPECT_TRUE(solve_p4free(disjoint_union({g, Graph(1)}), q));
    }
}

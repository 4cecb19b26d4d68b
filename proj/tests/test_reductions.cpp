#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace mfsi;
using namespace mfsi::testing;

namespace {

enum class Shape { Isolated, Star, DoubleStar, Other };

Shape shape_of(const Graph & g, const VertexSet & comp, const std::vector<char> & removed)
{
    if (comp.size() == 1)
        return Shape::Isolated;
    std::int64_t edges = 0;
    VertexSet inner;
    for (Vertex v : comp) {
        int deg = 0;
        for (Vertex w : g.neighbors(v))
            deg += !removed[static_cast<std::size_t>(w)];
        edges += deg;
        if (deg >= 2)
            inner.push_back(v);
    }
    if (edges / 2 != static_cast<std::int64_t>(comp.size()) - 1)
        return Shape::Other;
    if (inner.size() <= 1)
        return Shape::Star;
    if (inner.size() == 2 && g.has_edge(inner[0], inner[1]))
        return Shape::DoubleStar;
    return Shape::Other;
}

ThreePartitionInstance partition(std::int64_t bound, std::vector<std::int64_t> values)
{
    return {bound, std::move(values)};
}

} // namespace

// ---------------------------------------------------------------------------
// 3-Partition

TEST(ThreePartition, SingleTriple)
{
    auto inst = partition(3, {1, 1, 1});
    auto red = reduce_3partition(inst, PartitionMode::LinearForest);
    EXPECT_TRUE(graphs_equal(red.host, path_graph(3)));
    EXPECT_TRUE(graphs_equal(red.pattern, Graph(3)));
    EXPECT_TRUE(solve_backtracking(red.host, red.pattern));
    auto triples = solve_3partition(inst);
    ASSERT_TRUE(triples);
    ASSERT_EQ(triples->size(), 1u);
}

TEST(ThreePartition, TwoTriplesBothModes)
{
    auto inst = partition(7, {2, 2, 3, 2, 2, 3});
    auto triples = solve_3partition(inst);
    ASSERT_TRUE(triples);
    for (auto mode : {PartitionMode::LinearForest, PartitionMode::Cluster}) {
        auto red = reduce_3partition(inst, mode);
        EXPECT_EQ(red.host.order(), 14);
        EXPECT_EQ(red.pattern.order(), 14);
        EXPECT_EQ(components(red.host).size(), 2u);
        EXPECT_EQ(components(red.pattern).size(), 6u);
        EXPECT_TRUE(solve_backtracking(red.host, red.pattern));
        auto w = build_3partition_witness(inst, *triples);
        EXPECT_TRUE(verify_embedding(red.pattern, red.host, w));
    }
}

TEST(ThreePartition, ValidationAndParsing)
{
    EXPECT_THROW(reduce_3partition(partition(8, {2, 3, 3}), PartitionMode::Cluster), InvalidInput); // 2 = B/4
    EXPECT_THROW(reduce_3partition(partition(7, {2, 2, 2}), PartitionMode::Cluster), InvalidInput);
    EXPECT_THROW(reduce_3partition(partition(7, {2, 2}), PartitionMode::Cluster), InvalidInput);
    std::istringstream ok("7\n2 2 3 2 2 3\n");
    auto inst = parse_3partition(ok);
    EXPECT_EQ(inst.bound, 7);
    EXPECT_EQ(inst.values.size(), 6u);
    std::istringstream bad("7 2 x 3");
    EXPECT_THROW(parse_3partition(bad), InvalidInput);
    std::istringstream empty("");
    EXPECT_THROW(parse_3partition(empty), InvalidInput);
}

TEST(ThreePartition, EquivalenceWithOracleForSmallM)
{
    Rng rng(91);
    int yes = 0, no = 0;
    for (int t = 0; t < 300; ++t) {
        const int m = rng.uniform(1, 2);
        auto inst = random_3partition(m, rng.uniform(9, 14), rng, rng.coin(0.5));
        const bool source = solve_3partition(inst).has_value();
        (source ? yes : no)++;
        for (auto mode : {PartitionMode::LinearForest, PartitionMode::Cluster}) {
            auto red = reduce_3partition(inst, mode);
            EXPECT_EQ(solve_backtracking(red.host, red.pattern).has_value(), source);
        }
    }
    EXPECT_GT(yes, 10);
    EXPECT_GT(no, 5);
}

// ---------------------------------------------------------------------------
// X3C

TEST(X3c, SpecInstance)
{
    X3CInstance inst{6, {{0, 1, 2}, {3, 4, 5}, {0, 3, 4}}};
    auto red = reduce_x3c(inst);
    auto comps = components(red.host);
    ASSERT_EQ(comps.size(), 3u);
    for (const auto & c : comps)
        EXPECT_EQ(c.size(), 103u);
    EXPECT_FALSE(contains_path_subgraph(red.host, 6));
    auto cover = solve_x3c(inst);
    ASSERT_TRUE(cover);
    EXPECT_EQ(*cover, (std::vector<int>{0, 1}));
    EXPECT_TRUE(verify_embedding(red.pattern, red.host, build_x3c_witness(inst, red, *cover)));
}

TEST(X3c, TrivialCover)
{
    X3CInstance inst{3, {{0, 1, 2}}};
    auto cover = solve_x3c(inst);
    ASSERT_TRUE(cover);
    EXPECT_EQ(*cover, std::vector<int>{0});
    EXPECT_FALSE(solve_x3c(X3CInstance{6, {{0, 1, 2}, {0, 3, 4}}}));
}

TEST(X3c, StructureOnRandomInstances)
{
    Rng rng(92);
    for (int t = 0; t < 100; ++t) {
        const int n = 3 * rng.uniform(1, 3);
        auto inst = random_x3c(n, rng.uniform(0, 3), rng, rng.coin(0.5));
        auto red = reduce_x3c(inst);
        auto comps = components(red.host);
        ASSERT_EQ(comps.size(), inst.sets.size());
        for (const auto & c : comps)
            EXPECT_EQ(static_cast<int>(c.size()), 16 * n + 7);
        EXPECT_EQ(red.host.size(), red.host.order() - static_cast<std::int64_t>(comps.size())); // a forest
        EXPECT_FALSE(contains_path_subgraph(red.host, 6));
        for (const auto & c : components(red.pattern))
            EXPECT_EQ(classify_component(red.pattern, c).tag, ComponentKind::Tag::Star);
        const auto sets = static_cast<int>(inst.sets.size());
        EXPECT_EQ(red.pattern.order(), n / 3 * (4 * n + 1) + (sets - n / 3) * (4 * n + 7) + n * (4 * n + 2));
        EXPECT_EQ(red.cover_stars.size(), static_cast<std::size_t>(n / 3));
        EXPECT_EQ(red.filler_stars.size(), inst.sets.size() - static_cast<std::size_t>(n / 3));
    }
}

TEST(X3c, ForwardSoundness)
{
    Rng rng(93);
    int solved = 0;
    for (int t = 0; t < 60; ++t) {
        const int n = 3 * rng.uniform(1, 3);
        auto inst = random_x3c(n, rng.uniform(0, 4), rng, rng.coin(0.7));
        auto cover = solve_x3c(inst);
        if (!cover)
            continue;
        ++solved;
        auto red = reduce_x3c(inst);
        EXPECT_TRUE(verify_embedding(red.pattern, red.host, build_x3c_witness(inst, red, *cover)));
    }
    EXPECT_GT(solved, 30);
}

TEST(X3c, ValidationAndParsing)
{
    EXPECT_THROW(reduce_x3c(X3CInstance{4, {{0, 1, 2}}}), InvalidInput);
    EXPECT_THROW(reduce_x3c(X3CInstance{3, {{0, 1, 1}}}), InvalidInput);
    EXPECT_THROW(reduce_x3c(X3CInstance{6, {{0, 1, 2}}}), InvalidInput);
    std::istringstream in("6\n0 1 2\n3 4 5\n\n0 3 4\n");
    auto inst = parse_x3c(in);
    EXPECT_EQ(inst.universe, 6);
    EXPECT_EQ(inst.sets.size(), 3u);
    std::istringstream bad("6\n0 1\n3 4 5\n");
    EXPECT_THROW(parse_x3c(bad), InvalidInput);
}

// ---------------------------------------------------------------------------
// 3-SAT(2,1)

TEST(Sat21, PendantUnitAndGadgetSizes)
{
    Rng rng(94);
    for (int t = 0; t < 100; ++t) {
        const int n = rng.uniform(4, 6);
        auto f = random_sat21(n, rng);
        auto red = reduce_3sat21(f);
        const std::int64_t big_n = 4LL * n * n * n + 2LL * n + 2;
        EXPECT_EQ(red.pendant_unit, big_n);
        EXPECT_EQ(static_cast<std::int64_t>(red.c_pendants.size()), big_n);
        EXPECT_EQ(static_cast<std::int64_t>(red.c_prime_pendants.size()), 2 * big_n);
        EXPECT_EQ(static_cast<std::int64_t>(red.d_pendants.size()), big_n);
        EXPECT_EQ(static_cast<std::int64_t>(red.d_prime_pendants.size()), 2 * big_n);
        for (int i = 0; i < n; ++i) {
            EXPECT_EQ(red.positive[static_cast<std::size_t>(i)].order(), 4 * n * n + 2);
            EXPECT_EQ(red.negative[static_cast<std::size_t>(i)].order(), 4 * n * n + 2);
            EXPECT_EQ(red.pattern_double_stars[static_cast<std::size_t>(i)].order(), 4 * n * n + 2);
        }
        for (const auto & cp : red.clause_patterns)
            EXPECT_EQ(static_cast<int>(cp.to_d.size() + cp.to_d_prime.size()), 4 * n);
    }
}

TEST(Sat21, PendantFormulaAtThreeVariables)
{
    // the construction itself needs n >= 4; the closed form at n = 3
    const std::int64_t n = 3;
    EXPECT_EQ(4 * n * n * n + 2 * n + 2, 116);
    Sat21Formula f{3, {{1, 2, 3}, {1, 2, 3}, {-1, -2, -3}}};
    EXPECT_THROW(reduce_3sat21(f), InvalidInput);
}

TEST(Sat21, DeletingHubsLeavesDoubleStars)
{
    Rng rng(95);
    for (int t = 0; t < 30; ++t) {
        auto f = random_sat21(rng.uniform(4, 5), rng);
        auto red = reduce_3sat21(f);
        auto host_removed = membership(red.host.order(), {red.c, red.c_prime});
        for (const auto & comp : components(red.host, host_removed)) {
            auto s = shape_of(red.host, comp, host_removed);
            EXPECT_TRUE(s == Shape::Isolated || s == Shape::DoubleStar);
        }
        auto pattern_removed = membership(red.pattern.order(), {red.d, red.d_prime});
        for (const auto & comp : components(red.pattern, pattern_removed))
            EXPECT_NE(shape_of(red.pattern, comp, pattern_removed), Shape::Other);
    }
}

TEST(Sat21, NoThreeDisjointP5)
{
    Rng rng(96);
    for (int t = 0; t < 50; ++t) {
        auto red = reduce_3sat21(random_sat21(4, rng));
        EXPECT_FALSE(contains_disjoint_p5(red.host, 3));
    }
}

TEST(Sat21, ForwardSoundness)
{
    Rng rng(97);
    int solved = 0;
    for (int t = 0; t < 40; ++t) {
        auto f = random_sat21(rng.uniform(4, 8), rng);
        auto a = solve_sat21(f);
        if (!a)
            continue;
        ++solved;
        auto red = reduce_3sat21(f);
        auto w = build_3sat21_witness(f, red, *a);
        EXPECT_TRUE(verify_embedding(red.pattern, red.host, w));
        EXPECT_EQ(w[static_cast<std::size_t>(red.d)], red.c);
        EXPECT_EQ(w[static_cast<std::size_t>(red.d_prime)], red.c_prime);
    }
    EXPECT_GT(solved, 20);
}

TEST(Sat21, TautologyClausesAreSatisfiable)
{
    Sat21Formula f{4, {{1, -1}, {1, 2}, {2, -2}, {3, -3, 4}, {3, 4}, {-4}}};
    EXPECT_THROW(validate(f), InvalidInput); // unit clause
    Sat21Formula g{4, {{1, -1}, {1, 2}, {2, -2}, {3, -3}, {3, 4}, {4, -4}}};
    auto a = solve_sat21(g);
    ASSERT_TRUE(a);
    EXPECT_TRUE(satisfies(g, *a));
}

TEST(Sat21, ValidationAndParsing)
{
    std::istringstream in("c demo\np cnf 4 6\n1 -1 0\n1 2 0\n2 -2 0\n3 -3 0\n3 4 0\n4 -4 0\n");
    auto f = parse_sat21(in);
    EXPECT_EQ(f.variables, 4);
    EXPECT_EQ(f.clauses.size(), 6u);
    std::istringstream wrong("1 2 0\n-1 -2 0\n");
    EXPECT_THROW(parse_sat21(wrong), InvalidInput);
    std::vector<bool> bad(3, true);
    EXPECT_THROW(build_3sat21_witness(f, reduce_3sat21(f), bad), InvalidInput);
}

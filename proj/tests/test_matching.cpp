#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace mfsi;
using namespace mfsi::testing;

namespace {

// maximum matching size by DP over (row, used-column mask)
int brute_max_matching(const std::vector<std::vector<int>> & adj, int right)
{
    const int left = static_cast<int>(adj.size());
    std::vector<std::vector<int>> memo(static_cast<std::size_t>(left) + 1, std::vector<int>(std::size_t{1} << right, -1));
    std::function<int(int, unsigned)> go = [&](int l, unsigned mask) {
        if (l == left)
            return 0;
        int & m = memo[static_cast<std::size_t>(l)][mask];
        if (m >= 0)
            return m;
        int best = go(l + 1, mask);
        for (int r : adj[static_cast<std::size_t>(l)])
            if (!(mask >> r & 1))
                best = std::max(best, 1 + go(l + 1, mask | 1u << r));
        return m = best;
    };
    return go(0, 0);
}

bool valid_matching(const std::vector<std::vector<int>> & adj, const std::vector<int> & match)
{
    std::set<int> used;
    for (std::size_t l = 0; l < match.size(); ++l) {
        if (match[l] < 0)
            continue;
        const auto & row = adj[l];
        if (std::find(row.begin(), row.end(), match[l]) == row.end() || !used.insert(match[l]).second)
            return false;
    }
    return true;
}

WeightedBipartiteMultigraph single_edge(const ColorHistogram & w)
{
    WeightedBipartiteMultigraph b;
    b.left_count = b.right_count = 1;
    b.q = w.q;
    b.weight_cap = 10;
    b.edges.push_back({0, 0, w, 0});
    return b;
}

} // namespace

TEST(Histogram, Examples)
{
    ColorHistogram zero(1);
    EXPECT_EQ(histogram_add(zero, zero), zero);
    std::vector<unsigned> col{0, 1};
    auto sum = histogram_add(histogram_of(1, col, VertexSet{0}), histogram_of(1, col, VertexSet{1}));
    EXPECT_EQ(sum.counts, (std::vector<std::int64_t>{1, 1}));
    EXPECT_THROW(histogram_add(ColorHistogram(1), ColorHistogram(2)), InvalidInput);
}

TEST(Histogram, AdditionIdentityOnRandomSplits)
{
    Rng rng(31);
    for (int t = 0; t < 10000; ++t) {
        const int q = rng.uniform(0, 3), n = rng.uniform(0, 20);
        std::vector<unsigned> col(static_cast<std::size_t>(n));
        for (auto & c : col)
            c = static_cast<unsigned>(rng.uniform(0, (1 << q) - 1));
        VertexSet x, y, all;
        for (Vertex v = 0; v < n; ++v) {
            int side = rng.uniform(0, 2);
            if (side == 2)
                continue;
            (side ? y : x).push_back(v);
            all.push_back(v);
        }
        ASSERT_EQ(histogram_add(histogram_of(q, col, x), histogram_of(q, col, y)), histogram_of(q, col, all));
    }
}

TEST(BipartiteMatching, Examples)
{
    std::vector<std::vector<int>> k33(3, {0, 1, 2});
    EXPECT_EQ(matching_size(max_bipartite_matching(k33, 3)), 3);
    std::vector<std::vector<int>> lonely(1);
    EXPECT_EQ(matching_size(max_bipartite_matching(lonely, 0)), 0);
}

TEST(BipartiteMatching, AgreesWithBruteForce)
{
    Rng rng(32);
    for (int t = 0; t < 500; ++t) {
        const int left = rng.uniform(0, 8), right = rng.uniform(0, 8);
        const double p = rng.uniform(5, 60) / 100.0;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(left));
        for (auto & row : adj)
            for (int r = 0; r < right; ++r)
                if (rng.coin(p))
                    row.push_back(r);
        auto m = max_bipartite_matching(adj, right);
        EXPECT_TRUE(valid_matching(adj, m));
        EXPECT_EQ(matching_size(m), brute_max_matching(adj, right));
    }
}

TEST(ExactWeight, SingleEdge)
{
    Rng rng(33);
    ColorHistogram w(1, {2, 3});
    auto b = single_edge(w);
    auto m = exact_weight_perfect_matching(b, w, rng, 5);
    ASSERT_TRUE(m);
    EXPECT_EQ(*m, std::vector<int>{0});
    EXPECT_FALSE(exact_weight_perfect_matching(b, ColorHistogram(1, {2, 2}), rng, 5));
}

TEST(ExactWeight, InputValidation)
{
    Rng rng(34);
    auto b = single_edge(ColorHistogram(1, {1, 1}));
    EXPECT_THROW(exact_weight_perfect_matching(b, ColorHistogram(1, {11, 0}), rng, 1), InvalidInput);
    EXPECT_THROW(exact_weight_perfect_matching(b, ColorHistogram(2), rng, 1), InvalidInput);
    b.right_count = 2;
    EXPECT_THROW(exact_weight_perfect_matching(b, ColorHistogram(1), rng, 1), InvalidInput);
    b.right_count = 1;
    b.edges.push_back(b.edges.front());
    EXPECT_THROW(exact_weight_perfect_matching(b, ColorHistogram(1), rng, 1), InvalidInput);
}

TEST(ExactWeight, AgreesWithDpOracle)
{
    Rng rng(35);
    int yes = 0;
    for (int t = 0; t < 1000; ++t) {
        auto b = random_multigraph(5, 2, 4, rng, 0.6);
        auto weights = matching_weights_dp(b);
        ColorHistogram target(2);
        if (!weights.empty() && rng.coin(0.5)) {
            auto it = weights.begin();
            std::advance(it, rng.uniform<int>(0, static_cast<int>(weights.size()) - 1));
            target = *it;
        }
        else
            for (auto & c : target.counts)
                c = rng.uniform(0, 12);
        auto m = exact_weight_perfect_matching(b, target, rng, 10);
        ASSERT_EQ(m.has_value(), weights.count(target) > 0) << "instance " << t;
        if (m) {
            ++yes;
            EXPECT_TRUE(is_perfect_matching(b, *m));
            EXPECT_EQ(matching_weight(b, *m), target);
        }
    }
    EXPECT_GT(yes, 300);
}

TEST(ExactWeight, BackendsAgree)
{
    Rng rng(36);
    for (int t = 0; t < 300; ++t) {
        auto b = random_multigraph(rng.uniform(1, 5), rng.uniform(1, 2), 3, rng, 0.6);
        ColorHistogram bound(b.q);
        for (auto & c : bound.counts)
            c = rng.uniform(0, 8);
        auto rows = detail::iota_vector(b.left_count);
        auto rho = detail::draw_rho(b.edges.size(), rng);
        auto sym = detail::matching_coefficients(b, bound.counts, rows, rows, rho, detail::Backend::Symbolic);
        auto eval = detail::matching_coefficients(b, bound.counts, rows, rows, rho, detail::Backend::Evaluation);
        auto sparse = detail::matching_coefficients(b, bound.counts, rows, rows, rho, detail::Backend::Sparse);
        std::vector<std::int64_t> e(bound.counts.size(), 0);
        std::function<void(std::size_t)> walk = [&](std::size_t v) {
            if (v == e.size()) {
                ASSERT_EQ(sym.at(e), eval.at(e));
                ASSERT_EQ(sym.at(e), sparse.at(e));
                return;
            }
            for (e[v] = 0; e[v] <= bound.counts[v]; ++e[v])
                walk(v + 1);
        };
        walk(0);
    }
}

TEST(ExactWeight, WeightFreeMatchesMaxMatching)
{
    Rng rng(37);
    for (int t = 0; t < 300; ++t) {
        const int n = rng.uniform(1, 7);
        WeightedBipartiteMultigraph b;
        b.left_count = b.right_count = n;
        b.weight_cap = 1;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (rng.coin(0.3)) {
                    b.edges.push_back({x, y, ColorHistogram(0), 0});
                    adj[static_cast<std::size_t>(x)].push_back(y);
                }
        auto m = exact_weight_perfect_matching(b, ColorHistogram(0), rng, 10);
        EXPECT_EQ(m.has_value(), matching_size(max_bipartite_matching(adj, n)) == n);
    }
}

TEST(ExactWeight, AchievableWeightsMatchDp)
{
    Rng rng(38);
    for (int t = 0; t < 300; ++t) {
        auto b = random_multigraph(rng.uniform(1, 5), 1, 3, rng, 0.5);
        ColorHistogram box(1, {b.weight_cap, b.weight_cap});
        EXPECT_EQ(achievable_weights(b, box, rng, 10), matching_weights_dp(b));
    }
}

TEST(ExactWeight, SingleRepeatDetectionRate)
{
    Rng rng(39);
    int found = 0, trials = 0;
    while (trials < 500) {
        auto b = random_multigraph(5, 2, 4, rng, 0.6);
        auto weights = matching_weights_dp(b);
        if (weights.empty())
            continue;
        auto it = weights.begin();
        std::advance(it, rng.uniform<int>(0, static_cast<int>(weights.size()) - 1));
        ++trials;
        found += exact_weight_perfect_matching(b, *it, rng, 1).has_value();
    }
    EXPECT_GE(found, 200);
}

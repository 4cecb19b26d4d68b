#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfsi/errors.hpp"
#include "mfsi/graph.hpp"
#include "mfsi/rng.hpp"

namespace mfsi {

struct ReducedInstance {
    Graph host;
    Graph pattern;
};

// ---------------------------------------------------------------------------
// 3-Partition

struct ThreePartitionInstance {
    std::int64_t bound = 0; // B
    std::vector<std::int64_t> values;

    int m() const { return static_cast<int>(values.size() / 3); }
};

enum class PartitionMode { LinearForest, Cluster };

inline void validate(const ThreePartitionInstance & inst)
{
    if (inst.values.empty() || inst.values.size() % 3 != 0)
        throw InvalidInput("3-Partition needs 3m values");
    std::int64_t sum = 0;
    for (auto a : inst.values) {
        if (a <= 0 || 4 * a <= inst.bound || 2 * a >= inst.bound)
            throw InvalidInput("3-Partition values must satisfy B/4 < a < B/2");
        sum += a;
    }
    if (sum != inst.m() * inst.bound)
        throw InvalidInput("3-Partition values must sum to mB");
}

/// Host m copies of P_B (or K_B), pattern the union of P_{a_i} (or K_{a_i}).
inline ReducedInstance reduce_3partition(const ThreePartitionInstance & inst, PartitionMode mode)
{
    validate(inst);
    auto piece = [&](std::int64_t size) {
        return mode == PartitionMode::LinearForest ? path_graph(static_cast<int>(size)) : clique(static_cast<int>(size));
    };
    std::vector<Graph> parts;
    for (auto a : inst.values)
        parts.push_back(piece(a));
    return {copies(inst.m(), piece(inst.bound)), disjoint_union(parts)};
}

/// Triples of value indices, each summing to B. Exhaustive; m <= 3.
inline std::optional<std::vector<std::array<int, 3>>> solve_3partition(const ThreePartitionInstance & inst)
{
    validate(inst);
    if (inst.m() > 3)
        throw InvalidInput("3-Partition brute force is capped at m <= 3");
    const int n = static_cast<int>(inst.values.size());
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<std::array<int, 3>> triples;
    std::function<bool()> search = [&]() {
        int first = 0;
        while (first < n && used[static_cast<std::size_t>(first)])
            ++first;
        if (first == n)
            return true;
        used[static_cast<std::size_t>(first)] = 1;
        for (int b = first + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                if (used[static_cast<std::size_t>(b)] || used[static_cast<std::size_t>(c)])
                    continue;
                if (inst.values[static_cast<std::size_t>(first)] + inst.values[static_cast<std::size_t>(b)] +
                        inst.values[static_cast<std::size_t>(c)] != inst.bound)
                    continue;
                used[static_cast<std::size_t>(b)] = used[static_cast<std::size_t>(c)] = 1;
                triples.push_back({first, b, c});
                if (search())
                    return true;
                triples.pop_back();
                used[static_cast<std::size_t>(b)] = used[static_cast<std::size_t>(c)] = 0;
            }
        used[static_cast<std::size_t>(first)] = 0;
        return false;
    };
    if (search())
        return triples;
    return std::nullopt;
}

/// Embedding of the reduced pattern given the triples of a partition: the
/// three pieces of triple t are laid out consecutively in host copy t.
inline Embedding build_3partition_witness(const ThreePartitionInstance & inst, const std::vector<std::array<int, 3>> & triples)
{
    validate(inst);
    const auto n = static_cast<int>(inst.values.size());
    std::vector<Vertex> start(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i)
        start[static_cast<std::size_t>(i) + 1] = start[static_cast<std::size_t>(i)] + static_cast<Vertex>(inst.values[static_cast<std::size_t>(i)]);
    if (static_cast<int>(triples.size()) != inst.m())
        throw InvalidInput("a 3-partition has m triples");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    Embedding image(static_cast<std::size_t>(start.back()), -1);
    for (std::size_t t = 0; t < triples.size(); ++t) {
        std::int64_t sum = 0;
        auto offset = static_cast<Vertex>(t * static_cast<std::size_t>(inst.bound));
        for (int i : triples[t]) {
            if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)])
                throw InvalidInput("triples must use every value exactly once");
            seen[static_cast<std::size_t>(i)] = 1;
            sum += inst.values[static_cast<std::size_t>(i)];
            for (Vertex v = start[static_cast<std::size_t>(i)]; v < start[static_cast<std::size_t>(i) + 1]; ++v)
                image[static_cast<std::size_t>(v)] = offset++;
        }
        if (sum != inst.bound)
            throw InvalidInput("triple does not sum to B");
    }
    return image;
}

inline ThreePartitionInstance parse_3partition(std::istream & in)
{
    ThreePartitionInstance inst;
    if (!(in >> inst.bound))
        throw InvalidInput("3-Partition input must start with B");
    std::int64_t a;
    while (in >> a)
        inst.values.push_back(a);
    if (!in.eof())
        throw InvalidInput("3-Partition input has a non-integer token");
    validate(inst);
    return inst;
}

/// Random instance; with `planted`, values are generated triple by triple so a
/// partition exists.
inline ThreePartitionInstance random_3partition(int m, std::int64_t bound, Rng & rng, bool planted = true)
{
    if (bound < 9)
        throw InvalidInput("B must be at least 9 for random instances");
    auto lo = bound / 4 + 1, hi = (bound - 1) / 2;
    ThreePartitionInstance inst{bound, {}};
    auto fill_triple = [&]() {
        while (true) {
            auto a = rng.uniform<std::int64_t>(lo, hi), b = rng.uniform<std::int64_t>(lo, hi);
            auto c = bound - a - b;
            if (c >= lo && c <= hi)
                return std::array<std::int64_t, 3>{a, b, c};
        }
    };
    for (int t = 0; t < m; ++t)
        for (auto v : fill_triple())
            inst.values.push_back(v);
    if (!planted && m >= 2) {
        // move one unit between two values from different triples, keeping the bounds
        for (int tries = 0; tries < 100; ++tries) {
            auto i = rng.uniform<std::size_t>(0, inst.values.size() - 1), j = rng.uniform<std::size_t>(0, inst.values.size() - 1);
            if (i / 3 == j / 3 || inst.values[i] + 1 > hi || inst.values[j] - 1 < lo)
                continue;
            ++inst.values[i];
            --inst.values[j];
            break;
        }
    }
    std::shuffle(inst.values.begin(), inst.values.end(), rng);
    return inst;
}

// ---------------------------------------------------------------------------
// Exact 3-Cover

struct X3CInstance {
    int universe = 0;
    std::vector<std::array<int, 3>> sets;
};

inline void validate(const X3CInstance & inst)
{
    if (inst.universe <= 0 || inst.universe % 3 != 0)
        throw InvalidInput("X3C universe size must be a positive multiple of 3");
    if (static_cast<int>(inst.sets.size()) < inst.universe / 3)
        throw InvalidInput("X3C needs at least n/3 sets");
    for (const auto & s : inst.sets) {
        for (int e : s)
            if (e < 0 || e >= inst.universe)
                throw InvalidInput("X3C element out of range");
        if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
            throw InvalidInput("X3C sets must have three distinct elements");
    }
}

struct StarLayout {
    Vertex center = -1;
    VertexSet leaves;
};

struct X3CReduction {
    Graph host;
    Graph pattern;
    struct Tree {
        Vertex center = -1;
        VertexSet leaves;                         // all 4n+6 neighbours of the centre
        VertexSet plain_leaves;                   // the 4n leaves without pendants
        std::vector<StarLayout> low_hubs, high_hubs; // per element of the set: n+i and 3n-i pendants
    };
    std::vector<Tree> trees;
    std::vector<StarLayout> cover_stars;  // n/3 copies of K_{1,4n}
    std::vector<StarLayout> filler_stars; // |C| - n/3 copies of K_{1,4n+6}
    std::vector<StarLayout> element_low, element_high; // K_{1,n+i}, K_{1,3n-i}
};

namespace detail {

    struct GraphBuilder {
        int n = 0;
        std::vector<Edge> edges;

        Vertex add() { return n++; }

        StarLayout star(int leaves)
        {
            StarLayout s{add(), {}};
            for (int i = 0; i < leaves; ++i) {
                Vertex l = add();
                s.leaves.push_back(l);
                edges.emplace_back(s.center, l);
            }
            return s;
        }

        Graph build() const { return Graph(n, edges); }
    };

} // namespace detail

inline X3CReduction reduce_x3c(const X3CInstance & inst)
{
    validate(inst);
    const int n = inst.universe;
    X3CReduction out;
    detail::GraphBuilder host;
    for (const auto & set : inst.sets) {
        X3CReduction::Tree tree;
        auto star = host.star(4 * n + 6);
        tree.center = star.center;
        tree.leaves = star.leaves;
        std::array<int, 3> elements = set;
        std::sort(elements.begin(), elements.end());
        std::size_t next = 0;
        for (int i : elements) {
            auto attach = [&](int pendants) {
                StarLayout hub{tree.leaves[next++], {}};
                for (int p = 0; p < pendants; ++p) {
                    Vertex v = host.add();
                    hub.leaves.push_back(v);
                    host.edges.emplace_back(hub.center, v);
                }
                return hub;
            };
            tree.low_hubs.push_back(attach(n + i));
            tree.high_hubs.push_back(attach(3 * n - i));
        }
        tree.plain_leaves.assign(tree.leaves.begin() + static_cast<std::ptrdiff_t>(next), tree.leaves.end());
        out.trees.push_back(std::move(tree));
    }
    detail::GraphBuilder pattern;
    for (int t = 0; t < n / 3; ++t)
        out.cover_stars.push_back(pattern.star(4 * n));
    for (int t = 0; t < static_cast<int>(inst.sets.size()) - n / 3; ++t)
        out.filler_stars.push_back(pattern.star(4 * n + 6));
    for (int i = 0; i < n; ++i) {
        out.element_low.push_back(pattern.star(n + i));
        out.element_high.push_back(pattern.star(3 * n - i));
    }
    out.host = host.build();
    out.pattern = pattern.build();
    return out;
}

/// Set indices of an exact cover. Exhaustive; n <= 9.
inline std::optional<std::vector<int>> solve_x3c(const X3CInstance & inst)
{
    validate(inst);
    if (inst.universe > 9)
        throw InvalidInput("X3C brute force is capped at n <= 9");
    std::vector<char> covered(static_cast<std::size_t>(inst.universe), 0);
    std::vector<int> chosen;
    std::function<bool()> search = [&]() {
        int e = 0;
        while (e < inst.universe && covered[static_cast<std::size_t>(e)])
            ++e;
        if (e == inst.universe)
            return true;
        for (std::size_t s = 0; s < inst.sets.size(); ++s) {
            const auto & set = inst.sets[s];
            if (std::find(set.begin(), set.end(), e) == set.end())
                continue;
            if (covered[static_cast<std::size_t>(set[0])] || covered[static_cast<std::size_t>(set[1])] ||
                covered[static_cast<std::size_t>(set[2])])
                continue;
            for (int x : set)
                covered[static_cast<std::size_t>(x)] = 1;
            chosen.push_back(static_cast<int>(s));
            if (search())
                return true;
            chosen.pop_back();
            for (int x : set)
                covered[static_cast<std::size_t>(x)] = 0;
        }
        return false;
    };
    if (search())
        return chosen;
    return std::nullopt;
}

/// Embedding of the reduced pattern given an exact cover (set indices).
inline Embedding build_x3c_witness(const X3CInstance & inst, const X3CReduction & red, const std::vector<int> & cover)
{
    validate(inst);
    const int n = inst.universe;
    std::vector<char> in_cover(inst.sets.size(), 0), covered(static_cast<std::size_t>(n), 0);
    if (static_cast<int>(cover.size()) != n / 3)
        throw InvalidInput("an exact cover has n/3 sets");
    for (int s : cover) {
        if (s < 0 || s >= static_cast<int>(inst.sets.size()) || in_cover[static_cast<std::size_t>(s)])
            throw InvalidInput("cover refers to an invalid or repeated set");
        in_cover[static_cast<std::size_t>(s)] = 1;
        for (int e : inst.sets[static_cast<std::size_t>(s)]) {
            if (covered[static_cast<std::size_t>(e)])
                throw InvalidInput("cover sets overlap");
            covered[static_cast<std::size_t>(e)] = 1;
        }
    }
    Embedding image(static_cast<std::size_t>(red.pattern.order()), -1);
    auto map_star = [&](const StarLayout & from, Vertex center, const VertexSet & leaves) {
        image[static_cast<std::size_t>(from.center)] = center;
        for (std::size_t i = 0; i < from.leaves.size(); ++i)
            image[static_cast<std::size_t>(from.leaves[i])] = leaves[i];
    };
    std::size_t next_cover = 0, next_filler = 0;
    for (std::size_t s = 0; s < inst.sets.size(); ++s) {
        const auto & tree = red.trees[s];
        if (!in_cover[s]) {
            map_star(red.filler_stars[next_filler++], tree.center, tree.leaves);
            continue;
        }
        map_star(red.cover_stars[next_cover++], tree.center, tree.plain_leaves);
        std::array<int, 3> elements = inst.sets[s];
        std::sort(elements.begin(), elements.end());
        for (std::size_t t = 0; t < 3; ++t) {
            const int i = elements[t];
            map_star(red.element_low[static_cast<std::size_t>(i)], tree.low_hubs[t].center, tree.low_hubs[t].leaves);
            map_star(red.element_high[static_cast<std::size_t>(i)], tree.high_hubs[t].center, tree.high_hubs[t].leaves);
        }
    }
    return image;
}

inline X3CInstance parse_x3c(std::istream & in)
{
    X3CInstance inst;
    if (!(in >> inst.universe))
        throw InvalidInput("X3C input must start with n");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<int> items;
        int x;
        while (ls >> x)
            items.push_back(x);
        if (items.empty())
            continue;
        if (items.size() != 3)
            throw InvalidInput("X3C set lines need exactly three elements");
        inst.sets.push_back({items[0], items[1], items[2]});
    }
    validate(inst);
    return inst;
}

/// Random instance with `extra` sets beyond a planted cover (when `planted`)
/// or `n/3 + extra` uniformly random sets.
inline X3CInstance random_x3c(int n, int extra, Rng & rng, bool planted = true)
{
    X3CInstance inst{n, {}};
    auto random_set = [&]() {
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        return std::array<int, 3>{all[0], all[1], all[2]};
    };
    if (planted) {
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        for (int t = 0; t < n / 3; ++t)
            inst.sets.push_back({all[static_cast<std::size_t>(3 * t)], all[static_cast<std::size_t>(3 * t + 1)],
                all[static_cast<std::size_t>(3 * t + 2)]});
    }
    else
        for (int t = 0; t < n / 3; ++t)
            inst.sets.push_back(random_set());
    for (int t = 0; t < extra; ++t)
        inst.sets.push_back(random_set());
    std::shuffle(inst.sets.begin(), inst.sets.end(), rng);
    validate(inst);
    return inst;
}

// ---------------------------------------------------------------------------
// 3-SAT(2,1)

/// Literals are signed 1-based variable numbers.
struct Sat21Formula {
    int variables = 0;
    std::vector<std::vector<int>> clauses;
};

inline void validate(const Sat21Formula & f)
{
    if (f.variables <= 0)
        throw InvalidInput("formula needs at least one variable");
    std::vector<int> positive(static_cast<std::size_t>(f.variables), 0), negative(static_cast<std::size_t>(f.variables), 0);
    for (const auto & c : f.clauses) {
        if (c.size() < 2 || c.size() > 3)
            throw InvalidInput("clauses must have two or three literals");
        for (int lit : c) {
            if (lit == 0 || std::abs(lit) > f.variables)
                throw InvalidInput("literal out of range");
            ++(lit > 0 ? positive : negative)[static_cast<std::size_t>(std::abs(lit) - 1)];
        }
    }
    for (int v = 0; v < f.variables; ++v)
        if (positive[static_cast<std::size_t>(v)] != 2 || negative[static_cast<std::size_t>(v)] != 1)
            throw InvalidInput("each variable must occur twice positively and once negatively");
}

inline bool satisfies(const Sat21Formula & f, const std::vector<bool> & assignment)
{
    for (const auto & c : f.clauses) {
        bool ok = false;
        for (int lit : c)
            ok = ok || assignment[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
        if (!ok)
            return false;
    }
    return true;
}

struct DoubleStarLayout {
    Vertex center_a = -1, center_b = -1;
    VertexSet leaves_a, leaves_b;
    int order() const { return static_cast<int>(2 + leaves_a.size() + leaves_b.size()); }
};

struct Sat21Reduction {
    Graph host;
    Graph pattern;
    std::int64_t pendant_unit = 0; // N
    Vertex c = -1, c_prime = -1, d = -1, d_prime = -1;
    std::vector<DoubleStarLayout> positive, negative; // D_i and its complement copy
    struct ClauseStar {
        int variable = 0;
        bool positive_literal = true;
        Vertex center = -1;
        VertexSet to_c, to_c_prime;
    };
    std::vector<std::vector<ClauseStar>> clause_stars; // per clause, the host stars assigned to it
    VertexSet c_pendants, c_prime_pendants;
    std::vector<DoubleStarLayout> pattern_double_stars; // B_i
    struct ClausePattern {
        Vertex center = -1;
        VertexSet to_d, to_d_prime;
    };
    std::vector<ClausePattern> clause_patterns; // F_j
    VertexSet d_pendants, d_prime_pendants;
};

namespace detail {

    inline DoubleStarLayout add_double_star(GraphBuilder & b, int a, int c)
    {
        DoubleStarLayout d;
        auto left = b.star(a);
        auto right = b.star(c);
        d.center_a = left.center;
        d.center_b = right.center;
        d.leaves_a = left.leaves;
        d.leaves_b = right.leaves;
        b.edges.emplace_back(d.center_a, d.center_b);
        return d;
    }

} // namespace detail

/// Requires n >= 4 so that every star side has at least 4n leaves.
inline Sat21Reduction reduce_3sat21(const Sat21Formula & f)
{
    validate(f);
    const int n = f.variables;
    if (n < 4)
        throw InvalidInput("the 3-SAT(2,1) reduction needs at least 4 variables");
    const auto m = static_cast<int>(f.clauses.size());
    Sat21Reduction out;
    out.pendant_unit = 4LL * n * n * n + 2LL * n + 2;
    out.clause_stars.assign(static_cast<std::size_t>(m), {});

    std::vector<std::vector<int>> pos_clauses(static_cast<std::size_t>(n)), neg_clause(static_cast<std::size_t>(n));
    for (int j = 0; j < m; ++j)
        for (int lit : f.clauses[static_cast<std::size_t>(j)])
            (lit > 0 ? pos_clauses : neg_clause)[static_cast<std::size_t>(std::abs(lit) - 1)].push_back(j);

    detail::GraphBuilder host;
    out.c = host.add();
    out.c_prime = host.add();
    auto wire = [&](int variable, bool positive, Vertex center, const VertexSet & leaves, int h) {
        Sat21Reduction::ClauseStar cs{variable, positive, center, {}, {}};
        std::size_t next = 0;
        for (int t = 0; t < n + h; ++t) {
            cs.to_c.push_back(leaves[next]);
            host.edges.emplace_back(leaves[next++], out.c);
        }
        for (int t = 0; t < 3 * n - h; ++t) {
            cs.to_c_prime.push_back(leaves[next]);
            host.edges.emplace_back(leaves[next++], out.c_prime);
        }
        out.clause_stars[static_cast<std::size_t>(h)].push_back(std::move(cs));
    };
    for (int i = 0; i < n; ++i) {
        auto d = detail::add_double_star(host, (n + i) * n, (3 * n - i) * n);
        auto dbar = detail::add_double_star(host, (n + i) * n, (3 * n - i) * n);
        const auto & pc = pos_clauses[static_cast<std::size_t>(i)];
        wire(i, true, d.center_a, d.leaves_a, pc[0]);
        wire(i, true, d.center_b, d.leaves_b, pc[1]);
        wire(i, false, dbar.center_a, dbar.leaves_a, neg_clause[static_cast<std::size_t>(i)][0]);
        out.positive.push_back(std::move(d));
        out.negative.push_back(std::move(dbar));
    }
    for (std::int64_t t = 0; t < out.pendant_unit; ++t) {
        Vertex v = host.add();
        out.c_pendants.push_back(v);
        host.edges.emplace_back(out.c, v);
    }
    for (std::int64_t t = 0; t < 2 * out.pendant_unit; ++t) {
        Vertex v = host.add();
        out.c_prime_pendants.push_back(v);
        host.edges.emplace_back(out.c_prime, v);
    }

    detail::GraphBuilder pattern;
    out.d = pattern.add();
    out.d_prime = pattern.add();
    for (int i = 0; i < n; ++i)
        out.pattern_double_stars.push_back(detail::add_double_star(pattern, (n + i) * n, (3 * n - i) * n));
    for (int j = 0; j < m; ++j) {
        auto star = pattern.star(4 * n);
        Sat21Reduction::ClausePattern cp{star.center, {}, {}};
        for (int t = 0; t < 4 * n; ++t) {
            Vertex leaf = star.leaves[static_cast<std::size_t>(t)];
            if (t < n + j) {
                cp.to_d.push_back(leaf);
                pattern.edges.emplace_back(leaf, out.d);
            }
            else {
                cp.to_d_prime.push_back(leaf);
                pattern.edges.emplace_back(leaf, out.d_prime);
            }
        }
        out.clause_patterns.push_back(std::move(cp));
    }
    for (std::int64_t t = 0; t < out.pendant_unit; ++t) {
        Vertex v = pattern.add();
        out.d_pendants.push_back(v);
        pattern.edges.emplace_back(out.d, v);
    }
    for (std::int64_t t = 0; t < 2 * out.pendant_unit; ++t) {
        Vertex v = pattern.add();
        out.d_prime_pendants.push_back(v);
        pattern.edges.emplace_back(out.d_prime, v);
    }
    out.host = host.build();
    out.pattern = pattern.build();
    return out;
}

/// A satisfying assignment. Exhaustive; at most 12 variables.
inline std::optional<std::vector<bool>> solve_sat21(const Sat21Formula & f)
{
    validate(f);
    if (f.variables > 12)
        throw InvalidInput("3-SAT(2,1) brute force is capped at 12 variables");
    std::vector<bool> a(static_cast<std::size_t>(f.variables));
    for (std::uint32_t mask = 0; mask < (1u << f.variables); ++mask) {
        for (int v = 0; v < f.variables; ++v)
            a[static_cast<std::size_t>(v)] = mask >> v & 1;
        if (satisfies(f, a))
            return a;
    }
    return std::nullopt;
}

/// Embedding of the reduced pattern given a satisfying assignment.
inline Embedding build_3sat21_witness(const Sat21Formula & f, const Sat21Reduction & red, const std::vector<bool> & assignment)
{
    if (static_cast<int>(assignment.size()) != f.variables || !satisfies(f, assignment))
        throw InvalidInput("assignment does not satisfy the formula");
    Embedding image(static_cast<std::size_t>(red.pattern.order()), -1);
    auto put = [&](Vertex from, Vertex to) { image[static_cast<std::size_t>(from)] = to; };
    auto put_all = [&](const VertexSet & from, const VertexSet & to) {
        for (std::size_t i = 0; i < from.size(); ++i)
            put(from[i], to[i]);
    };
    put(red.d, red.c);
    put(red.d_prime, red.c_prime);
    put_all(red.d_pendants, red.c_pendants);
    put_all(red.d_prime_pendants, red.c_prime_pendants);
    for (int i = 0; i < f.variables; ++i) {
        const auto & b = red.pattern_double_stars[static_cast<std::size_t>(i)];
        const auto & target = assignment[static_cast<std::size_t>(i)] ? red.negative[static_cast<std::size_t>(i)]
                                                                       : red.positive[static_cast<std::size_t>(i)];
        put(b.center_a, target.center_a);
        put(b.center_b, target.center_b);
        put_all(b.leaves_a, target.leaves_a);
        put_all(b.leaves_b, target.leaves_b);
    }
    for (std::size_t j = 0; j < red.clause_patterns.size(); ++j) {
        const Sat21Reduction::ClauseStar * pick = nullptr;
        for (const auto & cs : red.clause_stars[j])
            if (assignment[static_cast<std::size_t>(cs.variable)] == cs.positive_literal) {
                pick = &cs;
                break;
            }
        if (!pick)
            throw std::logic_error("satisfied clause without a free gadget star");
        const auto & cp = red.clause_patterns[j];
        put(cp.center, pick->center);
        put_all(cp.to_d, pick->to_c);
        put_all(cp.to_d_prime, pick->to_c_prime);
    }
    return image;
}

/// DIMACS-style clauses: optional `p cnf n m` header, `c` comments, clause
/// lines of signed literals with an optional trailing 0.
inline Sat21Formula parse_sat21(std::istream & in)
{
    Sat21Formula f;
    int max_var = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first == "c")
            continue;
        if (first == "p") {
            std::string kind;
            int m = 0;
            if (!(ls >> kind >> f.variables >> m) || kind != "cnf")
                throw InvalidInput("malformed header line: " + line);
            continue;
        }
        std::vector<int> clause;
        std::istringstream all(line);
        int lit;
        while (all >> lit) {
            if (lit == 0)
                break;
            clause.push_back(lit);
            max_var = std::max(max_var, std::abs(lit));
        }
        if (all.fail() && !all.eof())
            throw InvalidInput("malformed clause line: " + line);
        f.clauses.push_back(std::move(clause));
    }
    if (f.variables == 0)
        f.variables = max_var;
    validate(f);
    return f;
}

/// Random formula: 2 positive and 1 negative occurrence per variable,
/// shuffled into clauses of size 2 or 3.
inline Sat21Formula random_sat21(int variables, Rng & rng)
{
    Sat21Formula f;
    f.variables = variables;
    std::vector<int> literals;
    for (int v = 1; v <= variables; ++v) {
        literals.push_back(v);
        literals.push_back(v);
        literals.push_back(-v);
    }
    std::shuffle(literals.begin(), literals.end(), rng);
    std::size_t next = 0;
    while (next < literals.size()) {
        std::size_t left = literals.size() - next;
        std::size_t size = left == 4 ? 2 : (left <= 3 ? left : (rng.coin(0.5) ? 2 : 3));
        f.clauses.emplace_back(literals.begin() + static_cast<std::ptrdiff_t>(next),
            literals.begin() + static_cast<std::ptrdiff_t>(next + size));
        next += size;
    }
    validate(f);
    return f;
}

} // namespace mfsi

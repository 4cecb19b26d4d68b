#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "mfsi/graph.hpp"
#include "mfsi/paths.hpp"

namespace mfsi {

/// Witness that g has vertex integrity at most k: |deletion_set| <= k and every
/// component of g - deletion_set has order <= k - |deletion_set|.
struct ViCertificate {
    int k = 0;
    VertexSet deletion_set;
};

inline bool is_vi_set(const Graph & g, const VertexSet & s, int k)
{
    const int size = static_cast<int>(s.size());
    if (size > k)
        return false;
    return max_component_order(g, membership(g.order(), s)) <= k - size;
}

inline bool validate(const Graph & g, const ViCertificate & cert)
{
    return is_vi_set(g, cert.deletion_set, cert.k);
}

namespace detail {

    // First `count` vertices of a BFS from comp[0], restricted to g - removed.
    inline VertexSet bfs_prefix(const Graph & g, const VertexSet & comp, const std::vector<char> & removed, int count)
    {
        VertexSet order{comp.front()};
        std::vector<char> seen(g.order(), 0);
        seen[comp.front()] = 1;
        for (std::size_t i = 0; i < order.size() && static_cast<int>(order.size()) < count; ++i)
            for (Vertex w : g.neighbors(order[i]))
                if (!seen[w] && !removed[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                    if (static_cast<int>(order.size()) == count)
                        break;
                }
        return order;
    }

    // Branching over connected (budget+1)-vertex sets of oversized components.
    // `visit` is called on every set reached that is already a vi(k) set and
    // returns true to stop the search.
    template <class Visit>
    bool vi_branch(const Graph & g, int k, std::vector<char> & removed, VertexSet & chosen, Visit & visit)
    {
        const int budget = k - static_cast<int>(chosen.size());
        const VertexSet * oversized = nullptr;
        auto comps = components(g, removed);
        for (const auto & c : comps)
            if (static_cast<int>(c.size()) > budget) {
                oversized = &c;
                break;
            }
        if (!oversized)
            return visit(chosen);
        if (budget <= 0)
            return false;
        for (Vertex x : bfs_prefix(g, *oversized, removed, budget + 1)) {
            removed[x] = 1;
            chosen.push_back(x);
            bool stop = vi_branch(g, k, removed, chosen, visit);
            chosen.pop_back();
            removed[x] = 0;
            if (stop)
                return true;
        }
        return false;
    }

} // namespace detail

/// A vi(k) set of g, or nullopt if the vertex integrity of g exceeds k.
inline std::optional<ViCertificate> find_vi_set(const Graph & g, int k)
{
    if (k < 1)
        throw InvalidInput("vertex integrity parameter must be >= 1");
    std::vector<char> removed(g.order(), 0);
    VertexSet chosen;
    std::optional<ViCertificate> found;
    auto visit = [&](const VertexSet & s) {
        VertexSet sorted = s;
        std::sort(sorted.begin(), sorted.end());
        found = ViCertificate{k, std::move(sorted)};
        return true;
    };
    detail::vi_branch(g, k, removed, chosen, visit);
    return found;
}

/// Every inclusion-minimal vi(k) set of g, sorted, without duplicates.
inline std::vector<VertexSet> enumerate_minimal_vi_sets(const Graph & g, int k)
{
    if (k < 1)
        throw InvalidInput("vertex integrity parameter must be >= 1");
    std::set<VertexSet> leaves;
    std::vector<char> removed(g.order(), 0);
    VertexSet chosen;
    auto visit = [&](const VertexSet & s) {
        VertexSet sorted = s;
        std::sort(sorted.begin(), sorted.end());
        leaves.insert(std::move(sorted));
        return false;
    };
    detail::vi_branch(g, k, removed, chosen, visit);

    // The branching reaches every minimal set but may also stop at supersets.
    std::vector<VertexSet> minimal;
    for (const auto & s : leaves) {
        bool is_minimal = true;
        const int size = static_cast<int>(s.size());
        for (unsigned mask = 0; is_minimal && mask + 1 < (1u << size); ++mask) {
            VertexSet sub;
            for (int i = 0; i < size; ++i)
                if (mask & (1u << i))
                    sub.push_back(s[i]);
            if (is_vi_set(g, sub, k))
                is_minimal = false;
        }
        if (is_minimal)
            minimal.push_back(s);
    }
    return minimal;
}

/// A set T with |T| <= k such that g - T has no P4, found by four-way
/// branching on P4 subgraphs.
inline std::optional<VertexSet> find_p4_hitting_set(const Graph & g, int k, std::vector<char> removed = {})
{
    if (k < 0)
        throw InvalidInput("hitting set budget must be >= 0");
    if (removed.empty())
        removed.assign(g.order(), 0);
    auto p4 = find_path(g, 4, removed);
    if (!p4) {
        VertexSet out;
        for (Vertex v = 0; v < g.order(); ++v)
            if (removed[v])
                out.push_back(v);
        return out;
    }
    if (k == 0)
        return std::nullopt;
    for (Vertex v : *p4) {
        removed[v] = 1;
        if (auto t = find_p4_hitting_set(g, k - 1, removed))
            return t;
        removed[v] = 0;
    }
    return std::nullopt;
}

/// Greedily deletes the vertices of up to k-1 P3 subgraphs. If what remains
/// has components of order <= 2, the deleted set certifies vertex integrity
/// <= 3k-1; otherwise g contains k disjoint P3s.
inline std::optional<ViCertificate> kp3_free_vi_bound(const Graph & g, int k)
{
    if (k < 1)
        throw InvalidInput("kP3 parameter must be >= 1");
    std::vector<char> removed(g.order(), 0);
    VertexSet deleted;
    for (int round = 0; round < k - 1; ++round) {
        auto p3 = find_path(g, 3, removed);
        if (!p3)
            break;
        for (Vertex v : *p3) {
            removed[v] = 1;
            deleted.push_back(v);
        }
    }
    if (max_component_order(g, removed) > 2)
        return std::nullopt;
    std::sort(deleted.begin(), deleted.end());
    return ViCertificate{3 * k - 1, deleted};
}

// ---------------------------------------------------------------------------
// Twin classes

struct TwinPartition {
    enum class Kind { Complete, Independent };
    std::vector<VertexSet> classes;
    std::vector<Kind> kinds;
    std::vector<std::vector<char>> adjacent; // symmetric, over classes
    std::vector<int> class_of;               // per vertex

    int size() const { return static_cast<int>(classes.size()); }
};

/// N(u) \ {v} == N(v) \ {u}
inline bool are_twins(const Graph & g, Vertex u, Vertex v)
{
    const auto & a = g.neighbors(u);
    const auto & b = g.neighbors(v);
    std::size_t i = 0, j = 0;
    while (true) {
        while (i < a.size() && a[i] == v)
            ++i;
        while (j < b.size() && b[j] == u)
            ++j;
        if (i == a.size() || j == b.size())
            return i == a.size() && j == b.size();
        if (a[i] != b[j])
            return false;
        ++i;
        ++j;
    }
}

/// Coarsest partition of V(g) into classes of pairwise twins. Twinship is an
/// equivalence relation, so comparing against one representative per class
/// suffices. Singleton classes are tagged Independent.
inline TwinPartition twin_partition(const Graph & g)
{
    TwinPartition p;
    p.class_of.assign(g.order(), -1);
    for (Vertex v = 0; v < g.order(); ++v) {
        for (int c = 0; c < p.size(); ++c)
            if (are_twins(g, p.classes[c].front(), v)) {
                p.classes[c].push_back(v);
                p.class_of[v] = c;
                break;
            }
        if (p.class_of[v] < 0) {
            p.class_of[v] = p.size();
            p.classes.push_back({v});
        }
    }
    for (const auto & c : p.classes)
        p.kinds.push_back(c.size() >= 2 && g.has_edge(c[0], c[1]) ? TwinPartition::Kind::Complete
                                                                 : TwinPartition::Kind::Independent);
    p.adjacent.assign(p.size(), std::vector<char>(p.size(), 0));
    for (int a = 0; a < p.size(); ++a)
        for (int b = a + 1; b < p.size(); ++b)
            p.adjacent[a][b] = p.adjacent[b][a] = g.has_edge(p.classes[a][0], p.classes[b][0]);
    return p;
}

} // namespace mfsi

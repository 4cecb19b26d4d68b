#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "mfsi/errors.hpp"

namespace mfsi {

using Vertex = int;
using VertexSet = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

/// Pattern vertex i is sent to host vertex embedding[i].
using Embedding = std::vector<Vertex>;

/// Simple undirected graph on vertices 0..n-1. Neighbour lists are kept sorted,
/// so membership tests are logarithmic and iteration order is deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(checked_size(n)) {}

    Graph(int n, const std::vector<Edge> & edges) : Graph(n)
    {
        for (auto [u, v] : edges)
            add_edge(u, v);
    }

    int order() const noexcept { return static_cast<int>(adj_.size()); }
    std::int64_t size() const noexcept { return edge_count_; }

    /// Rejects loops, duplicates and out-of-range endpoints.
    void add_edge(Vertex u, Vertex v)
    {
        if (u < 0 || v < 0 || u >= order() || v >= order())
            throw InvalidInput("edge endpoint out of range: " + std::to_string(u) + "," + std::to_string(v));
        if (u == v)
            throw InvalidInput("self-loop at vertex " + std::to_string(u));
        if (!insert_sorted(adj_[u], v))
            throw InvalidInput("duplicate edge " + std::to_string(u) + "," + std::to_string(v));
        insert_sorted(adj_[v], u);
        ++edge_count_;
    }

    /// Appends an isolated vertex and returns its id.
    Vertex add_vertex()
    {
        adj_.emplace_back();
        return order() - 1;
    }

    bool has_edge(Vertex u, Vertex v) const
    {
        const auto & a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), other);
    }

    const std::vector<Vertex> & neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    /// All edges (u < v), lexicographically sorted.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(edge_count_));
        for (Vertex u = 0; u < order(); ++u)
            for (Vertex v : adj_[u])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph & a, const Graph & b) { return a.adj_ == b.adj_; }

private:
    static std::size_t checked_size(int n)
    {
        if (n < 0)
            throw InvalidInput("negative vertex count");
        return static_cast<std::size_t>(n);
    }

    static bool insert_sorted(std::vector<Vertex> & list, Vertex v)
    {
        if (list.empty() || list.back() < v) {
            list.push_back(v);
            return true;
        }
        auto it = std::lower_bound(list.begin(), list.end(), v);
        if (it != list.end() && *it == v)
            return false;
        list.insert(it, v);
        return true;
    }

    std::vector<std::vector<Vertex>> adj_;
    std::int64_t edge_count_ = 0;
};

/// Subgraph induced by `vertices`; the new id of vertices[i] is i.
inline Graph induced_subgraph(const Graph & g, const VertexSet & vertices)
{
    std::vector<int> local(g.order(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        local[vertices[i]] = static_cast<int>(i);
    Graph h(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (Vertex w : g.neighbors(vertices[i]))
            if (local[w] > static_cast<int>(i))
                h.add_edge(static_cast<int>(i), local[w]);
    return h;
}

/// Relabel so that old vertex v becomes perm[v].
inline Graph relabel(const Graph & g, const std::vector<Vertex> & perm)
{
    Graph h(g.order());
    for (auto [u, v] : g.edges())
        h.add_edge(perm[u], perm[v]);
    return h;
}

// ---------------------------------------------------------------------------
// Named families

inline Graph path_graph(int n)
{
    if (n <= 0)
        throw InvalidInput("path order must be positive");
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

inline Graph clique(int n)
{
    if (n <= 0)
        throw InvalidInput("clique order must be positive");
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

/// K_{1,leaves}; the centre is vertex 0.
inline Graph star(int leaves)
{
    if (leaves <= 0)
        throw InvalidInput("star needs at least one leaf");
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i)
        g.add_edge(0, i);
    return g;
}

/// D_{a,b}: centres 0 and 1, then a leaves on 0, then b leaves on 1.
inline Graph double_star(int a, int b)
{
    if (a <= 0 || b <= 0)
        throw InvalidInput("double star needs positive leaf counts");
    Graph g(a + b + 2);
    g.add_edge(0, 1);
    for (int i = 0; i < a; ++i)
        g.add_edge(0, 2 + i);
    for (int i = 0; i < b; ++i)
        g.add_edge(1, 2 + a + i);
    return g;
}

inline Graph cycle_graph(int n)
{
    if (n < 3)
        throw InvalidInput("cycle needs at least three vertices");
    Graph g = path_graph(n);
    g.add_edge(0, n - 1);
    return g;
}

/// Disjoint union; the parts are laid out consecutively in the given order.
inline Graph disjoint_union(const std::vector<Graph> & parts)
{
    int n = 0;
    for (const auto & p : parts)
        n += p.order();
    Graph g(n);
    int offset = 0;
    for (const auto & p : parts) {
        for (auto [u, v] : p.edges())
            g.add_edge(offset + u, offset + v);
        offset += p.order();
    }
    return g;
}

inline Graph copies(int count, const Graph & g)
{
    return disjoint_union(std::vector<Graph>(static_cast<std::size_t>(count), g));
}

inline Graph complement(const Graph & g)
{
    Graph h(g.order());
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (!g.has_edge(u, v))
                h.add_edge(u, v);
    return h;
}

/// Recursive description of a named graph family.
struct Family {
    enum class Kind { Path, Clique, Star, DoubleStar, DisjointUnion, Complement };
    Kind kind;
    int a = 0;
    int b = 0;
    std::vector<Family> children;

    static Family path(int n) { return {Kind::Path, n, 0, {}}; }
    static Family clique(int n) { return {Kind::Clique, n, 0, {}}; }
    static Family star(int leaves) { return {Kind::Star, leaves, 0, {}}; }
    static Family double_star(int a, int b) { return {Kind::DoubleStar, a, b, {}}; }
    static Family disjoint_union(std::vector<Family> parts) { return {Kind::DisjointUnion, 0, 0, std::move(parts)}; }
    static Family complement(Family of) { return {Kind::Complement, 0, 0, {std::move(of)}}; }
};

inline Graph make_family(const Family & f)
{
    switch (f.kind) {
    case Family::Kind::Path: return path_graph(f.a);
    case Family::Kind::Clique: return clique(f.a);
    case Family::Kind::Star: return star(f.a);
    case Family::Kind::DoubleStar: return double_star(f.a, f.b);
    case Family::Kind::DisjointUnion: {
        std::vector<Graph> parts;
        for (const auto & c : f.children)
            parts.push_back(make_family(c));
        return disjoint_union(parts);
    }
    case Family::Kind::Complement:
        if (f.children.size() != 1)
            throw InvalidInput("complement takes exactly one operand");
        return complement(make_family(f.children.front()));
    }
    throw InvalidInput("unknown family");
}

// ---------------------------------------------------------------------------
// Components

/// Connected components of g minus the vertices flagged in `removed` (may be
/// empty). Each component is sorted; the list is ordered by minimum vertex.
inline std::vector<VertexSet> components(const Graph & g, const std::vector<char> & removed = {})
{
    std::vector<VertexSet> out;
    std::vector<char> seen(g.order(), 0);
    auto is_removed = [&](Vertex v) { return !removed.empty() && removed[v]; };
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s] || is_removed(s))
            continue;
        VertexSet comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbors(v))
                if (!seen[w] && !is_removed(w)) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// Largest component order of g minus `removed` (0 for an empty graph).
inline int max_component_order(const Graph & g, const std::vector<char> & removed = {})
{
    int best = 0;
    for (const auto & c : components(g, removed))
        best = std::max(best, static_cast<int>(c.size()));
    return best;
}

inline std::vector<char> membership(int n, const VertexSet & set)
{
    std::vector<char> flags(n, 0);
    for (Vertex v : set)
        flags[v] = 1;
    return flags;
}

struct ComponentKind {
    enum class Tag { Singleton, Triangle, Star, Other };
    Tag tag = Tag::Other;
    int leaves = 0; // meaningful for Star only

    friend bool operator==(const ComponentKind &, const ComponentKind &) = default;
};

namespace detail {

    // Degrees inside `comp`, ignoring neighbours outside it.
    inline std::vector<int> internal_degrees(const Graph & g, const VertexSet & comp)
    {
        VertexSet sorted = comp;
        if (!std::is_sorted(sorted.begin(), sorted.end()))
            std::sort(sorted.begin(), sorted.end());
        std::vector<int> deg;
        deg.reserve(comp.size());
        for (Vertex v : comp) {
            int d = 0;
            for (Vertex w : g.neighbors(v))
                d += std::binary_search(sorted.begin(), sorted.end(), w);
            deg.push_back(d);
        }
        return deg;
    }

} // namespace detail

/// K1 / K3 / K_{1,l} recognition for a connected vertex set of g. K2 is Star(1).
inline ComponentKind classify_component(const Graph & g, const VertexSet & comp)
{
    using Tag = ComponentKind::Tag;
    const auto s = static_cast<std::int64_t>(comp.size());
    if (s == 1)
        return {Tag::Singleton, 0};
    std::int64_t degree_sum = 0;
    int max_degree = 0;
    for (int d : detail::internal_degrees(g, comp)) {
        degree_sum += d;
        max_degree = std::max(max_degree, d);
    }
    const std::int64_t edges = degree_sum / 2;
    if (s == 3 && edges == 3)
        return {Tag::Triangle, 0};
    if (edges == s - 1 && max_degree == s - 1)
        return {Tag::Star, static_cast<int>(s - 1)};
    return {Tag::Other, 0};
}

/// Centre of a Star component (for K2, the first listed vertex).
inline Vertex star_center(const Graph & g, const VertexSet & comp)
{
    if (comp.size() <= 2)
        return comp[0];
    auto deg = detail::internal_degrees(g, comp);
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (deg[i] == static_cast<int>(comp.size()) - 1)
            return comp[i];
    return comp[0];
}

/// P4-freeness in linear time: every component must be K1, K3 or a star.
inline bool is_p4_free(const Graph & g)
{
    for (const auto & c : components(g))
        if (classify_component(g, c).tag == ComponentKind::Tag::Other)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Witness checking

/// True iff e is an injective map V(q) -> V(g) sending every edge of q to an
/// edge of g.
inline bool verify_embedding(const Graph & q, const Graph & g, const Embedding & e)
{
    if (static_cast<int>(e.size()) != q.order())
        return false;
    std::vector<char> used(g.order(), 0);
    for (Vertex image : e) {
        if (image < 0 || image >= g.order() || used[image])
            return false;
        used[image] = 1;
    }
    for (Vertex u = 0; u < q.order(); ++u)
        for (Vertex v : q.neighbors(u))
            if (u < v && !g.has_edge(e[u], e[v]))
                return false;
    return true;
}

} // namespace mfsi

#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "mfsi/graph.hpp"

namespace mfsi {

namespace detail {

    // Depth-first extension of simple paths from `v`; returns true once `path`
    // holds k vertices.
    inline bool extend_path(const Graph & g, int k, const std::vector<char> & removed,
        std::vector<char> & on_path, std::vector<Vertex> & path)
    {
        if (static_cast<int>(path.size()) == k)
            return true;
        for (Vertex w : g.neighbors(path.back())) {
            if (on_path[w] || (!removed.empty() && removed[w]))
                continue;
            on_path[w] = 1;
            path.push_back(w);
            if (extend_path(g, k, removed, on_path, path))
                return true;
            path.pop_back();
            on_path[w] = 0;
        }
        return false;
    }

    inline std::optional<VertexSet> dfs_find_path(const Graph & g, int k, const std::vector<char> & removed)
    {
        std::vector<char> on_path(g.order(), 0);
        std::vector<Vertex> path;
        for (Vertex s = 0; s < g.order(); ++s) {
            if (!removed.empty() && removed[s])
                continue;
            path.assign(1, s);
            on_path[s] = 1;
            if (extend_path(g, k, removed, on_path, path))
                return path;
            on_path[s] = 0;
        }
        return std::nullopt;
    }

} // namespace detail

/// Vertices of some path on k vertices in g minus `removed`, in path order.
/// k <= 4 uses the K1/K3/star structure of P4-free graphs to stay linear.
inline std::optional<VertexSet> find_path(const Graph & g, int k, const std::vector<char> & removed = {})
{
    if (k <= 0)
        return VertexSet{};
    if (k > 4)
        return detail::dfs_find_path(g, k, removed);

    for (const auto & comp : components(g, removed)) {
        if (static_cast<int>(comp.size()) < k)
            continue;
        if (k == 1)
            return VertexSet{comp[0]};
        // Induced subgraph of the component tells us whether it is one of the
        // P4-free shapes; only the matching DFS is done locally.
        Graph local = induced_subgraph(g, comp);
        bool p4_free_shape = classify_component(local, [&] {
            VertexSet all(comp.size());
            std::iota(all.begin(), all.end(), 0);
            return all;
        }()).tag != ComponentKind::Tag::Other;
        if (k == 4 && p4_free_shape)
            continue;
        // Any component with >= k vertices that is not a P4-free shape has a
        // P_k for k <= 4; P4-free shapes with >= 3 vertices have a P3.
        std::vector<char> none;
        std::vector<char> on_path(local.order(), 0);
        std::vector<Vertex> path;
        for (Vertex s = 0; s < local.order(); ++s) {
            path.assign(1, s);
            on_path[s] = 1;
            if (detail::extend_path(local, k, none, on_path, path)) {
                for (auto & v : path)
                    v = comp[v];
                return path;
            }
            on_path[s] = 0;
        }
    }
    return std::nullopt;
}

/// Does g contain P_k as a subgraph (equivalently as a minor)? 1 <= k <= 8.
inline bool contains_path_subgraph(const Graph & g, int k)
{
    if (k < 1 || k > 8)
        throw InvalidInput("path length must be in [1, 8]");
    return find_path(g, k).has_value();
}

/// Is there a set of at most `budget` vertices whose removal destroys every P_k?
inline bool has_path_hitting_set(const Graph & g, int k, int budget, std::vector<char> removed = {})
{
    if (removed.empty())
        removed.assign(g.order(), 0);
    auto path = find_path(g, k, removed);
    if (!path)
        return true;
    if (budget == 0)
        return false;
    for (Vertex v : *path) {
        removed[v] = 1;
        if (has_path_hitting_set(g, k, budget - 1, removed))
            return true;
        removed[v] = 0;
    }
    return false;
}

namespace detail {

    // Vertex sets of all P5 subgraphs of g - removed that contain v.
    inline std::set<VertexSet> p5_sets_through(const Graph & g, Vertex v, const std::vector<char> & removed)
    {
        std::set<VertexSet> out;
        std::vector<char> on_path(g.order(), 0);
        std::vector<Vertex> path;
        std::function<void()> grow = [&] {
            if (path.size() == 5) {
                if (std::find(path.begin(), path.end(), v) != path.end()) {
                    VertexSet s = path;
                    std::sort(s.begin(), s.end());
                    out.insert(std::move(s));
                }
                return;
            }
            for (Vertex w : g.neighbors(path.back()))
                if (!on_path[w] && !removed[w]) {
                    on_path[w] = 1;
                    path.push_back(w);
                    grow();
                    path.pop_back();
                    on_path[w] = 0;
                }
        };
        // every P5 through v starts within distance 4 of v
        std::vector<int> dist(g.order(), -1);
        std::vector<Vertex> queue{v};
        dist[v] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            Vertex x = queue[i];
            if (dist[x] == 4)
                continue;
            for (Vertex w : g.neighbors(x))
                if (dist[w] < 0 && !removed[w]) {
                    dist[w] = dist[x] + 1;
                    queue.push_back(w);
                }
        }
        for (Vertex s : queue) {
            path.assign(1, s);
            on_path[s] = 1;
            grow();
            on_path[s] = 0;
        }
        return out;
    }

    // Exhaustive packing search: some path of any packing can be assumed to
    // meet the vertex set of an arbitrary P5, so branch on those.
    inline bool p5_packing_search(const Graph & g, int p, std::vector<char> & removed)
    {
        if (p == 0)
            return true;
        auto anchor = find_path(g, 5, removed);
        if (!anchor)
            return false;
        std::set<VertexSet> tried;
        for (Vertex v : *anchor)
            for (const auto & q : p5_sets_through(g, v, removed)) {
                if (!tried.insert(q).second)
                    continue;
                for (Vertex x : q)
                    removed[x] = 1;
                bool ok = p5_packing_search(g, p - 1, removed);
                for (Vertex x : q)
                    removed[x] = 0;
                if (ok)
                    return true;
            }
        return false;
    }

} // namespace detail

/// Does g contain p vertex-disjoint P5 subgraphs? Greedy packing gives a
/// quick yes, a P5-hitting set of size < p a quick no; otherwise exhaustive.
inline bool contains_disjoint_p5(const Graph & g, int p)
{
    if (p <= 0)
        return true;
    std::vector<char> removed(g.order(), 0);
    int found = 0;
    while (found < p) {
        auto path = find_path(g, 5, removed);
        if (!path)
            break;
        for (Vertex v : *path)
            removed[v] = 1;
        ++found;
    }
    if (found >= p)
        return true;
    if (has_path_hitting_set(g, 5, p - 1))
        return false;
    std::fill(removed.begin(), removed.end(), 0);
    return detail::p5_packing_search(g, p, removed);
}

} // namespace mfsi

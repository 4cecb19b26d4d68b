#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "mfsi/budget.hpp"
#include "mfsi/graph.hpp"
#include "mfsi/recognizers.hpp"

namespace mfsi {

namespace detail {

    // Largest component first; inside a component, start at a maximum-degree
    // vertex and keep picking the vertex with most already-placed neighbours
    // (then higher degree, then lower id).
    inline std::vector<Vertex> pattern_order(const Graph & q)
    {
        auto comps = components(q);
        std::stable_sort(comps.begin(), comps.end(),
            [](const VertexSet & a, const VertexSet & b) { return a.size() > b.size(); });
        std::vector<Vertex> order;
        std::vector<int> placed_neighbours(q.order(), 0);
        std::vector<char> placed(q.order(), 0);
        for (const auto & comp : comps) {
            for (std::size_t step = 0; step < comp.size(); ++step) {
                Vertex best = -1;
                for (Vertex v : comp) {
                    if (placed[v])
                        continue;
                    if (best < 0 || placed_neighbours[v] > placed_neighbours[best] ||
                        (placed_neighbours[v] == placed_neighbours[best] && q.degree(v) > q.degree(best)))
                        best = v;
                }
                placed[best] = 1;
                order.push_back(best);
                for (Vertex w : q.neighbors(best))
                    ++placed_neighbours[w];
            }
        }
        return order;
    }

    // Sorted degree sequence of q must be dominated by that of g.
    inline bool degree_sequence_fits(const Graph & q, const Graph & g)
    {
        std::vector<int> dq, dg;
        for (Vertex v = 0; v < q.order(); ++v)
            dq.push_back(q.degree(v));
        for (Vertex v = 0; v < g.order(); ++v)
            dg.push_back(g.degree(v));
        std::sort(dq.rbegin(), dq.rend());
        std::sort(dg.rbegin(), dg.rend());
        for (std::size_t i = 0; i < dq.size(); ++i)
            if (dq[i] > dg[i])
                return false;
        return true;
    }

} // namespace detail

/// Ground-truth subgraph isomorphism by depth-first search with degree and
/// neighbour-consistency pruning. Symmetry breaking keeps only the
/// lexicographically least solution of each orbit under twin swaps: images of
/// pattern twins increase in search order, and each image is the smallest
/// host vertex of its twin class not yet used. The budget counts search-tree
/// nodes.
inline std::optional<Embedding> solve_backtracking(const Graph & g, const Graph & q, SearchBudget & budget)
{
    if (q.order() > g.order() || q.size() > g.size() || !detail::degree_sequence_fits(q, g))
        return std::nullopt;
    if (q.order() == 0)
        return Embedding{};

    const auto order = detail::pattern_order(q);
    std::vector<int> position(q.order());
    for (std::size_t i = 0; i < order.size(); ++i)
        position[order[i]] = static_cast<int>(i);

    // For each pattern vertex: neighbours placed earlier, and twins placed earlier.
    std::vector<std::vector<Vertex>> earlier_neighbours(q.order()), earlier_twins(q.order());
    auto twins = twin_partition(q);
    for (Vertex u = 0; u < q.order(); ++u) {
        for (Vertex w : q.neighbors(u))
            if (position[w] < position[u])
                earlier_neighbours[u].push_back(w);
        for (Vertex w : twins.classes[twins.class_of[u]])
            if (w != u && position[w] < position[u])
                earlier_twins[u].push_back(w);
    }

    auto host_twins = twin_partition(g);

    Embedding image(q.order(), -1);
    std::vector<char> used(g.order(), 0);
    std::vector<Vertex> all_hosts(g.order());
    std::iota(all_hosts.begin(), all_hosts.end(), 0);

    std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == order.size())
            return true;
        const Vertex u = order[i];
        const auto & candidates =
            earlier_neighbours[u].empty() ? all_hosts : g.neighbors(image[earlier_neighbours[u].front()]);
        for (Vertex v : candidates) {
            if (used[v] || g.degree(v) < q.degree(u))
                continue;
            bool ok = true;
            for (Vertex w : earlier_neighbours[u])
                if (!g.has_edge(v, image[w])) {
                    ok = false;
                    break;
                }
            for (Vertex w : earlier_twins[u])
                if (image[w] > v) {
                    ok = false;
                    break;
                }
            for (Vertex t : host_twins.classes[host_twins.class_of[v]]) {
                if (t >= v)
                    break;
                if (!used[t]) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            budget.tick();
            image[u] = v;
            used[v] = 1;
            if (place(i + 1))
                return true;
            used[v] = 0;
            image[u] = -1;
        }
        return false;
    };
    if (place(0))
        return image;
    return std::nullopt;
}

inline std::optional<Embedding> solve_backtracking(const Graph & g, const Graph & q)
{
    SearchBudget unlimited;
    return solve_backtracking(g, q, unlimited);
}

} // namespace mfsi

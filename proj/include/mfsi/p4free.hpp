#pragma once

#include <optional>
#include <vector>

#include "mfsi/graph.hpp"

namespace mfsi {

namespace detail {

    // Components of a P4-free graph split by shape. Stars are stored centre
    // first; triangles in vertex order.
    struct P4FreeParts {
        std::vector<Vertex> isolated;
        std::vector<VertexSet> triangles;
        std::vector<VertexSet> stars;
    };

    inline P4FreeParts split_p4_free(const Graph & g, const char * role)
    {
        P4FreeParts parts;
        for (auto & comp : components(g)) {
            auto kind = classify_component(g, comp);
            switch (kind.tag) {
            case ComponentKind::Tag::Singleton: parts.isolated.push_back(comp.front()); break;
            case ComponentKind::Tag::Triangle: parts.triangles.push_back(std::move(comp)); break;
            case ComponentKind::Tag::Star: {
                Vertex c = star_center(g, comp);
                VertexSet ordered{c};
                for (Vertex v : comp)
                    if (v != c)
                        ordered.push_back(v);
                parts.stars.push_back(std::move(ordered));
                break;
            }
            case ComponentKind::Tag::Other:
                throw ClassViolation(std::string(role) + " graph contains a P4");
            }
        }
        return parts;
    }

    // Indices of `stars` ordered by leaf count, ascending (bucket sort).
    inline std::vector<std::size_t> by_leaf_count(const std::vector<VertexSet> & stars, int max_order)
    {
        std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(max_order) + 1);
        for (std::size_t i = 0; i < stars.size(); ++i)
            buckets[stars[i].size() - 1].push_back(i);
        std::vector<std::size_t> out;
        out.reserve(stars.size());
        for (const auto & b : buckets)
            out.insert(out.end(), b.begin(), b.end());
        return out;
    }

} // namespace detail

/// Subgraph isomorphism when host and pattern are both P4-free, in linear
/// time. Pattern triangles go to host triangles; surplus host triangles act as
/// K_{1,2}; pattern stars are matched in ascending size to the smallest host
/// star that is large enough. Throws ClassViolation if either graph has a P4.
inline std::optional<Embedding> solve_p4free(const Graph & g, const Graph & q)
{
    auto host = detail::split_p4_free(g, "host");
    auto pattern = detail::split_p4_free(q, "pattern");
    if (q.order() > g.order())
        return std::nullopt;
    if (pattern.triangles.size() > host.triangles.size())
        return std::nullopt;

    Embedding image(q.order(), -1);
    std::vector<char> used(g.order(), 0);
    auto assign = [&](Vertex u, Vertex v) {
        image[u] = v;
        used[v] = 1;
    };

    for (std::size_t t = 0; t < pattern.triangles.size(); ++t)
        for (int i = 0; i < 3; ++i)
            assign(pattern.triangles[t][i], host.triangles[t][i]);
    for (std::size_t t = pattern.triangles.size(); t < host.triangles.size(); ++t)
        host.stars.push_back(host.triangles[t]); // a triangle contains K_{1,2} centred at its first vertex

    if (pattern.stars.size() > host.stars.size())
        return std::nullopt;
    auto pattern_order = detail::by_leaf_count(pattern.stars, q.order());
    auto host_order = detail::by_leaf_count(host.stars, g.order());
    std::size_t h = 0;
    for (std::size_t pi : pattern_order) {
        const auto & ps = pattern.stars[pi];
        while (h < host_order.size() && host.stars[host_order[h]].size() < ps.size())
            ++h;
        if (h == host_order.size())
            return std::nullopt;
        const auto & hs = host.stars[host_order[h++]];
        for (std::size_t i = 0; i < ps.size(); ++i)
            assign(ps[i], hs[i]);
    }

    // |V(q)| <= |V(g)| leaves enough unused host vertices for isolated ones.
    Vertex next = 0;
    for (Vertex u : pattern.isolated) {
        while (used[next])
            ++next;
        assign(u, next);
    }
    return image;
}

} // namespace mfsi

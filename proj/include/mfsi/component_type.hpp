#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mfsi/graph.hpp"

namespace mfsi {

/// A small component together with each vertex's adjacency signature into a
/// root set (bit i set iff adjacent to root i), in canonical vertex order.
/// Two components get equal keys iff some isomorphism between them preserves
/// signatures.
struct ComponentType {
    std::string key;
    Graph graph;                   // on positions 0..order-1
    std::vector<unsigned> signature; // per position
    int order() const { return graph.order(); }
};

struct TypedComponent {
    ComponentType type;
    VertexSet order; // order[i] = original vertex placed at canonical position i
};

namespace detail {

    inline std::string encode_component(const std::vector<std::vector<char>> & adj, const std::vector<unsigned> & sig,
        const std::vector<int> & perm)
    {
        const std::size_t n = perm.size();
        std::string s;
        s.reserve(1 + 2 * n + n * n / 2);
        s.push_back(static_cast<char>(n));
        for (int p : perm) {
            s.push_back(static_cast<char>(sig[static_cast<std::size_t>(p)] & 0xff));
            s.push_back(static_cast<char>((sig[static_cast<std::size_t>(p)] >> 8) & 0xff));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                s.push_back(adj[static_cast<std::size_t>(perm[i])][static_cast<std::size_t>(perm[j])] ? '1' : '0');
        return s;
    }

} // namespace detail

/// Canonical type of `comp` inside h, where sig is indexed by vertex of h.
/// Brute force over orderings that respect the (signature, degree) blocks.
inline TypedComponent type_component(const Graph & h, const VertexSet & comp, const std::vector<unsigned> & sig)
{
    const std::size_t n = comp.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::vector<unsigned> local_sig(n);
    std::vector<int> degree(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        local_sig[i] = sig[static_cast<std::size_t>(comp[i])];
        for (std::size_t j = i + 1; j < n; ++j)
            if (h.has_edge(comp[i], comp[j])) {
                adj[i][j] = adj[j][i] = 1;
                ++degree[i];
                ++degree[j];
            }
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto invariant = [&](int v) { return std::pair(local_sig[static_cast<std::size_t>(v)], -degree[static_cast<std::size_t>(v)]); };
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return invariant(a) < invariant(b); });

    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && invariant(perm[j]) == invariant(perm[i]))
            ++j;
        blocks.emplace_back(i, j);
        i = j;
    }

    std::string best;
    std::vector<int> best_perm;
    // odometer over per-block permutations
    auto visit = [&]() {
        std::string code = detail::encode_component(adj, local_sig, perm);
        if (best_perm.empty() || code < best) {
            best = std::move(code);
            best_perm = perm;
        }
    };
    while (true) {
        visit();
        std::size_t b = 0;
        for (; b < blocks.size(); ++b) {
            auto first = perm.begin() + static_cast<std::ptrdiff_t>(blocks[b].first);
            auto last = perm.begin() + static_cast<std::ptrdiff_t>(blocks[b].second);
            if (std::next_permutation(first, last))
                break; // next_permutation wrapped blocks before b back to sorted order
        }
        if (b == blocks.size())
            break;
    }
    if (n == 0)
        best = detail::encode_component(adj, local_sig, perm);

    TypedComponent out;
    out.type.key = best;
    out.type.graph = Graph(static_cast<int>(n));
    out.type.signature.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.order.push_back(comp[static_cast<std::size_t>(best_perm[i])]);
        out.type.signature[i] = local_sig[static_cast<std::size_t>(best_perm[i])];
        for (std::size_t j = i + 1; j < n; ++j)
            if (adj[static_cast<std::size_t>(best_perm[i])][static_cast<std::size_t>(best_perm[j])])
                out.type.graph.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
    return out;
}

/// Interns component types as dense ids.
class TypeRegistry {
public:
    int intern(const ComponentType & t)
    {
        auto [it, inserted] = ids_.emplace(t.key, static_cast<int>(types_.size()));
        if (inserted)
            types_.push_back(t);
        return it->second;
    }

    const ComponentType & operator[](int id) const { return types_[static_cast<std::size_t>(id)]; }
    int size() const { return static_cast<int>(types_.size()); }

private:
    std::map<std::string, int> ids_;
    std::vector<ComponentType> types_;
};

} // namespace mfsi

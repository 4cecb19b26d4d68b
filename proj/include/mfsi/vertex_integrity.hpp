#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "mfsi/budget.hpp"
#include "mfsi/component_type.hpp"
#include "mfsi/errors.hpp"
#include "mfsi/graph.hpp"
#include "mfsi/ilp.hpp"
#include "mfsi/oracle.hpp"
#include "mfsi/p4free.hpp"
#include "mfsi/recognizers.hpp"

namespace mfsi {

namespace detail {

    // Injective edge-preserving map of p into h, restricted by allowed(u, v).
    template <class Allowed>
    std::optional<Embedding> embed_into(const Graph & p, const Graph & h, Allowed && allowed)
    {
        if (p.order() > h.order() || p.size() > h.size())
            return std::nullopt;
        const auto order = pattern_order(p);
        Embedding image(p.order(), -1);
        std::vector<char> used(h.order(), 0);
        std::function<bool(std::size_t)> place = [&](std::size_t i) {
            if (i == order.size())
                return true;
            const Vertex u = order[i];
            for (Vertex v = 0; v < h.order(); ++v) {
                if (used[v] || h.degree(v) < p.degree(u) || !allowed(u, v))
                    continue;
                bool ok = true;
                for (Vertex w : p.neighbors(u))
                    if (image[w] >= 0 && !h.has_edge(v, image[w])) {
                        ok = false;
                        break;
                    }
                if (!ok)
                    continue;
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

} // namespace detail

/// Joint injective edge-preserving map of the parts into d such that
/// match(part, u, v) holds for every mapped pair. Result[i] maps part i.
template <class Match>
std::optional<std::vector<Embedding>> fits(const std::vector<Graph> & parts, const Graph & d, Match && match)
{
    std::vector<std::pair<int, Vertex>> owner;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (Vertex u = 0; u < parts[i].order(); ++u)
            owner.emplace_back(static_cast<int>(i), u);
    if (static_cast<int>(owner.size()) > d.order())
        return std::nullopt;
    Graph joint = disjoint_union(parts);
    auto image = detail::embed_into(joint, d, [&](Vertex x, Vertex v) {
        return match(owner[static_cast<std::size_t>(x)].first, owner[static_cast<std::size_t>(x)].second, v);
    });
    if (!image)
        return std::nullopt;
    std::vector<Embedding> out(parts.size());
    for (std::size_t x = 0; x < owner.size(); ++x)
        out[static_cast<std::size_t>(owner[x].first)].push_back((*image)[x]);
    return out;
}

inline std::optional<std::vector<Embedding>> fits(const std::vector<Graph> & parts, const Graph & d)
{
    return fits(parts, d, [](int, Vertex, Vertex) { return true; });
}

namespace detail {

    // Union-find with undo, tracking component sizes.
    class RollbackUnionFind {
    public:
        explicit RollbackUnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1)
        {
            std::iota(parent_.begin(), parent_.end(), 0);
        }

        int find(int x) const
        {
            while (parent_[static_cast<std::size_t>(x)] != x)
                x = parent_[static_cast<std::size_t>(x)];
            return x;
        }

        int size_of(int x) const { return size_[static_cast<std::size_t>(find(x))]; }

        void unite(int a, int b)
        {
            a = find(a);
            b = find(b);
            if (a == b) {
                history_.push_back(-1);
                return;
            }
            if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)])
                std::swap(a, b);
            parent_[static_cast<std::size_t>(b)] = a;
            size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
            history_.push_back(b);
        }

        void undo()
        {
            int b = history_.back();
            history_.pop_back();
            if (b < 0)
                return;
            int a = parent_[static_cast<std::size_t>(b)];
            size_[static_cast<std::size_t>(a)] -= size_[static_cast<std::size_t>(b)];
            parent_[static_cast<std::size_t>(b)] = b;
        }

    private:
        std::vector<int> parent_;
        std::vector<int> size_;
        std::vector<int> history_;
    };

    inline std::vector<unsigned> root_signatures(const Graph & g, const VertexSet & roots)
    {
        std::vector<unsigned> sig(static_cast<std::size_t>(g.order()), 0);
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (Vertex w : g.neighbors(roots[i]))
                sig[static_cast<std::size_t>(w)] |= 1u << i;
        return sig;
    }

    class ViSolver {
    public:
        ViSolver(const Graph & g, const Graph & q, int k, SearchBudget & budget)
            : g_(g), q_(q), k_(k), budget_(budget)
        {
        }

        std::optional<Embedding> run()
        {
            auto cert = find_vi_set(g_, k_);
            if (!cert)
                throw ClassViolation("host vertex integrity exceeds " + std::to_string(k_));
            auto pattern_sets = enumerate_minimal_vi_sets(q_, k_);
            if (pattern_sets.empty())
                throw ClassViolation("pattern vertex integrity exceeds " + std::to_string(k_));
            if (q_.order() > g_.order() || q_.size() > g_.size())
                return std::nullopt;

            t_ = cert->deletion_set;
            in_t_ = membership(g_.order(), t_);
            prepare_host_components();
            for (const auto & s : pattern_sets)
                if (auto e = solve_for_pattern_set(s))
                    return e;
            return std::nullopt;
        }

    private:
        struct PatternSide {
            VertexSet s;
            std::vector<unsigned> sig;
            std::vector<VertexSet> comps;
            std::vector<int> comp_type;
            std::vector<std::pair<int, std::int64_t>> census; // (type, count), sorted
            std::set<std::vector<std::pair<int, std::int64_t>>> seen_host_census;
        };

        void prepare_host_components()
        {
            auto sig = root_signatures(g_, t_);
            t_comps_ = components(g_, in_t_);
            comp_of_.assign(static_cast<std::size_t>(g_.order()), -1);
            t_comp_type_.clear();
            t_comp_edges_.assign(t_comps_.size(), {});
            TypeRegistry local;
            for (std::size_t c = 0; c < t_comps_.size(); ++c) {
                for (Vertex v : t_comps_[c])
                    comp_of_[static_cast<std::size_t>(v)] = static_cast<int>(c);
                t_comp_type_.push_back(local.intern(type_component(g_, t_comps_[c], sig).type));
                for (Vertex v : t_comps_[c])
                    for (Vertex w : g_.neighbors(v))
                        if (v < w && !in_t_[w])
                            t_comp_edges_[c].emplace_back(v, w);
            }
        }

        std::optional<Embedding> solve_for_pattern_set(const VertexSet & s)
        {
            PatternSide p;
            p.s = s;
            p.sig = root_signatures(q_, s);
            p.comps = components(q_, membership(q_.order(), s));
            std::map<int, std::int64_t> counts;
            for (const auto & c : p.comps) {
                int id = types_.intern(type_component(q_, c, p.sig).type);
                p.comp_type.push_back(id);
                ++counts[id];
            }
            p.census.assign(counts.begin(), counts.end());

            std::vector<Vertex> eta;
            std::vector<char> used(static_cast<std::size_t>(g_.order()), 0);
            std::optional<Embedding> found;
            std::function<bool()> inject = [&]() {
                if (eta.size() == s.size()) {
                    budget_.tick();
                    found = solve_for_injection(p, eta);
                    return found.has_value();
                }
                const Vertex u = s[eta.size()];
                for (Vertex t : t_) {
                    if (used[static_cast<std::size_t>(t)])
                        continue;
                    bool ok = true;
                    for (std::size_t j = 0; j < eta.size(); ++j)
                        if (q_.has_edge(u, s[j]) && !g_.has_edge(t, eta[j])) {
                            ok = false; // pattern edge inside S without a host edge
                            break;
                        }
                    if (!ok)
                        continue;
                    eta.push_back(t);
                    used[static_cast<std::size_t>(t)] = 1;
                    if (inject())
                        return true;
                    used[static_cast<std::size_t>(t)] = 0;
                    eta.pop_back();
                }
                return false;
            };
            inject();
            return found;
        }

        std::optional<Embedding> solve_for_injection(PatternSide & p, const std::vector<Vertex> & eta)
        {
            if (p.comps.empty())
                return assemble(p, eta, {});
            const int ell = k_ - static_cast<int>(p.s.size());
            in_r_ = membership(g_.order(), eta);
            t_minus_r_.clear();
            for (Vertex t : t_)
                if (!in_r_[t])
                    t_minus_r_.push_back(t);
            auto in_tr = membership(g_.order(), t_minus_r_);

            // Components of G - T with an edge to T - R, grouped by type.
            std::map<int, std::vector<int>> groups;
            attached_.assign(t_comps_.size(), 0);
            for (std::size_t c = 0; c < t_comps_.size(); ++c)
                for (Vertex v : t_comps_[c])
                    for (Vertex w : g_.neighbors(v))
                        if (in_tr[w])
                            attached_[c] = 1;
            for (std::size_t c = 0; c < t_comps_.size(); ++c)
                if (attached_[c])
                    groups[t_comp_type_[c]].push_back(static_cast<int>(c));
            std::vector<std::vector<int>> group_list;
            for (auto & [type, members] : groups)
                group_list.push_back(members);

            const int cap = ell <= 1 ? 0 : static_cast<int>(t_minus_r_.size()) * (ell - 1);
            chosen_.assign(t_comps_.size(), 0);
            std::optional<Embedding> found;
            std::function<bool(std::size_t, int)> choose = [&](std::size_t gi, int left) {
                if (gi == group_list.size()) {
                    found = enumerate_unused_edges(p, eta, ell, in_tr);
                    return found.has_value();
                }
                const auto & members = group_list[gi];
                int limit = std::min(left, static_cast<int>(members.size()));
                for (int c = 0; c <= limit; ++c) {
                    if (c > 0)
                        chosen_[static_cast<std::size_t>(members[static_cast<std::size_t>(c - 1)])] = 1;
                    if (choose(gi + 1, left - c))
                        return true;
                }
                for (int c = 0; c < limit; ++c)
                    chosen_[static_cast<std::size_t>(members[static_cast<std::size_t>(c)])] = 0;
                return false;
            };
            choose(0, cap);
            return found;
        }

        // Keep/drop search over the candidate edges; only inclusion-maximal
        // kept sets whose components stay within ell are evaluated.
        std::optional<Embedding> enumerate_unused_edges(PatternSide & p, const std::vector<Vertex> & eta, int ell,
            const std::vector<char> & in_tr)
        {
            RollbackUnionFind uf(g_.order());
            for (std::size_t c = 0; c < t_comps_.size(); ++c)
                if (!chosen_[c])
                    for (auto [a, b] : t_comp_edges_[c])
                        uf.unite(a, b);

            struct Candidate {
                Vertex a, b;
                int cross_of; // chosen component owning this cross edge, else -1
            };
            std::vector<Candidate> cand;
            for (std::size_t i = 0; i < t_minus_r_.size(); ++i)
                for (std::size_t j = i + 1; j < t_minus_r_.size(); ++j)
                    if (g_.has_edge(t_minus_r_[i], t_minus_r_[j]))
                        cand.push_back({t_minus_r_[i], t_minus_r_[j], -1});
            for (std::size_t c = 0; c < t_comps_.size(); ++c) {
                if (!chosen_[c])
                    continue;
                for (Vertex v : t_comps_[c])
                    for (Vertex w : g_.neighbors(v))
                        if (in_tr[w])
                            cand.push_back({v, w, static_cast<int>(c)});
                for (auto [a, b] : t_comp_edges_[c])
                    cand.push_back({a, b, -1});
            }

            std::vector<char> kept(cand.size(), 0);
            std::optional<Embedding> found;

            auto maximal = [&]() {
                std::vector<char> has_cross(t_comps_.size(), 0);
                for (std::size_t i = 0; i < cand.size(); ++i) {
                    if (kept[i]) {
                        if (cand[i].cross_of >= 0)
                            has_cross[static_cast<std::size_t>(cand[i].cross_of)] = 1;
                        continue;
                    }
                    int a = uf.find(cand[i].a), b = uf.find(cand[i].b);
                    if (a == b || uf.size_of(a) + uf.size_of(b) <= ell)
                        return false;
                }
                for (std::size_t c = 0; c < t_comps_.size(); ++c) {
                    if (chosen_[c] && !has_cross[c])
                        return false;
                    if (chosen_[c] || !attached_[c])
                        continue;
                    const int own = static_cast<int>(t_comps_[c].size());
                    for (Vertex v : t_comps_[c])
                        for (Vertex w : g_.neighbors(v))
                            if (in_tr[w] && uf.size_of(w) + own <= ell)
                                return false; // attaching this component would be strictly better
                }
                return true;
            };

            std::function<bool(std::size_t)> walk = [&](std::size_t i) {
                budget_.tick();
                if (i == cand.size()) {
                    if (!maximal())
                        return false;
                    found = evaluate(p, eta, cand, kept);
                    return found.has_value();
                }
                int a = uf.find(cand[i].a), b = uf.find(cand[i].b);
                if (a == b || uf.size_of(a) + uf.size_of(b) <= ell) {
                    kept[i] = 1;
                    uf.unite(a, b);
                    bool done = walk(i + 1);
                    uf.undo();
                    kept[i] = 0;
                    if (done)
                        return true;
                    if (a == b)
                        return false; // dropping an edge inside a component is never maximal
                }
                return walk(i + 1);
            };
            walk(0);
            return found;
        }

        template <class Candidates>
        std::optional<Embedding> evaluate(PatternSide & p, const std::vector<Vertex> & eta, const Candidates & cand,
            const std::vector<char> & kept)
        {
            Graph h(g_.order());
            for (std::size_t c = 0; c < t_comps_.size(); ++c)
                if (!chosen_[c])
                    for (auto [a, b] : t_comp_edges_[c])
                        h.add_edge(a, b);
            for (std::size_t i = 0; i < cand.size(); ++i)
                if (kept[i])
                    h.add_edge(cand[i].a, cand[i].b);

            auto sig = root_signatures(g_, eta);
            auto host_comps = components(h, in_r_);
            std::vector<int> host_type;
            std::map<int, std::int64_t> counts;
            for (const auto & c : host_comps) {
                int id = types_.intern(type_component(h, c, sig).type);
                host_type.push_back(id);
                ++counts[id];
            }
            std::vector<std::pair<int, std::int64_t>> census(counts.begin(), counts.end());
            if (!p.seen_host_census.insert(census).second)
                return std::nullopt;

            auto x = solve_counts(p, census);
            if (!x)
                return std::nullopt;

            // Realise the counts: consume host and pattern components per type.
            std::map<int, std::vector<int>> host_pool, pattern_pool;
            for (std::size_t c = host_comps.size(); c-- > 0;)
                host_pool[host_type[c]].push_back(static_cast<int>(c));
            for (std::size_t c = p.comps.size(); c-- > 0;)
                pattern_pool[p.comp_type[c]].push_back(static_cast<int>(c));
            Embedding image(static_cast<std::size_t>(q_.order()), -1);
            for (const auto & [var, times] : *x) {
                for (std::int64_t t = 0; t < times; ++t) {
                    const auto & hc = host_comps[static_cast<std::size_t>(pop(host_pool[var.host_type]))];
                    std::vector<const VertexSet *> parts;
                    for (int id : var.pattern_types)
                        parts.push_back(&p.comps[static_cast<std::size_t>(pop(pattern_pool[id]))]);
                    std::vector<Graph> graphs;
                    for (const auto * part : parts)
                        graphs.push_back(induced_subgraph(q_, *part));
                    auto maps = fits(graphs, induced_subgraph(h, hc), [&](int i, Vertex u, Vertex v) {
                        unsigned need = p.sig[static_cast<std::size_t>((*parts[static_cast<std::size_t>(i)])[static_cast<std::size_t>(u)])];
                        return (need & ~sig[static_cast<std::size_t>(hc[static_cast<std::size_t>(v)])]) == 0;
                    });
                    if (!maps)
                        throw std::logic_error("type representatives fit but concrete components do not");
                    for (std::size_t i = 0; i < parts.size(); ++i)
                        for (std::size_t u = 0; u < parts[i]->size(); ++u)
                            image[static_cast<std::size_t>((*parts[i])[u])] = hc[static_cast<std::size_t>((*maps)[i][u])];
                }
            }
            return assemble(p, eta, std::move(image));
        }

        std::optional<Embedding> assemble(const PatternSide & p, const std::vector<Vertex> & eta, Embedding image)
        {
            image.resize(static_cast<std::size_t>(q_.order()), -1);
            for (std::size_t i = 0; i < p.s.size(); ++i)
                image[static_cast<std::size_t>(p.s[i])] = eta[i];
            if (!verify_embedding(q_, g_, image))
                throw std::logic_error("vertex-integrity solver produced an invalid embedding");
            return image;
        }

        static int pop(std::vector<int> & pool)
        {
            int v = pool.back();
            pool.pop_back();
            return v;
        }

        struct Variable {
            int host_type;
            std::vector<int> pattern_types; // sorted multiset
            bool operator<(const Variable & o) const
            {
                return std::tie(host_type, pattern_types) < std::tie(o.host_type, o.pattern_types);
            }
        };

        bool fits_types(const std::vector<int> & pattern_types, int host_type)
        {
            auto key = std::make_pair(pattern_types, host_type);
            auto it = fit_cache_.find(key);
            if (it != fit_cache_.end())
                return it->second;
            std::vector<Graph> parts;
            for (int id : pattern_types)
                parts.push_back(types_[id].graph);
            const auto & host = types_[host_type];
            bool ok = fits(parts, host.graph, [&](int i, Vertex u, Vertex v) {
                unsigned need = types_[pattern_types[static_cast<std::size_t>(i)]].signature[static_cast<std::size_t>(u)];
                return (need & ~host.signature[static_cast<std::size_t>(v)]) == 0;
            }).has_value();
            fit_cache_.emplace(std::move(key), ok);
            return ok;
        }

        // ILP over x_{T,tau}: at most n'_tau multisets per host type, and every
        // pattern component type covered exactly.
        std::optional<std::map<Variable, std::int64_t>> solve_counts(const PatternSide & p,
            const std::vector<std::pair<int, std::int64_t>> & host_census)
        {
            std::vector<Variable> vars;
            for (const auto & [tau, n_tau] : host_census) {
                const int room = types_[tau].order();
                std::vector<int> current;
                std::vector<std::int64_t> used(p.census.size(), 0);
                std::function<void(std::size_t, int)> extend = [&](std::size_t from, int total) {
                    for (std::size_t j = from; j < p.census.size(); ++j) {
                        const auto [sigma, n_sigma] = p.census[j];
                        const int size = types_[sigma].order();
                        if (used[j] == n_sigma || total + size > room)
                            continue;
                        current.push_back(sigma);
                        ++used[j];
                        if (fits_types(current, tau)) {
                            vars.push_back({tau, current});
                            extend(j, total + size);
                        }
                        --used[j];
                        current.pop_back();
                    }
                };
                extend(0, 0);
            }

            ILPInstance ilp;
            for (const auto & v : vars) {
                std::int64_t n_tau = 0;
                for (const auto & [tau, n] : host_census)
                    if (tau == v.host_type)
                        n_tau = n;
                ilp.add_variable(0, n_tau);
            }
            for (const auto & [tau, n_tau] : host_census) {
                std::vector<std::int64_t> row(vars.size(), 0);
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (vars[i].host_type == tau)
                        row[i] = 1;
                ilp.add_constraint(std::move(row), Relation::LessEqual, n_tau);
            }
            for (const auto & [sigma, n_sigma] : p.census) {
                std::vector<std::int64_t> row(vars.size(), 0);
                for (std::size_t i = 0; i < vars.size(); ++i)
                    row[i] = std::count(vars[i].pattern_types.begin(), vars[i].pattern_types.end(), sigma);
                ilp.add_constraint(std::move(row), Relation::Equal, n_sigma);
            }
            auto x = feasible(ilp);
            if (!x)
                return std::nullopt;
            std::map<Variable, std::int64_t> out;
            for (std::size_t i = 0; i < vars.size(); ++i)
                if ((*x)[i] > 0)
                    out[vars[i]] = (*x)[i];
            return out;
        }

        const Graph & g_;
        const Graph & q_;
        int k_;
        SearchBudget & budget_;

        VertexSet t_;
        std::vector<char> in_t_;
        std::vector<VertexSet> t_comps_;
        std::vector<int> comp_of_;
        std::vector<int> t_comp_type_;
        std::vector<std::vector<Edge>> t_comp_edges_;

        std::vector<char> in_r_;
        VertexSet t_minus_r_;
        std::vector<char> attached_;
        std::vector<char> chosen_;

        TypeRegistry types_;
        std::map<std::pair<std::vector<int>, int>, bool> fit_cache_;
    };

} // namespace detail

/// Subgraph isomorphism for host and pattern of vertex integrity at most k.
/// Throws ClassViolation when either graph has no vi(k) set and
/// BudgetExceeded when the guess enumeration passes the budget.
inline std::optional<Embedding> solve_vi(const Graph & g, const Graph & q, int k, SearchBudget & budget)
{
    if (k < 1)
        throw InvalidInput("vertex integrity parameter must be >= 1");
    return detail::ViSolver(g, q, k, budget).run();
}

inline std::optional<Embedding> solve_vi(const Graph & g, const Graph & q, int k)
{
    SearchBudget unlimited;
    return solve_vi(g, q, k, unlimited);
}

/// Host excludes P4 u kP3 as a minor. If the host has a P4 it has vertex
/// integrity at most 3k+3, so the problem goes to solve_vi at that parameter.
inline std::optional<Embedding> solve_p4_union_kp3(const Graph & g, const Graph & q, int k, SearchBudget & budget)
{
    if (k < 1)
        throw InvalidInput("kP3 parameter must be >= 1");
    const bool host_free = is_p4_free(g);
    const bool pattern_free = is_p4_free(q);
    if (host_free && pattern_free)
        return solve_p4free(g, q);
    if (host_free)
        return std::nullopt;
    if (q.order() > g.order())
        return std::nullopt;
    const int param = 3 * k + 3;
    if (!find_vi_set(q, param))
        return std::nullopt;
    return solve_vi(g, q, param, budget);
}

inline std::optional<Embedding> solve_p4_union_kp3(const Graph & g, const Graph & q, int k)
{
    SearchBudget unlimited;
    return solve_p4_union_kp3(g, q, k, unlimited);
}

} // namespace mfsi

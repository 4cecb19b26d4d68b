#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mfsi/budget.hpp"
#include "mfsi/errors.hpp"
#include "mfsi/graph.hpp"
#include "mfsi/matching.hpp"
#include "mfsi/recognizers.hpp"
#include "mfsi/rng.hpp"

namespace mfsi {

/// One way to embed a pattern component into a host component: the histogram
/// of the host vertices left over, and a concrete map (image of
/// pattern_comp[i] is map[i]).
struct LeftoverOption {
    ColorHistogram leftover;
    Embedding map;
};

/// Vertex colouring shared by host and pattern: col[v] is a bitmask over the
/// q root vertices.
struct Coloring {
    int q = 0;
    std::vector<unsigned> host;
    std::vector<unsigned> pattern;
};

namespace detail {

    inline bool colour_fits(unsigned need, unsigned have) { return (need & ~have) == 0; }

    inline ColorHistogram leftover_of(int q, const VertexSet & comp, const std::vector<char> & used_mark,
        const std::vector<unsigned> & col)
    {
        ColorHistogram h(q);
        for (Vertex v : comp)
            if (!used_mark[static_cast<std::size_t>(v)])
                ++h.counts[col[static_cast<std::size_t>(v)]];
        return h;
    }

    inline void add_option(std::map<ColorHistogram, Embedding> & out, ColorHistogram h, const Embedding & map)
    {
        out.emplace(std::move(h), map);
    }

    // Every injective colour-respecting edge-preserving map, for tiny components.
    inline void exhaustive_leftovers(const Graph & g, const VertexSet & host, const Graph & q, const VertexSet & pat,
        const Coloring & col, std::map<ColorHistogram, Embedding> & out)
    {
        Embedding map(pat.size(), -1);
        std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
        std::function<void(std::size_t)> place = [&](std::size_t i) {
            if (i == pat.size()) {
                add_option(out, leftover_of(col.q, host, used, col.host), map);
                return;
            }
            for (Vertex v : host) {
                if (used[static_cast<std::size_t>(v)] ||
                    !colour_fits(col.pattern[static_cast<std::size_t>(pat[i])], col.host[static_cast<std::size_t>(v)]))
                    continue;
                bool ok = true;
                for (std::size_t j = 0; j < i; ++j)
                    if (q.has_edge(pat[i], pat[j]) && !g.has_edge(v, map[j]))
                        ok = false;
                if (!ok)
                    continue;
                map[i] = v;
                used[static_cast<std::size_t>(v)] = 1;
                place(i + 1);
                used[static_cast<std::size_t>(v)] = 0;
            }
        };
        place(0);
    }

    // Pattern star with centre `pc` into host star with centre `hc` (host
    // order >= 4). Leaves are handled by colour-class counts.
    inline void star_leftovers(const Graph & g, const VertexSet & host, Vertex hc, const Graph & q,
        const VertexSet & pat, Vertex pc, const Coloring & col, std::map<ColorHistogram, Embedding> & out)
    {
        (void) g;
        (void) q;
        if (!colour_fits(col.pattern[static_cast<std::size_t>(pc)], col.host[static_cast<std::size_t>(hc)]))
            return;
        const std::size_t classes = std::size_t{1} << col.q;
        std::vector<std::vector<Vertex>> host_leaves(classes), pattern_leaves(classes);
        for (Vertex v : host)
            if (v != hc)
                host_leaves[col.host[static_cast<std::size_t>(v)]].push_back(v);
        for (Vertex u : pat)
            if (u != pc)
                pattern_leaves[col.pattern[static_cast<std::size_t>(u)]].push_back(u);
        std::vector<std::size_t> need_classes, have_classes;
        for (std::size_t c = 0; c < classes; ++c) {
            if (!pattern_leaves[c].empty())
                need_classes.push_back(c);
            if (!host_leaves[c].empty())
                have_classes.push_back(c);
        }
        std::size_t total_need = pat.size() - 1;

        // Choose how many host leaves of each class get used; feasible iff Hall's
        // condition holds for every set of pattern classes.
        std::vector<std::size_t> use(classes, 0);
        auto hall = [&]() {
            const std::size_t subsets = std::size_t{1} << need_classes.size();
            for (std::size_t mask = 1; mask < subsets; ++mask) {
                std::size_t demand = 0, supply = 0;
                std::vector<char> reachable(classes, 0);
                for (std::size_t j = 0; j < need_classes.size(); ++j) {
                    if (!(mask >> j & 1))
                        continue;
                    demand += pattern_leaves[need_classes[j]].size();
                    for (std::size_t c : have_classes)
                        if (colour_fits(static_cast<unsigned>(need_classes[j]), static_cast<unsigned>(c)))
                            reachable[c] = 1;
                }
                for (std::size_t c : have_classes)
                    if (reachable[c])
                        supply += use[c];
                if (demand > supply)
                    return false;
            }
            return true;
        };
        auto realise = [&]() {
            // Concrete leaves: the first use[c] host leaves of class c.
            std::vector<Vertex> chosen;
            for (std::size_t c : have_classes)
                for (std::size_t i = 0; i < use[c]; ++i)
                    chosen.push_back(host_leaves[c][i]);
            std::vector<Vertex> leaves;
            for (std::size_t c : need_classes)
                for (Vertex u : pattern_leaves[c])
                    leaves.push_back(u);
            std::vector<std::vector<int>> adjacency(leaves.size());
            for (std::size_t i = 0; i < leaves.size(); ++i)
                for (std::size_t j = 0; j < chosen.size(); ++j)
                    if (colour_fits(col.pattern[static_cast<std::size_t>(leaves[i])], col.host[static_cast<std::size_t>(chosen[j])]))
                        adjacency[i].push_back(static_cast<int>(j));
            auto match = max_bipartite_matching(adjacency, static_cast<int>(chosen.size()));
            std::map<Vertex, Vertex> image{{pc, hc}};
            for (std::size_t i = 0; i < leaves.size(); ++i)
                image[leaves[i]] = chosen[static_cast<std::size_t>(match[i])];
            Embedding map;
            for (Vertex u : pat)
                map.push_back(image.at(u));
            ColorHistogram left(col.q);
            for (std::size_t c = 0; c < classes; ++c)
                left.counts[c] = static_cast<std::int64_t>(host_leaves[c].size() - use[c]);
            add_option(out, std::move(left), map);
        };
        std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t i, std::size_t remaining) {
            if (i == have_classes.size()) {
                if (remaining == 0 && hall())
                    realise();
                return;
            }
            const std::size_t c = have_classes[i];
            for (std::size_t u = 0; u <= std::min(remaining, host_leaves[c].size()); ++u) {
                use[c] = u;
                pick(i + 1, remaining - u);
            }
            use[c] = 0;
        };
        pick(0, total_need);
    }

} // namespace detail

/// All distinct leftover histograms of colour-respecting embeddings of a
/// pattern component into a host component (both K1, K3 or stars), each with
/// one realising map.
inline std::vector<LeftoverOption> enumerate_leftover_histograms(const Graph & g, const VertexSet & host_comp,
    const Graph & q, const VertexSet & pattern_comp, const Coloring & col)
{
    std::map<ColorHistogram, Embedding> found;
    if (pattern_comp.size() <= host_comp.size()) {
        if (host_comp.size() <= 3)
            detail::exhaustive_leftovers(g, host_comp, q, pattern_comp, col, found);
        else if (classify_component(g, host_comp).tag == ComponentKind::Tag::Star) {
            const Vertex hc = star_center(g, host_comp);
            if (pattern_comp.size() == 2) {
                // K2: either endpoint may take the centre
                for (int flip = 0; flip < 2; ++flip) {
                    Vertex a = pattern_comp[static_cast<std::size_t>(flip)];
                    VertexSet oriented{a, pattern_comp[static_cast<std::size_t>(1 - flip)]};
                    std::map<ColorHistogram, Embedding> part;
                    detail::star_leftovers(g, host_comp, hc, q, oriented, a, col, part);
                    for (auto & [h, m] : part) {
                        Embedding map = flip ? Embedding{m[1], m[0]} : m;
                        found.emplace(h, map);
                    }
                }
            }
            else if (pattern_comp.size() >= 3 &&
                classify_component(q, pattern_comp).tag == ComponentKind::Tag::Star)
                detail::star_leftovers(g, host_comp, hc, q, pattern_comp, star_center(q, pattern_comp), col, found);
            else if (pattern_comp.size() == 1)
                detail::exhaustive_leftovers(g, host_comp, q, pattern_comp, col, found);
        }
        else
            throw InvalidInput("host component is not K1, K3 or a star");
    }
    std::vector<LeftoverOption> out;
    for (auto & [h, m] : found)
        out.push_back({h, m});
    return out;
}

/// Bookkeeping of an accepted guess, for checking h_X + h_Y = h_{X u Y}.
struct HittingTrace {
    ColorHistogram leftover;         // h_A: G - T minus the non-singleton images
    ColorHistogram matched_weights;  // sum of the matched edge weights
    ColorHistogram forced;           // components that could only take a dummy
    ColorHistogram singleton_images;
    ColorHistogram component_images; // images of non-singleton pattern components
    ColorHistogram host_rest;        // all of G - T
};

namespace detail {

    class HittingSolver {
    public:
        HittingSolver(const Graph & g, const Graph & q, int k, Rng & rng, int repeats, SearchBudget & budget,
            HittingTrace * trace)
            : g_(g), q_(q), k_(k), rng_(rng), repeats_(repeats), budget_(budget), trace_(trace)
        {
        }

        std::optional<Embedding> run()
        {
            if (k_ < 0)
                throw InvalidInput("hitting set parameter must be >= 0");
            if (repeats_ < 1)
                throw InvalidInput("repeats must be >= 1");
            auto t = find_p4_hitting_set(g_, k_);
            if (!t)
                throw ClassViolation("host has no P4-hitting set of size " + std::to_string(k_));
            if (q_.order() > g_.order() || q_.size() > g_.size())
                return std::nullopt;
            t_ = *t;
            in_t_ = membership(g_.order(), t_);
            host_comps_ = components(g_, in_t_);

            // R over subsets of T, S over ordered tuples of pattern vertices.
            const std::size_t subsets = std::size_t{1} << t_.size();
            for (std::size_t mask = 0; mask < subsets; ++mask) {
                VertexSet r;
                for (std::size_t i = 0; i < t_.size(); ++i)
                    if (mask >> i & 1)
                        r.push_back(t_[i]);
                if (static_cast<int>(r.size()) > q_.order())
                    continue;
                VertexSet s;
                std::vector<char> in_s(static_cast<std::size_t>(q_.order()), 0);
                std::optional<Embedding> found;
                std::function<bool()> extend = [&]() {
                    if (s.size() == r.size()) {
                        budget_.tick();
                        found = solve_guess(r, s);
                        return found.has_value();
                    }
                    const Vertex image = r[s.size()];
                    for (Vertex u = 0; u < q_.order(); ++u) {
                        if (in_s[static_cast<std::size_t>(u)])
                            continue;
                        bool ok = true;
                        for (std::size_t j = 0; j < s.size(); ++j)
                            if (q_.has_edge(u, s[j]) && !g_.has_edge(image, r[j]))
                                ok = false;
                        if (!ok)
                            continue;
                        s.push_back(u);
                        in_s[static_cast<std::size_t>(u)] = 1;
                        if (extend())
                            return true;
                        in_s[static_cast<std::size_t>(u)] = 0;
                        s.pop_back();
                    }
                    return false;
                };
                if (extend())
                    return found;
            }
            return std::nullopt;
        }

    private:
        std::optional<Embedding> solve_guess(const VertexSet & r, const VertexSet & s)
        {
            auto in_s = membership(q_.order(), s);
            VertexSet rest;
            for (Vertex u = 0; u < q_.order(); ++u)
                if (!in_s[static_cast<std::size_t>(u)])
                    rest.push_back(u);
            if (!is_p4_free(induced_subgraph(q_, rest)))
                return std::nullopt;

            Coloring col;
            col.q = static_cast<int>(r.size());
            col.host.assign(static_cast<std::size_t>(g_.order()), 0);
            col.pattern.assign(static_cast<std::size_t>(q_.order()), 0);
            for (std::size_t i = 0; i < r.size(); ++i) {
                for (Vertex w : g_.neighbors(r[i]))
                    col.host[static_cast<std::size_t>(w)] |= 1u << i;
                for (Vertex w : q_.neighbors(s[i]))
                    col.pattern[static_cast<std::size_t>(w)] |= 1u << i;
            }

            std::vector<VertexSet> ys;
            VertexSet singles;
            for (auto & c : components(q_, in_s)) {
                if (c.size() == 1)
                    singles.push_back(c.front());
                else
                    ys.push_back(std::move(c));
            }
            const std::size_t nx = host_comps_.size();
            if (ys.size() > nx)
                return std::nullopt;

            // Leftover options per (host, pattern) component pair.
            std::vector<std::vector<std::vector<LeftoverOption>>> options(nx, std::vector<std::vector<LeftoverOption>>(ys.size()));
            std::vector<std::vector<int>> can_host(ys.size());
            std::vector<char> has_option(nx, 0);
            for (std::size_t x = 0; x < nx; ++x)
                for (std::size_t y = 0; y < ys.size(); ++y) {
                    options[x][y] = enumerate_leftover_histograms(g_, host_comps_[x], q_, ys[y], col);
                    if (!options[x][y].empty()) {
                        can_host[y].push_back(static_cast<int>(x));
                        has_option[x] = 1;
                    }
                }
            if (matching_size(max_bipartite_matching(can_host, static_cast<int>(nx))) != static_cast<int>(ys.size()))
                return std::nullopt;

            // Host components that can only take a dummy are fixed up front.
            ColorHistogram forced(col.q);
            std::vector<int> rows;
            for (std::size_t x = 0; x < nx; ++x) {
                if (has_option[x])
                    rows.push_back(static_cast<int>(x));
                else
                    forced = histogram_add(forced, histogram_of(col.q, host_comps_[x], col.host));
            }
            const std::size_t dummies = rows.size() - ys.size();

            WeightedBipartiteMultigraph b;
            b.left_count = static_cast<int>(rows.size());
            b.right_count = static_cast<int>(rows.size());
            b.dummy_count = static_cast<int>(dummies);
            b.q = col.q;
            b.weight_cap = g_.order();
            ColorHistogram box(col.q);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto x = static_cast<std::size_t>(rows[i]);
                auto whole = histogram_of(col.q, host_comps_[x], col.host);
                box = histogram_add(box, whole);
                for (std::size_t y = 0; y < ys.size(); ++y)
                    for (std::size_t o = 0; o < options[x][y].size(); ++o)
                        b.edges.push_back({static_cast<int>(i), static_cast<int>(y), options[x][y][o].leftover,
                            static_cast<int>(o)});
                for (std::size_t z = 0; z < dummies; ++z)
                    b.edges.push_back({static_cast<int>(i), static_cast<int>(ys.size() + z), whole, -1});
            }

            auto weights = achievable_weights(b, box, rng_, repeats_);
            for (const auto & w : weights) {
                auto unused = histogram_add(w, forced);
                if (!singletons_fit(singles, unused, col))
                    continue;
                auto matching = exact_weight_perfect_matching(b, w, rng_, repeats_);
                if (!matching)
                    continue;
                return assemble(r, s, ys, singles, rows, options, b, *matching, col, unused, forced);
            }
            return std::nullopt;
        }

        // Singletons need distinct unused vertices with col(u) a subset of col(v);
        // only the colour histogram of the unused set matters.
        static bool singletons_fit(const VertexSet & singles, const ColorHistogram & unused, const Coloring & col)
        {
            if (static_cast<std::int64_t>(singles.size()) > unused.total())
                return false;
            std::vector<unsigned> slot_colour;
            for (std::size_t c = 0; c < unused.counts.size(); ++c)
                for (std::int64_t i = 0; i < std::min<std::int64_t>(unused.counts[c], static_cast<std::int64_t>(singles.size())); ++i)
                    slot_colour.push_back(static_cast<unsigned>(c));
            std::vector<std::vector<int>> adjacency(singles.size());
            for (std::size_t i = 0; i < singles.size(); ++i)
                for (std::size_t j = 0; j < slot_colour.size(); ++j)
                    if (colour_fits(col.pattern[static_cast<std::size_t>(singles[i])], slot_colour[j]))
                        adjacency[i].push_back(static_cast<int>(j));
            return matching_size(max_bipartite_matching(adjacency, static_cast<int>(slot_colour.size()))) ==
                static_cast<int>(singles.size());
        }

        std::optional<Embedding> assemble(const VertexSet & r, const VertexSet & s, const std::vector<VertexSet> & ys,
            const VertexSet & singles, const std::vector<int> & rows,
            const std::vector<std::vector<std::vector<LeftoverOption>>> & options, const WeightedBipartiteMultigraph & b,
            const std::vector<int> & matching, const Coloring & col, const ColorHistogram & unused_hist,
            const ColorHistogram & forced)
        {
            Embedding image(static_cast<std::size_t>(q_.order()), -1);
            std::vector<char> used(static_cast<std::size_t>(g_.order()), 0);
            for (std::size_t i = 0; i < s.size(); ++i)
                image[static_cast<std::size_t>(s[i])] = r[i];
            for (Vertex t : t_)
                used[static_cast<std::size_t>(t)] = 1;
            ColorHistogram matched(col.q), comp_images(col.q);
            for (int id : matching) {
                const auto & e = b.edges[static_cast<std::size_t>(id)];
                matched = histogram_add(matched, e.weight);
                if (e.payload < 0)
                    continue;
                const auto x = static_cast<std::size_t>(rows[static_cast<std::size_t>(e.left)]);
                const auto y = static_cast<std::size_t>(e.right);
                const auto & map = options[x][y][static_cast<std::size_t>(e.payload)].map;
                for (std::size_t i = 0; i < ys[y].size(); ++i) {
                    image[static_cast<std::size_t>(ys[y][i])] = map[i];
                    used[static_cast<std::size_t>(map[i])] = 1;
                    ++comp_images.counts[col.host[static_cast<std::size_t>(map[i])]];
                }
            }
            VertexSet free_vertices;
            for (Vertex v = 0; v < g_.order(); ++v)
                if (!used[static_cast<std::size_t>(v)])
                    free_vertices.push_back(v);
            std::vector<std::vector<int>> adjacency(singles.size());
            for (std::size_t i = 0; i < singles.size(); ++i)
                for (std::size_t j = 0; j < free_vertices.size(); ++j)
                    if (colour_fits(col.pattern[static_cast<std::size_t>(singles[i])], col.host[static_cast<std::size_t>(free_vertices[j])]))
                        adjacency[i].push_back(static_cast<int>(j));
            auto match = max_bipartite_matching(adjacency, static_cast<int>(free_vertices.size()));
            ColorHistogram single_images(col.q);
            for (std::size_t i = 0; i < singles.size(); ++i) {
                if (match[i] < 0)
                    throw std::logic_error("singleton placement failed after the histogram test passed");
                Vertex v = free_vertices[static_cast<std::size_t>(match[i])];
                image[static_cast<std::size_t>(singles[i])] = v;
                ++single_images.counts[col.host[static_cast<std::size_t>(v)]];
            }
            if (!verify_embedding(q_, g_, image))
                throw std::logic_error("hitting-set solver produced an invalid embedding");
            if (trace_) {
                VertexSet rest;
                for (Vertex v = 0; v < g_.order(); ++v)
                    if (!in_t_[static_cast<std::size_t>(v)])
                        rest.push_back(v);
                trace_->leftover = unused_hist;
                trace_->matched_weights = matched;
                trace_->forced = forced;
                trace_->singleton_images = single_images;
                trace_->component_images = comp_images;
                trace_->host_rest = histogram_of(col.q, rest, col.host);
            }
            return image;
        }

        const Graph & g_;
        const Graph & q_;
        int k_;
        Rng & rng_;
        int repeats_;
        SearchBudget & budget_;
        HittingTrace * trace_;
        VertexSet t_;
        std::vector<char> in_t_;
        std::vector<VertexSet> host_comps_;
    };

} // namespace detail

/// Randomised subgraph isomorphism for hosts with a P4-hitting set of size at
/// most k. A returned embedding is always verified; a missed yes-instance has
/// probability at most 2^-repeats.
inline std::optional<Embedding> solve_hitting(const Graph & g, const Graph & q, int k, Rng & rng, int repeats,
    SearchBudget & budget)
{
    return detail::HittingSolver(g, q, k, rng, repeats, budget, nullptr).run();
}

inline std::optional<Embedding> solve_hitting(const Graph & g, const Graph & q, int k, Rng & rng, int repeats = 10)
{
    SearchBudget unlimited;
    return solve_hitting(g, q, k, rng, repeats, unlimited);
}

/// As solve_hitting, also reporting the histogram bookkeeping of the accepted guess.
inline std::optional<Embedding> solve_hitting_traced(const Graph & g, const Graph & q, int k, Rng & rng, int repeats,
    HittingTrace & trace)
{
    SearchBudget unlimited;
    return detail::HittingSolver(g, q, k, rng, repeats, unlimited, &trace).run();
}

} // namespace mfsi
